"""
Énumération sans doublon des petits graphes et recherches extrémales.

Génération par augmentation de sommet avec parent canonique : un graphe G
d'ordre n est émis depuis son parent P (représentant canonique d'ordre n−1)
seulement si G − v* ≅ P, v* étant le sommet de suppression canonique. Les
propriétés « biparti » et « F-libre » sont héréditaires : on ne développe que
les parents qui les vérifient. La connexité n'est filtrée qu'au dernier niveau.
"""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Tuple

from .conf import bench_setting
from .exceptions import (
    BenchError, EmptyClass, NoRegularGraph, OrderTooLarge, ParamOutOfRange, ParseError, RecordFileError,
)
from .extremal import (
    make_F, make_S, make_complete_bipartite, make_join_regular, q_bound_conjecture_3_2,
    rho_bound_bipartite, rho_bound_theorem_1_7, threshold_is_met,
)
from .graphs import (
    CanonicalCode, Graph, canonical_code, canonical_deletion_vertex, canonical_form,
    canonical_labeling, empty_graph, graph6_decode, graph6_encode, is_bipartite, is_connected,
)
from .spectra import signless_laplacian_radius, spectral_radius
from .star_forest import StarForest, edge_bound_lemma_2_1, is_f_free

logger = logging.getLogger(__name__)

GRAPH_CLASS_CHOICES = [
    ('all', 'Tous les graphes'),
    ('connected', 'Connexes'),
    ('bipartite', 'Bipartis'),
    ('connected_bipartite', 'Bipartis connexes'),
]
GRAPH_CLASSES = tuple(value for value, _ in GRAPH_CLASS_CHOICES)


def check_graph_class(graph_class: str) -> str:
    if graph_class not in GRAPH_CLASSES:
        raise ParamOutOfRange(f"Classe inconnue : {graph_class} (attendu : {', '.join(GRAPH_CLASSES)})")
    return graph_class


def in_class(g: Graph, graph_class: str) -> bool:
    if 'bipartite' in graph_class and is_bipartite(g) is None:
        return False
    if graph_class.startswith('connected') and not is_connected(g):
        return False
    return True


def enumeration_ceiling(graph_class: str) -> int:
    return bench_setting('ENUMERATION_CEILING_ALL' if graph_class == 'all' else 'ENUMERATION_CEILING_SPARSE')


def _check_enumerable(n: int, graph_class: str):
    check_graph_class(graph_class)
    if n < 0:
        raise ParamOutOfRange(f"Ordre négatif : {n}")
    ceiling = enumeration_ceiling(graph_class)
    if n > ceiling:
        raise OrderTooLarge(f"Énumération limitée à n ≤ {ceiling} pour la classe {graph_class}")


# ========================
# GÉNÉRATION
# ========================

@dataclass(frozen=True)
class HereditaryFilter:
    """Propriétés closes par suppression de sommet, testées à chaque niveau"""
    bipartite: bool = False
    forest: Optional[StarForest] = None

    def __call__(self, g: Graph) -> bool:
        if self.bipartite and is_bipartite(g) is None:
            return False
        if self.forest is not None and not is_f_free(g, self.forest):
            return False
        return True


def _children(parent: Graph, parent_code: CanonicalCode,
              keep: HereditaryFilter) -> Iterator[Tuple[Graph, CanonicalCode]]:
    """Enfants canoniques de parent, chacun une seule fois à isomorphisme près"""
    n = parent.n
    parent_degrees = [row.bit_count() for row in parent.adj]
    ceiling = min(parent_degrees) + 1 if n else 0
    seen = set()
    for subset in range(1 << n):
        size = subset.bit_count()
        if size > ceiling:
            continue
        # le nouveau sommet doit être de degré minimal
        if any(d + (subset >> u & 1) < size for u, d in enumerate(parent_degrees)):
            continue
        rows = tuple(row | ((subset >> u & 1) << n) for u, row in enumerate(parent.adj)) + (subset,)
        child = Graph(n + 1, rows)
        if not keep(child):
            continue
        labeling = canonical_labeling(child)
        if labeling.code in seen:
            continue
        deleted = canonical_deletion_vertex(child, labeling)
        if deleted != n and canonical_code(child.delete_vertex(deleted)) != parent_code:
            continue
        seen.add(labeling.code)
        yield canonical_form(child, labeling), labeling.code


def _expand(parent: Graph, code: CanonicalCode, target: int,
            keep: HereditaryFilter) -> Iterator[Tuple[Graph, CanonicalCode]]:
    if parent.n == target:
        yield parent, code
        return
    for child, child_code in _children(parent, code, keep):
        yield from _expand(child, child_code, target, keep)


def _root() -> Tuple[Graph, CanonicalCode]:
    return empty_graph(0), CanonicalCode(0, '')


def _generate(n: int, graph_class: str,
              forest: Optional[StarForest] = None) -> Iterator[Tuple[Graph, CanonicalCode]]:
    keep = HereditaryFilter(bipartite='bipartite' in graph_class, forest=forest)
    graph, code = _root()
    for g, g_code in _expand(graph, code, n, keep):
        if graph_class.startswith('connected') and not is_connected(g):
            continue
        yield g, g_code


def enumerate_graphs(n: int, graph_class: str = 'all') -> Iterator[Graph]:
    """Un représentant canonique par classe d'isomorphisme"""
    _check_enumerable(n, graph_class)
    for g, _ in _generate(n, graph_class):
        yield g


def count_graphs(n: int, graph_class: str = 'all') -> int:
    return sum(1 for _ in enumerate_graphs(n, graph_class))


def enumerate_bipartite_by_sides(n: int) -> List[Graph]:
    """
    Graphes bipartis d'ordre n par tailles de côtés a ≤ b : toutes les arêtes
    entre les côtés, dédoublonnées par code canonique. Route indépendante de
    l'augmentation, réservée aux petits ordres.
    """
    _check_enumerable(n, 'bipartite')
    found = {}
    for a in range(n // 2 + 1):
        b = n - a
        pairs = [(u, a + v) for u in range(a) for v in range(b)]
        for mask in range(1 << len(pairs)):
            rows = [0] * n
            for index, (u, v) in enumerate(pairs):
                if mask >> index & 1:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
            g = Graph(n, tuple(rows))
            code = canonical_code(g)
            if code not in found:
                found[code] = canonical_form(g)
    return [found[code] for code in sorted(found)]


# ========================
# RECHERCHE EXTRÉMALE
# ========================

@dataclass
class SearchRecord:
    n: int
    graph_class: str
    forest: StarForest
    count_enumerated: Optional[int]  # None quand l'élagage ne visite que les F-libres
    count_f_free: int
    max_rho: float
    argmax: List[str]  # graph6 des formes canoniques, triés par code canonique
    bound_value: Optional[float]
    bound_applicable: bool
    gap: Optional[float]
    construction: Optional[str] = None
    construction_rho: Optional[float] = None
    pruned: bool = False

    def as_dict(self) -> dict:
        data = asdict(self)
        data['forest'] = str(self.forest)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'SearchRecord':
        values = dict(data)
        values['forest'] = StarForest.parse(values['forest'])
        return cls(**values)


@dataclass
class ScanState:
    """Résultat partiel d'un balayage ; la fusion est associative et commutative"""
    count_enumerated: int = 0
    count_f_free: int = 0
    max_rho: Optional[float] = None
    argmax: dict = field(default_factory=dict)  # code canonique (texte) -> graph6

    def add(self, g: Graph, code: CanonicalCode, rho: float):
        self._offer(rho, {str(code): graph6_encode(g)})

    def _offer(self, rho: float, graphs: dict):
        tol = bench_setting('CHECK_TOLERANCE')
        if self.max_rho is None or rho > self.max_rho + tol:
            self.max_rho = rho
            self.argmax = dict(graphs)
        elif abs(rho - self.max_rho) <= tol:
            self.max_rho = max(self.max_rho, rho)
            self.argmax.update(graphs)

    def merge(self, other: 'ScanState') -> 'ScanState':
        self.count_enumerated += other.count_enumerated
        self.count_f_free += other.count_f_free
        if other.max_rho is not None:
            self._offer(other.max_rho, other.argmax)
        return self

    def sorted_argmax(self) -> List[str]:
        return [self.argmax[code] for code in sorted(self.argmax, key=_code_key)]


def _code_key(text: str) -> Tuple[int, str]:
    n, _, code = text.partition(':')
    return int(n), code


def _scan_subtree(task) -> ScanState:
    """Travail d'un processus : balaye le sous-arbre issu d'un graphe de la frontière"""
    g6, code_text, n, graph_class, forest_text, pruned = task
    forest = StarForest.parse(forest_text)
    parent = graph6_decode(g6)
    size, _, bits = code_text.partition(':')
    keep = HereditaryFilter(
        bipartite='bipartite' in graph_class,
        forest=forest if pruned else None,
    )
    state = ScanState()
    for g, code in _expand(parent, CanonicalCode(int(size), bits), n, keep):
        if graph_class.startswith('connected') and not is_connected(g):
            continue
        state.count_enumerated += 1
        if not pruned and not is_f_free(g, forest):
            continue
        state.count_f_free += 1
        state.add(g, code, spectral_radius(g))
    return state


def _frontier(level: int, graph_class: str, forest: Optional[StarForest]) -> List[Tuple[Graph, CanonicalCode]]:
    keep = HereditaryFilter(bipartite='bipartite' in graph_class, forest=forest)
    graph, code = _root()
    return list(_expand(graph, code, level, keep))


def extremal_construction(n: int, forest: StarForest, graph_class: str) -> Optional[Graph]:
    """Famille extrémale F-libre de la classe, minorant de la recherche"""
    k, d = forest.k, forest.d_min
    if k < 2 or n < k:
        return None
    if 'bipartite' in graph_class:
        return make_complete_bipartite(k - 1, n - k + 1)
    try:
        return make_join_regular(n, k, d)
    except NoRegularGraph:
        return make_F(n, k) if d >= 2 else make_S(n, k - 1)


def _bound_for(n: int, forest: StarForest, graph_class: str) -> Tuple[Optional[float], bool]:
    k = forest.k
    if k < 2 or n < k:
        return None, False
    if 'bipartite' in graph_class:
        # connexe biparti : n ≥ f suffit
        kind = 'f_value' if graph_class == 'connected_bipartite' else 'thm_1_8_and_cor_1_9'
        applicable = bool(threshold_is_met(kind, forest, n))
        # kP₃ = kS₂ : le seuil explicite n ≥ 11k − 4 suffit
        if all(d == 2 for d in forest.degrees) and n >= 11 * k - 4:
            applicable = True
        return rho_bound_bipartite(n, k), applicable
    kind = 'thm_3_1' if graph_class == 'connected' else 'thm_1_7'
    return rho_bound_theorem_1_7(n, k, forest.d_min), bool(threshold_is_met(kind, forest, n))


def extremal_search(n: int, forest: StarForest, graph_class: str = 'all',
                    workers: Optional[int] = None) -> SearchRecord:
    """Maximise ρ sur les graphes F-libres de la classe"""
    _check_enumerable(n, graph_class)
    pruned = bench_setting('PRUNE_HEREDITARY')
    workers = workers or bench_setting('SEARCH_WORKERS')
    level = bench_setting('SEARCH_SPLIT_LEVEL')
    logger.info("Recherche extrémale n=%d classe=%s forêt=%s (processus=%d)", n, graph_class, forest, workers)

    if workers > 1 and n > level:
        tasks = [
            (graph6_encode(g), str(code), n, graph_class, str(forest), pruned)
            for g, code in _frontier(level, graph_class, forest if pruned else None)
        ]
        state = ScanState()
        with Pool(processes=workers) as pool:
            for partial in pool.imap_unordered(_scan_subtree, tasks):
                state.merge(partial)
    else:
        graph, code = _root()
        state = _scan_subtree((graph6_encode(graph), str(code), n, graph_class, str(forest), pruned))

    if state.count_f_free == 0:
        raise EmptyClass(f"Aucun graphe {graph_class} d'ordre {n} n'évite {forest}")

    bound_value, applicable = _bound_for(n, forest, graph_class)
    construction = extremal_construction(n, forest, graph_class)
    construction_rho = None
    if construction is not None:
        if in_class(construction, graph_class) and is_f_free(construction, forest):
            construction_rho = spectral_radius(construction)
        else:
            logger.warning("Construction hors classe ou non F-libre : %s", graph6_encode(construction))
            construction = None

    record = SearchRecord(
        n=n,
        graph_class=graph_class,
        forest=forest,
        count_enumerated=None if pruned else state.count_enumerated,
        count_f_free=state.count_f_free,
        max_rho=state.max_rho,
        argmax=state.sorted_argmax(),
        bound_value=bound_value,
        bound_applicable=applicable,
        gap=None if bound_value is None else bound_value - state.max_rho,
        construction=graph6_encode(canonical_form(construction)) if construction is not None else None,
        construction_rho=construction_rho,
        pruned=pruned,
    )
    logger.info("ρ max = %.12g sur %d graphes F-libres", record.max_rho, record.count_f_free)
    return record


# ========================
# VÉRIFICATIONS
# ========================

@dataclass(frozen=True)
class EdgeViolation:
    graph6: str
    edges: int
    bound: int


def f_free_graphs(n: int, forest: StarForest, graph_class: str = 'all') -> Iterator[Graph]:
    """Graphes F-libres de la classe, élagués par hérédité"""
    _check_enumerable(n, graph_class)
    for g, _ in _generate(n, graph_class, forest):
        yield g


def verify_edge_bound(n: int, forest: StarForest, graph_class: str = 'all') -> List[EdgeViolation]:
    """Graphes F-libres dépassant e(G) ≤ (Σdi + 2k − 3)n − (k − 1)(Σdi + k − 1)"""
    bound = edge_bound_lemma_2_1(forest, n)
    violations = [
        EdgeViolation(graph6_encode(g), g.edge_count, bound)
        for g in f_free_graphs(n, forest, graph_class)
        if g.edge_count > bound
    ]
    if violations:
        logger.warning("%d violations de la borne sur les arêtes (n=%d, %s)", len(violations), n, forest)
    return violations


@dataclass(frozen=True)
class MarginRow:
    graph6: str
    q: float
    margin: float


@dataclass
class MarginTable:
    n: int
    graph_class: str
    forest: StarForest
    bound: float
    rows: List[MarginRow]

    @property
    def max_margin(self) -> float:
        return max(row.margin for row in self.rows)

    @property
    def exceeding(self) -> List[MarginRow]:
        tol = bench_setting('CHECK_TOLERANCE')
        return [row for row in self.rows if row.margin > tol]


def test_conjecture_q(n: int, forest: StarForest, graph_class: str = 'all') -> MarginTable:
    """q(G) − borne conjecturée pour chaque graphe F-libre ; les dépassements sont relevés"""
    bound = q_bound_conjecture_3_2(n, forest.k, forest.d_min)
    rows = []
    for g in f_free_graphs(n, forest, graph_class):
        q = signless_laplacian_radius(g) if g.n else 0.0
        rows.append(MarginRow(graph6_encode(g), q, q - bound))
    if not rows:
        raise EmptyClass(f"Aucun graphe {graph_class} d'ordre {n} n'évite {forest}")
    rows.sort(key=lambda row: (-row.margin, row.graph6))
    table = MarginTable(n, graph_class, forest, bound, rows)
    if table.exceeding:
        logger.info("%d graphes au-dessus de la borne conjecturée (n=%d, %s)", len(table.exceeding), n, forest)
    return table


test_conjecture_q.__test__ = False


# ========================
# FICHIERS DE RÉSULTATS
# ========================

def write_records(records: Iterable[SearchRecord], path) -> int:
    """Une ligne JSON par recherche ; renvoie le nombre de lignes écrites"""
    count = 0
    try:
        with open(path, 'w', encoding='utf-8') as handle:
            for record in records:
                handle.write(json.dumps(record.as_dict(), sort_keys=True) + '\n')
                count += 1
    except OSError as exc:
        raise RecordFileError(path, f"Écriture impossible ({exc.strerror})")
    return count


def read_records(path) -> List[SearchRecord]:
    try:
        lines = Path(path).read_text(encoding='utf-8').splitlines()
    except OSError as exc:
        raise RecordFileError(path, f"Lecture impossible ({exc.strerror})")
    records = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            records.append(SearchRecord.from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError, BenchError) as exc:
            raise ParseError(f"Enregistrement invalide : {exc}", line=number)
    return records

"""
Graphes simples non orientés d'ordre au plus 64.

Chaque sommet porte une ligne de bits (un entier) : le bit u de ``adj[v]`` est
levé si et seulement si uv est une arête. Les sommets sont numérotés 0..n-1.
Les graphes sont immuables ; toutes les constructions renvoient un nouveau
graphe.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .conf import bench_setting
from .exceptions import BadEdge, OrderTooLarge, ParamOutOfRange, ParseError

logger = logging.getLogger(__name__)

GRAPH6_HEADER = '>>graph6<<'


def iter_bits(mask: int) -> Iterator[int]:
    """Positions des bits levés, par ordre croissant"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_order(n: int, ceiling: Optional[int] = None):
    ceiling = bench_setting('MAX_ORDER') if ceiling is None else ceiling
    if n < 0:
        raise ParamOutOfRange(f"Ordre négatif : {n}")
    if n > ceiling:
        raise OrderTooLarge(f"Ordre {n} supérieur au plafond {ceiling}")


# ========================
# TYPE GRAPHE
# ========================

@dataclass(frozen=True)
class Graph:
    """Graphe simple : n sommets, une ligne de bits par sommet"""
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        _check_order(self.n)
        if len(self.adj) != self.n:
            raise BadEdge(f"{len(self.adj)} lignes d'adjacence pour {self.n} sommets")

    def __str__(self):
        return graph6_encode(self)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Arêtes (u, v) avec u < v, triées"""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def add_edge(self, u: int, v: int) -> 'Graph':
        _check_pair(self.n, u, v)
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> 'Graph':
        _check_pair(self.n, u, v)
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> 'Graph':
        """Renumérote : le sommet v devient perm[v]"""
        if sorted(perm) != list(range(self.n)):
            raise ParamOutOfRange("La renumérotation n'est pas une permutation")
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in iter_bits(self.adj[v]):
                row |= 1 << perm[u]
            rows[perm[v]] = row
        return Graph(self.n, tuple(rows))

    def delete_vertex(self, v: int) -> 'Graph':
        """Supprime v ; les sommets suivants sont décalés d'un rang"""
        if not 0 <= v < self.n:
            raise BadEdge(f"Sommet {v} hors du graphe")
        low = (1 << v) - 1
        rows = []
        for u in range(self.n):
            if u == v:
                continue
            row = self.adj[u]
            rows.append((row & low) | ((row >> (v + 1)) << v))
        return Graph(self.n - 1, tuple(rows))

    def adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = 1.0
        return matrix


def _check_pair(n: int, u: int, v: int):
    if not (0 <= u < n and 0 <= v < n):
        raise BadEdge(f"Arête ({u}, {v}) hors d'un graphe d'ordre {n}")
    if u == v:
        raise BadEdge(f"Boucle interdite en {u}")


def check_invariants(g: Graph) -> bool:
    """Symétrie, absence de boucle, bits tous < n"""
    limit = (1 << g.n) - 1
    for v, row in enumerate(g.adj):
        if row & ~limit or row >> v & 1:
            return False
        if any(not g.adj[u] >> v & 1 for u in iter_bits(row)):
            return False
    return True


# ========================
# CONSTRUCTIONS
# ========================

def from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """Graphe d'ordre n ayant exactement ces arêtes (doublons fusionnés)"""
    _check_order(n)
    rows = [0] * n
    for u, v in edges:
        _check_pair(n, u, v)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    _check_order(n)
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    _check_order(n)
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParamOutOfRange(f"Un cycle a au moins 3 sommets (reçu {n})")
    return from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def union(g: Graph, h: Graph) -> Graph:
    """Union disjointe : les sommets de h sont décalés de |V(g)|"""
    _check_order(g.n + h.n)
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def disjoint_copies(k: int, g: Graph) -> Graph:
    """kG : union de k copies disjointes de g"""
    if k < 1:
        raise ParamOutOfRange(f"Nombre de copies invalide : {k}")
    _check_order(k * g.n)
    result = g
    for _ in range(k - 1):
        result = union(result, g)
    return result


def join(g: Graph, h: Graph) -> Graph:
    """Joint g ∇ h : union disjointe plus toutes les arêtes entre g et h"""
    _check_order(g.n + h.n)
    g_mask = (1 << g.n) - 1
    h_mask = ((1 << h.n) - 1) << g.n
    rows = [row | h_mask for row in g.adj]
    rows += [(row << g.n) | g_mask for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(~row & full & ~(1 << v) for v, row in enumerate(g.adj)))


# ========================
# PRÉDICATS STRUCTURELS
# ========================

def degrees(g: Graph) -> List[int]:
    return [row.bit_count() for row in g.adj]


def max_degree(g: Graph) -> int:
    return max(degrees(g), default=0)


def is_connected(g: Graph) -> bool:
    """Connexité ; vrai par convention pour n ≤ 1"""
    if g.n <= 1:
        return True
    seen = frontier = 1
    while frontier:
        reached = 0
        for v in iter_bits(frontier):
            reached |= g.adj[v]
        frontier = reached & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def components(g: Graph) -> List[List[int]]:
    """Composantes connexes, chacune triée, dans l'ordre de leur plus petit sommet"""
    remaining = (1 << g.n) - 1
    result = []
    while remaining:
        start = remaining & -remaining
        seen = frontier = start
        while frontier:
            reached = 0
            for v in iter_bits(frontier):
                reached |= g.adj[v]
            frontier = reached & ~seen
            seen |= frontier
        result.append(list(iter_bits(seen)))
        remaining &= ~seen
    return result


def is_bipartite(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Une 2-coloration (côté 0, côté 1) si elle existe, sinon None"""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
    left = tuple(v for v in range(g.n) if color[v] == 0)
    right = tuple(v for v in range(g.n) if color[v] == 1)
    return left, right


def is_triangle_free(g: Graph) -> bool:
    return all(not g.adj[u] & g.adj[v] for u, v in g.edges())


# ========================
# ÉTIQUETAGE CANONIQUE
# ========================

@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Triangle supérieur minimal (ordre des colonnes graph6) : égal ssi isomorphes"""
    n: int
    code: str

    def __str__(self):
        return f"{self.n}:{self.code}"


@dataclass(frozen=True)
class CanonicalLabeling:
    order: Tuple[int, ...]  # order[i] = sommet placé en position i
    code: CanonicalCode
    automorphisms: Tuple[Tuple[int, ...], ...]


def _leaf_code(g: Graph, order: Sequence[int]) -> str:
    bits = []
    for j in range(1, len(order)):
        row = g.adj[order[j]]
        bits.extend('1' if row >> order[i] & 1 else '0' for i in range(j))
    return ''.join(bits)


def _refine(g: Graph, cells: List[List[int]]) -> List[List[int]]:
    """Raffinement équitable : découpe chaque cellule selon les nombres de voisins par cellule"""
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        refined = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {v: tuple((g.adj[v] & m).bit_count() for m in masks) for v in cell}
            groups = sorted(set(signature.values()))
            if len(groups) == 1:
                refined.append(cell)
                continue
            changed = True
            for key in groups:
                refined.append([v for v in cell if signature[v] == key])
        cells = refined
        if not changed:
            return cells


def _are_twins(g: Graph, u: int, v: int) -> bool:
    pair = (1 << u) | (1 << v)
    return g.adj[u] & ~pair == g.adj[v] & ~pair


class _Search:
    """Individualisation-raffinement avec élagage par automorphismes"""

    def __init__(self, g: Graph):
        self.g = g
        self.best_code: Optional[str] = None
        self.best_order: Optional[Tuple[int, ...]] = None
        self.automorphisms = set()
        self.frames: List[dict] = []

    def run(self):
        self._visit([list(range(self.g.n))], [])

    def _orbit_roots(self, path: List[int]) -> List[int]:
        parent = list(range(self.g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for sigma in self.automorphisms:
            if all(sigma[p] == p for p in path):
                for v, image in enumerate(sigma):
                    a, b = find(v), find(image)
                    if a != b:
                        parent[a] = b
        return [find(v) for v in range(self.g.n)]

    def _visit(self, cells: List[List[int]], path: List[int]):
        cells = _refine(self.g, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            self._leaf(tuple(cell[0] for cell in cells))
            return
        frame = {'first': None}
        self.frames.append(frame)
        explored: List[int] = []
        cell = cells[target]
        for v in cell:
            if any(_are_twins(self.g, u, v) for u in explored):
                continue
            roots = self._orbit_roots(path)
            if any(roots[u] == roots[v] for u in explored):
                continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            self._visit(cells[:target] + [[v], rest] + cells[target + 1:], path + [v])
        self.frames.pop()

    def _leaf(self, order: Tuple[int, ...]):
        code = _leaf_code(self.g, order)
        for frame in self.frames:
            if frame['first'] is None:
                frame['first'] = (order, code)
            elif frame['first'][1] == code:
                self._record_automorphism(frame['first'][0], order)
        if self.best_code is None or code < self.best_code:
            self.best_code, self.best_order = code, order
        elif code == self.best_code:
            self._record_automorphism(self.best_order, order)

    def _record_automorphism(self, source: Sequence[int], target: Sequence[int]):
        sigma = [0] * self.g.n
        for a, b in zip(source, target):
            sigma[a] = b
        sigma = tuple(sigma)
        if any(v != image for v, image in enumerate(sigma)):
            self.automorphisms.add(sigma)


def canonical_labeling(g: Graph) -> CanonicalLabeling:
    _check_order(g.n, bench_setting('CANONICAL_CEILING'))
    if g.n == 0:
        return CanonicalLabeling((), CanonicalCode(0, ''), ())
    search = _Search(g)
    search.run()
    return CanonicalLabeling(
        order=search.best_order,
        code=CanonicalCode(g.n, search.best_code),
        automorphisms=tuple(sorted(search.automorphisms)),
    )


def canonical_code(g: Graph) -> CanonicalCode:
    return canonical_labeling(g).code


def canonical_form(g: Graph, labeling: Optional[CanonicalLabeling] = None) -> Graph:
    """Représentant canonique : g renuméroté selon l'étiquetage canonique"""
    order = (labeling or canonical_labeling(g)).order
    perm = [0] * g.n
    for position, v in enumerate(order):
        perm[v] = position
    return g.relabel(perm)


def canonical_deletion_vertex(g: Graph, labeling: Optional[CanonicalLabeling] = None) -> int:
    """Sommet de degré minimal placé le plus loin dans l'ordre canonique"""
    labeling = labeling or canonical_labeling(g)
    low = min(degrees(g))
    return next(v for v in reversed(labeling.order) if g.degree(v) == low)


# ========================
# FORMAT GRAPH6
# ========================

def graph6_encode(g: Graph) -> str:
    if g.n <= 62:
        head = chr(63 + g.n)
    else:
        head = '~' + ''.join(chr(63 + (g.n >> shift & 63)) for shift in (12, 6, 0))
    bits = [g.adj[j] >> i & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = ''.join(
        chr(63 + int(''.join(map(str, bits[i:i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return head + body


def graph6_decode(line: str) -> Graph:
    text = line.rstrip('\r\n')
    start = len(GRAPH6_HEADER) if text.startswith(GRAPH6_HEADER) else 0
    if len(text) == start:
        raise ParseError("Ligne graph6 vide", offset=start)
    for offset in range(start, len(text)):
        if not 63 <= ord(text[offset]) <= 126:
            raise ParseError(f"Caractère graph6 invalide {text[offset]!r}", offset=offset)

    pos = start
    if text[pos] == '~':
        if pos + 1 < len(text) and text[pos + 1] == '~':
            raise OrderTooLarge("Ordre graph6 sur 36 bits non pris en charge")
        if len(text) < pos + 4:
            raise ParseError("En-tête d'ordre graph6 tronqué", offset=len(text))
        n = 0
        for c in text[pos + 1:pos + 4]:
            n = (n << 6) | (ord(c) - 63)
        pos += 4
    else:
        n = ord(text[pos]) - 63
        pos += 1
    _check_order(n)

    pair_count = n * (n - 1) // 2
    expected = pos + (pair_count + 5) // 6
    if len(text) != expected:
        raise ParseError(
            f"Longueur graph6 {len(text)} au lieu de {expected} pour n = {n}",
            offset=min(len(text), expected),
        )

    bits = []
    for c in text[pos:]:
        value = ord(c) - 63
        bits.extend(value >> shift & 1 for shift in range(5, -1, -1))
    if any(bits[pair_count:]):
        raise ParseError("Bits de bourrage non nuls", offset=len(text) - 1)

    rows = [0] * n
    index = 0
    for j in range(1, n):
        for i in range(j):
            if bits[index]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            index += 1
    return Graph(n, tuple(rows))

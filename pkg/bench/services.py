"""
Services pour la logique métier de l'atelier : suites de propriétés et
recherches archivées.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from .conf import bench_setting
from .enumeration import (
    extremal_search, enumerate_graphs, f_free_graphs, test_conjecture_q, verify_edge_bound,
)
from .exceptions import NoRegularGraph
from .extremal import (
    least_eig_bound, make_complete_bipartite, make_double_star, make_join_regular,
    q_bound_conjecture_3_2, rho_bound_bipartite, rho_bound_theorem_1_7,
)
from .graphs import Graph, graph6_encode, is_bipartite, is_triangle_free
from .models import SearchRun
from .spectra import (
    adjacency_spectrum, check_perron_floor, least_eigenvalue, signless_laplacian_radius,
    spectral_radius,
)
from .star_forest import StarForest, high_degree_vertices, is_f_free

logger = logging.getLogger(__name__)


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, condition: bool, message: str):
        self.checked += 1
        if not condition:
            self.violations.append(message)

    def as_dict(self) -> Dict:
        return {
            'name': self.name,
            'checked': self.checked,
            'violations': list(self.violations),
            'notes': list(self.notes),
            'ok': self.ok,
        }


def _feasible_join_regular(n: int, k: int, d: int) -> Optional[Graph]:
    try:
        return make_join_regular(n, k, d)
    except NoRegularGraph:
        return None


def _finish(report: SuiteReport) -> SuiteReport:
    level = logging.WARNING if report.violations else logging.INFO
    logger.log(level, "Suite %s : %d vérifications, %d violations",
               report.name, report.checked, len(report.violations))
    return report


class PropertySuiteService:
    """Suites de propriétés vérifiées sur les familles construites et les petits graphes"""

    DEFAULT_FORESTS = ((1, 1), (2, 1), (2, 2))

    @staticmethod
    def edge_bound_suite(n_max: int = 8, forests: Iterable[Sequence[int]] = DEFAULT_FORESTS,
                         graph_class: str = 'all') -> SuiteReport:
        """Borne sur e(G) et |C| ≤ k − 1 pour tous les graphes F-libres"""
        report = SuiteReport('edge')
        for degrees in forests:
            forest = StarForest(tuple(degrees))
            for n in range(forest.order, n_max + 1):
                violations = verify_edge_bound(n, forest, graph_class)
                report.checked += 1
                report.violations.extend(
                    f"{v.graph6} : e = {v.edges} > {v.bound} (F = {forest})" for v in violations
                )
                for g in f_free_graphs(n, forest, graph_class):
                    report.check(
                        len(high_degree_vertices(g, forest)) <= forest.k - 1,
                        f"{graph6_encode(g)} : plus de k − 1 sommets de grand degré (F = {forest})",
                    )
        return _finish(report)

    @staticmethod
    def lemma_2_3_suite(k_values: Iterable[int] = range(2, 6), d_values: Iterable[int] = range(1, 5),
                        n_max: int = 40, free_check_max: int = 12) -> SuiteReport:
        """Égalité pour H régulier, inégalité stricte après suppression d'une arête de H"""
        tol = bench_setting('CHECK_TOLERANCE')
        margin = bench_setting('PERTURBATION_MARGIN')
        report = SuiteReport('lemma23')
        d_values = list(d_values)
        for k in k_values:
            for d in d_values:
                for n in range(k, n_max + 1):
                    g = _feasible_join_regular(n, k, d)
                    if g is None:
                        continue
                    bound = rho_bound_theorem_1_7(n, k, d)
                    rho = spectral_radius(g)
                    report.check(abs(rho - bound) <= tol,
                                 f"ρ(K_{k - 1} ∇ H) = {rho!r} ≠ {bound!r} (n={n}, d={d})")
                    h_edges = [(u, v) for u, v in g.edges() if u >= k - 1]
                    if h_edges:
                        perturbed = spectral_radius(g.remove_edge(*h_edges[0]))
                        report.check(perturbed < bound - margin,
                                     f"Suppression d'arête non stricte : {perturbed!r} vs {bound!r} (n={n}, k={k}, d={d})")
                    if n <= free_check_max:
                        forest = StarForest((d,) * k)
                        report.check(is_f_free(g, forest),
                                     f"{graph6_encode(g)} contient {forest}")
        return _finish(report)

    @staticmethod
    def bipartite_suite(n_max: int = 10, large_n: int = 18) -> SuiteReport:
        """2S₂ : étoiles doubles à n = 18, K_{1,17}, classe bipartie connexe énumérée, Wilf"""
        tol = bench_setting('CHECK_TOLERANCE')
        forest = StarForest((2, 2))
        report = SuiteReport('bipartite')

        bound = rho_bound_bipartite(large_n, 2)
        for a in range(0, (large_n - 2) // 2 + 1):
            g = make_double_star(a, large_n - 2 - a)
            if not is_f_free(g, forest):
                continue
            rho = spectral_radius(g)
            report.check(rho <= bound + tol, f"Étoile double ({a}, {large_n - 2 - a}) : ρ = {rho!r} > {bound!r}")
        star = make_complete_bipartite(1, large_n - 1)
        report.check(abs(spectral_radius(star) - bound) <= tol, f"ρ(K_1,{large_n - 1}) ≠ {bound!r}")

        for n in range(forest.order, n_max + 1):
            bound = math.sqrt(n - 1)
            for g in f_free_graphs(n, forest, 'connected_bipartite'):
                rho = spectral_radius(g)
                report.check(rho <= bound + tol, f"{graph6_encode(g)} : ρ = {rho!r} > √{n - 1}")
                if is_triangle_free(g):
                    report.check(rho <= n / 2 + tol, f"{graph6_encode(g)} : ρ = {rho!r} > n/2")

        for k in range(2, 6):
            for n in range(k, 41):
                g = make_complete_bipartite(k - 1, n - k + 1)
                report.check(abs(spectral_radius(g) - rho_bound_bipartite(n, k)) <= tol,
                             f"ρ(K_{k - 1},{n - k + 1}) ≠ √((k−1)(n−k+1))")
                report.check(abs(least_eigenvalue(g) - least_eig_bound(n, k)) <= tol,
                             f"ρ_n(K_{k - 1},{n - k + 1}) ≠ −√((k−1)(n−k+1))")
        return _finish(report)

    @staticmethod
    def perron_floor_suite(k_max: int = 5, n_max: int = 20) -> SuiteReport:
        """x_u ≥ 1/ρ sur les graphes K_{k−1,n−k+1}"""
        report = SuiteReport('perron')
        for k in range(2, k_max + 1):
            for n in range(k, n_max + 1):
                check = check_perron_floor(make_complete_bipartite(k - 1, n - k + 1))
                report.check(check.holds, f"K_{k - 1},{n - k + 1} : marge {check.margin!r}")
        return _finish(report)

    @staticmethod
    def spectral_hygiene_suite(n_max: int = 8) -> SuiteReport:
        """Trace, somme des carrés, symétrie bipartie, puissance contre Jacobi"""
        tol = bench_setting('CHECK_TOLERANCE')
        report = SuiteReport('hygiene')
        for n in range(1, n_max + 1):
            for g in enumerate_graphs(n, 'all'):
                spectrum = adjacency_spectrum(g).eigenvalues
                label = graph6_encode(g)
                report.check(abs(sum(spectrum)) <= 1e-8 * n, f"{label} : trace {sum(spectrum)!r}")
                squares = sum(x * x for x in spectrum)
                report.check(abs(squares - 2 * g.edge_count) <= 1e-8 * n, f"{label} : Σλ² = {squares!r}")
                if is_bipartite(g) is not None:
                    report.check(
                        all(abs(a + b) <= tol for a, b in zip(spectrum, reversed(spectrum))),
                        f"{label} : spectre biparti non symétrique",
                    )
                report.check(abs(spectral_radius(g) - spectrum[0]) <= tol, f"{label} : ρ puissance ≠ ρ Jacobi")
        return _finish(report)

    @staticmethod
    def conjecture_suite(k_max: int = 4, d_max: int = 3, n_max: int = 30,
                         scan_n_max: int = 8, scan_forest: Sequence[int] = (2, 2)) -> SuiteReport:
        """q(K_{k−1} ∇ H) atteint la borne conjecturée ; le balayage ne fait que relever"""
        tol = bench_setting('CHECK_TOLERANCE')
        report = SuiteReport('conjecture')
        for k in range(2, k_max + 1):
            for d in range(1, d_max + 1):
                for n in range(k, n_max + 1):
                    g = _feasible_join_regular(n, k, d)
                    if g is None:
                        continue
                    q, bound = signless_laplacian_radius(g), q_bound_conjecture_3_2(n, k, d)
                    report.check(abs(q - bound) <= tol, f"q(K_{k - 1} ∇ H) = {q!r} ≠ {bound!r} (n={n}, d={d})")
        forest = StarForest(tuple(scan_forest))
        for n in range(max(forest.order, forest.k), scan_n_max + 1):
            table = test_conjecture_q(n, forest, 'all')
            report.notes.append(
                f"n={n} F={forest} : marge max {table.max_margin:.12g}, {len(table.exceeding)} au-dessus"
            )
        return _finish(report)

    @staticmethod
    def sandwich_suite(forest: StarForest, graph_class: str = 'all', n_max: int = 9) -> SuiteReport:
        """ρ(construction) ≤ ρ max à chaque ordre ; les écarts à la borne sont relevés"""
        tol = bench_setting('CHECK_TOLERANCE')
        report = SuiteReport('sandwich')
        for n in range(max(forest.order, forest.k), n_max + 1):
            record = extremal_search(n, forest, graph_class)
            if record.construction_rho is not None:
                report.check(record.construction_rho <= record.max_rho + tol,
                             f"n={n} : ρ(construction) = {record.construction_rho!r} > {record.max_rho!r}")
            if record.bound_applicable and record.bound_value is not None:
                report.check(record.max_rho <= record.bound_value + tol,
                             f"n={n} : ρ max = {record.max_rho!r} > borne {record.bound_value!r}")
            report.notes.append(f"n={n} : écart {record.gap!r}")
        return _finish(report)


SUITES = {
    'edge': PropertySuiteService.edge_bound_suite,
    'lemma23': PropertySuiteService.lemma_2_3_suite,
    'bipartite': PropertySuiteService.bipartite_suite,
    'perron': PropertySuiteService.perron_floor_suite,
    'hygiene': PropertySuiteService.spectral_hygiene_suite,
    'conjecture': PropertySuiteService.conjecture_suite,
}


class SearchService:
    """Service pour lancer et archiver les recherches extrémales"""

    @staticmethod
    def lancer_recherche(n: int, forest: StarForest, graph_class: str = 'all', user=None,
                         workers: Optional[int] = None, save: bool = True) -> SearchRun:
        """Exécute la recherche et l'archive"""
        record = extremal_search(n, forest, graph_class, workers=workers)
        run = SearchRun.from_record(record, user=user)
        if save:
            run.save()
            logger.info("Recherche archivée %s", run.id)
        return run

    @staticmethod
    def statistiques() -> Dict:
        """Résumé des recherches archivées"""
        runs = SearchRun.objects.all()
        return {
            'total': runs.count(),
            'par_classe': {
                value: runs.filter(graph_class=value).count()
                for value in runs.values_list('graph_class', flat=True).distinct()
            },
            'bornes_applicables': runs.filter(bound_applicable=True).count(),
        }

import math
from fractions import Fraction

from django.test import SimpleTestCase

from bench.exceptions import (
    DivisionByZeroK2, NoRegularGraph, ParamOutOfRange, ParseError,
)
from bench.extremal import (
    bound_report, build_construction, decimal_string, least_eig_bound, make_F, make_S, make_S_plus,
    make_complete_bipartite, make_double_star, make_join_regular, q_bound_conjecture_3_2,
    rho_bound_bipartite, rho_bound_theorem_1_7, threshold, threshold_is_met, threshold_report,
)
from bench.graphs import canonical_code, degrees, graph6_encode, is_connected
from bench.spectra import least_eigenvalue, signless_laplacian_radius, spectral_radius
from bench.star_forest import StarForest

TOL = 1e-9


class ConstructionTest(SimpleTestCase):
    """Familles extrémales"""

    def test_complete_bipartite(self):
        g = make_complete_bipartite(2, 9)
        self.assertEqual((g.n, g.edge_count), (11, 18))
        self.assertEqual(sorted(degrees(g)), [2] * 9 + [9, 9])

    def test_S_and_S_plus(self):
        g = make_S(7, 2)
        self.assertEqual(g.edge_count, 1 + 2 * 5)
        self.assertEqual(make_S_plus(7, 2).edge_count, g.edge_count + 1)
        with self.assertRaises(ParamOutOfRange):
            make_S_plus(4, 3)

    def test_F_even_and_odd(self):
        g = make_F(7, 2)
        self.assertEqual(sorted(degrees(g)), [2] * 6 + [6])
        self.assertEqual(g.edge_count, 6 + 3)
        h = make_F(8, 2)
        self.assertEqual(h.edge_count, 7 + 3)
        self.assertEqual(make_F(8, 3).edge_count, 1 + 2 * 6 + 3)

    def test_join_regular(self):
        g = make_join_regular(10, 3, 3)
        self.assertEqual(g.n, 10)
        self.assertEqual(sorted(degrees(g))[:8], [4] * 8)
        self.assertTrue(is_connected(g))

    def test_join_regular_parity(self):
        with self.assertRaises(NoRegularGraph):
            make_join_regular(10, 2, 2)
        with self.assertRaises(NoRegularGraph):
            make_join_regular(5, 3, 4)

    def test_double_star(self):
        g = make_double_star(2, 3)
        self.assertEqual((g.n, g.edge_count), (7, 6))
        self.assertEqual(g.degree(0), 3)
        self.assertEqual(g.degree(1), 4)

    def test_build_construction(self):
        self.assertEqual(graph6_encode(build_construction('kb', ['2', '9'])),
                         graph6_encode(make_complete_bipartite(2, 9)))
        self.assertEqual(build_construction('forest', ['2', '1']).n, 5)
        with self.assertRaises(ParamOutOfRange):
            build_construction('kb', ['2'])
        with self.assertRaises(ParamOutOfRange):
            build_construction('kb', ['2', 'x'])
        with self.assertRaises(ParseError):
            build_construction('forest', ['a'])


class SpectralBoundTest(SimpleTestCase):
    """Bornes spectrales et cas d'égalité"""

    def test_theorem_1_7_small_case(self):
        # k = 2, d = 1 : √(n − 1), l'étoile
        self.assertAlmostEqual(rho_bound_theorem_1_7(10, 2, 1), 3.0, delta=TOL)

    def test_join_regular_attains_bound(self):
        for k in range(2, 6):
            for d in range(1, 5):
                for n in range(k, 41):
                    try:
                        g = make_join_regular(n, k, d)
                    except NoRegularGraph:
                        continue
                    self.assertAlmostEqual(spectral_radius(g), rho_bound_theorem_1_7(n, k, d), delta=TOL,
                                           msg=f"n={n} k={k} d={d}")

    def test_edge_deletion_is_strict(self):
        g = make_join_regular(12, 3, 3)
        u, v = next((u, v) for u, v in g.edges() if u >= 2)
        self.assertLess(spectral_radius(g.remove_edge(u, v)), rho_bound_theorem_1_7(12, 3, 3) - 1e-6)

    def test_bipartite_bound(self):
        for k in range(2, 6):
            for n in range(k, 41, 7):
                g = make_complete_bipartite(k - 1, n - k + 1)
                self.assertAlmostEqual(spectral_radius(g), rho_bound_bipartite(n, k), delta=TOL)
                self.assertAlmostEqual(least_eigenvalue(g), least_eig_bound(n, k), delta=TOL)

    def test_conjecture_bound_attained(self):
        for k in range(2, 5):
            for d in range(1, 4):
                for n in range(k, 31):
                    try:
                        g = make_join_regular(n, k, d)
                    except NoRegularGraph:
                        continue
                    self.assertAlmostEqual(signless_laplacian_radius(g), q_bound_conjecture_3_2(n, k, d),
                                           delta=TOL, msg=f"n={n} k={k} d={d}")

    def test_F_matches_join_regular_when_even(self):
        # n − k + 1 pair : F_{n,k} = K_{k−1} ∇ pK₂, le cas d = 2
        for k in range(2, 6):
            for n in range(k + 1, 21, 2):
                g = make_F(n, k)
                h = make_join_regular(n, k, 2)
                self.assertEqual(canonical_code(g), canonical_code(h), msg=f"n={n} k={k}")
                self.assertAlmostEqual(spectral_radius(g), rho_bound_theorem_1_7(n, k, 2), delta=TOL)
                self.assertAlmostEqual(signless_laplacian_radius(g), q_bound_conjecture_3_2(n, k, 2),
                                       delta=TOL)

    def test_F_strictly_below_when_odd(self):
        for k in range(2, 6):
            for n in range(k, 21, 2):
                g = make_F(n, k)
                self.assertLess(spectral_radius(g), rho_bound_theorem_1_7(n, k, 2) - 1e-6, msg=f"n={n} k={k}")
                self.assertLess(signless_laplacian_radius(g), q_bound_conjecture_3_2(n, k, 2) - 1e-6)

    def test_F_odd_values(self):
        self.assertAlmostEqual(spectral_radius(make_F(10, 2)), 3.493959, delta=1e-5)
        self.assertAlmostEqual(rho_bound_theorem_1_7(10, 2, 2), (1 + math.sqrt(37)) / 2, delta=TOL)
        self.assertAlmostEqual(signless_laplacian_radius(make_F(12, 2)), 12.178908, delta=1e-5)
        self.assertAlmostEqual(q_bound_conjecture_3_2(12, 2, 2), 7 + math.sqrt(27), delta=TOL)

    def test_bounds_monotone_in_n(self):
        for k in range(2, 6):
            for d in range(1, 5):
                for n in range(k, 40):
                    msg = f"n={n} k={k} d={d}"
                    self.assertLess(rho_bound_theorem_1_7(n, k, d), rho_bound_theorem_1_7(n + 1, k, d), msg=msg)
                    self.assertLess(q_bound_conjecture_3_2(n, k, d), q_bound_conjecture_3_2(n + 1, k, d), msg=msg)
            for n in range(k, 40):
                self.assertLess(rho_bound_bipartite(n, k), rho_bound_bipartite(n + 1, k))
                # la plus petite valeur propre descend quand n croît
                self.assertGreater(least_eig_bound(n, k), least_eig_bound(n + 1, k))

    def test_domain(self):
        with self.assertRaises(ParamOutOfRange):
            rho_bound_theorem_1_7(5, 1, 1)
        with self.assertRaises(ParamOutOfRange):
            rho_bound_bipartite(2, 3)


class ThresholdTest(SimpleTestCase):
    """Seuils d'ordre exacts"""

    def test_f_value(self):
        forest = StarForest((1, 1, 1))
        self.assertEqual(threshold('f_value', forest), Fraction(144 * 17 ** 10 + 6))

    def test_theorem_1_7_threshold(self):
        self.assertEqual(threshold('thm_1_7', StarForest((1, 1, 1))), Fraction(13 ** 4 * 4 ** 4))

    def test_theorem_3_1_threshold(self):
        self.assertEqual(threshold('thm_3_1', StarForest((2, 2))), 1936)

    def test_bipartite_threshold(self):
        forest = StarForest((1, 1, 1))
        f = threshold('f_value', forest)
        self.assertEqual(threshold('thm_1_8_and_cor_1_9', forest), f * f / 4)

    def test_lemma_thresholds(self):
        forest = StarForest((2, 2, 1))
        self.assertEqual(threshold('lemma_2_2', forest), 4)
        self.assertEqual(threshold('lemma_2_3', forest), 2)
        self.assertEqual(threshold('lemma_2_2', StarForest((3, 1))), 10)

    def test_k_equals_two(self):
        with self.assertRaises(DivisionByZeroK2):
            threshold('thm_1_7', StarForest((2, 2)))
        with self.assertRaises(DivisionByZeroK2):
            threshold('f_value', StarForest((2, 2)))
        self.assertIsNone(threshold_is_met('thm_1_7', StarForest((2, 2)), 100))

    def test_unknown_kind(self):
        with self.assertRaises(ParamOutOfRange):
            threshold('thm_9_9', StarForest((2, 2, 2)))

    def test_threshold_is_met(self):
        forest = StarForest((2, 2, 1))
        self.assertTrue(threshold_is_met('lemma_2_2', forest, 4))
        self.assertFalse(threshold_is_met('lemma_2_2', forest, 3))

    def test_decimal_string(self):
        self.assertEqual(decimal_string(Fraction(1936)), '1936')
        self.assertTrue(decimal_string(Fraction(1, 3)).startswith('0.3333333333'))
        self.assertEqual(decimal_string(Fraction(5, 2)), '2.5')


class BoundReportTest(SimpleTestCase):
    """Rapports de bornes"""

    def test_t18(self):
        report = bound_report('t18', 11, k=3)
        self.assertAlmostEqual(report.value, math.sqrt(18), delta=TOL)
        self.assertEqual(report.attained_by, graph6_encode(make_complete_bipartite(2, 9)))
        self.assertFalse(report.exact)

    def test_c19(self):
        self.assertAlmostEqual(bound_report('c19', 11, k=3).value, -math.sqrt(18), delta=TOL)

    def test_t17_without_regular_graph(self):
        report = bound_report('t17', 10, k=2, d=2)
        self.assertIsNone(report.attained_by)

    def test_t17_with_forest(self):
        report = bound_report('t17', 10, forest=StarForest((3, 3, 3)))
        self.assertEqual(report.params, {'n': 10, 'k': 3, 'd': 3})
        self.assertIsNotNone(report.attained_by)

    def test_edge_bounds_are_exact(self):
        report = bound_report('t12', 12, forest=StarForest((2, 2, 2)))
        self.assertEqual(report.value, 26)
        self.assertTrue(report.exact)
        self.assertEqual(bound_report('l21', 12, forest=StarForest((3, 2, 1))).value, 92)

    def test_missing_parameters(self):
        with self.assertRaises(ParamOutOfRange):
            bound_report('t17', 10, k=3)
        with self.assertRaises(ParamOutOfRange):
            bound_report('l21', 10, k=3)
        with self.assertRaises(ParamOutOfRange):
            bound_report('t99', 10, k=3)

    def test_threshold_report(self):
        report = threshold_report('thm_3_1', StarForest((2, 2)))
        self.assertEqual(report.value, 1936)
        self.assertTrue(report.exact)
        with self.assertRaises(DivisionByZeroK2):
            threshold_report('thm_1_7', StarForest((2, 2)))

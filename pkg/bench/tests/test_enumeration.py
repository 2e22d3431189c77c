import math
import tempfile
from pathlib import Path
from unittest.mock import patch

import networkx as nx
from django.test import SimpleTestCase, override_settings

from bench import enumeration
from bench.exceptions import EmptyClass, OrderTooLarge, ParamOutOfRange, ParseError, RecordFileError
from bench.extremal import make_complete_bipartite, rho_bound_theorem_1_7, threshold
from bench.graphs import canonical_code, graph6_decode, graph6_encode, is_connected
from bench.star_forest import StarForest, is_f_free

TOL = 1e-9


def to_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class EnumerationTest(SimpleTestCase):
    """Énumération à isomorphisme près"""

    def test_counts_all(self):
        expected = [1, 1, 2, 4, 11, 34, 156]
        for n, count in enumerate(expected):
            self.assertEqual(enumeration.count_graphs(n, 'all'), count, msg=f"n={n}")

    def test_counts_connected(self):
        for n, count in enumerate([1, 1, 1, 2, 6, 21, 112]):
            self.assertEqual(enumeration.count_graphs(n, 'connected'), count, msg=f"n={n}")

    def test_counts_bipartite(self):
        for n, count in zip(range(1, 7), [1, 2, 3, 7, 13, 35]):
            self.assertEqual(enumeration.count_graphs(n, 'bipartite'), count, msg=f"n={n}")
        for n, count in zip(range(1, 7), [1, 1, 1, 3, 5, 17]):
            self.assertEqual(enumeration.count_graphs(n, 'connected_bipartite'), count, msg=f"n={n}")

    def test_bipartite_matches_side_route(self):
        for n in range(1, 7):
            augmented = {canonical_code(g) for g in enumeration.enumerate_graphs(n, 'bipartite')}
            by_sides = {canonical_code(g) for g in enumeration.enumerate_bipartite_by_sides(n)}
            self.assertEqual(augmented, by_sides, msg=f"n={n}")

    def test_no_isomorphic_pair(self):
        graphs = [to_networkx(g) for g in enumeration.enumerate_graphs(5, 'all')]
        for i, a in enumerate(graphs):
            for b in graphs[i + 1:]:
                self.assertFalse(nx.is_isomorphic(a, b))

    def test_codes_unique(self):
        codes = [canonical_code(g) for g in enumeration.enumerate_graphs(6, 'all')]
        self.assertEqual(len(codes), len(set(codes)))

    def test_connected_filter(self):
        self.assertTrue(all(is_connected(g) for g in enumeration.enumerate_graphs(6, 'connected')))

    def test_ceiling(self):
        with self.assertRaises(OrderTooLarge):
            next(enumeration.enumerate_graphs(11, 'all'))
        with self.assertRaises(ParamOutOfRange):
            next(enumeration.enumerate_graphs(4, 'planar'))

    def test_f_free_graphs_match_filter(self):
        forest = StarForest((1, 1))
        pruned = {canonical_code(g) for g in enumeration.f_free_graphs(6, forest)}
        filtered = {canonical_code(g) for g in enumeration.enumerate_graphs(6, 'all') if is_f_free(g, forest)}
        self.assertEqual(pruned, filtered)


class ExtremalSearchTest(SimpleTestCase):
    """Recherche exhaustive de ρ max"""

    def test_two_edges_on_four_vertices(self):
        # 2K₂-libres : K̄₄, K₂, P₃, K₃, K_{1,3}
        record = enumeration.extremal_search(4, StarForest((1, 1)), 'all')
        self.assertEqual(record.count_f_free, 5)
        self.assertAlmostEqual(record.max_rho, 2.0, delta=TOL)
        self.assertEqual(len(record.argmax), 1)
        self.assertEqual(graph6_decode(record.argmax[0]).edge_count, 3)
        self.assertLess(record.gap, 0)
        self.assertFalse(record.bound_applicable)

    def test_star_is_extremal_at_six(self):
        record = enumeration.extremal_search(6, StarForest((1, 1)), 'all')
        self.assertAlmostEqual(record.max_rho, math.sqrt(5), delta=TOL)
        self.assertEqual(
            [canonical_code(graph6_decode(g6)) for g6 in record.argmax],
            [canonical_code(make_complete_bipartite(1, 5))],
        )
        self.assertAlmostEqual(record.gap, 0.0, delta=TOL)
        self.assertAlmostEqual(record.construction_rho, math.sqrt(5), delta=TOL)

    def test_sandwich_connected(self):
        record = enumeration.extremal_search(7, StarForest((2, 2)), 'connected')
        self.assertIsNotNone(record.construction_rho)
        self.assertLessEqual(record.construction_rho, record.max_rho + TOL)
        self.assertTrue(record.pruned)

    def test_connected_bipartite_star(self):
        record = enumeration.extremal_search(8, StarForest((2, 2)), 'connected_bipartite')
        self.assertAlmostEqual(record.max_rho, math.sqrt(7), delta=TOL)
        self.assertLessEqual(record.max_rho, record.bound_value + TOL)

    def test_without_pruning_same_result(self):
        forest = StarForest((2, 1))
        pruned = enumeration.extremal_search(6, forest, 'all')
        with override_settings(SPECTRAL_BENCH={'PRUNE_HEREDITARY': False}):
            full = enumeration.extremal_search(6, forest, 'all')
        self.assertTrue(pruned.pruned)
        self.assertIsNone(pruned.count_enumerated)
        self.assertFalse(full.pruned)
        self.assertEqual(full.count_enumerated, 156)
        self.assertEqual(full.count_f_free, pruned.count_f_free)
        self.assertAlmostEqual(full.max_rho, pruned.max_rho, delta=TOL)
        self.assertEqual(full.argmax, pruned.argmax)

    def test_split_matches_sequential(self):
        forest = StarForest((2, 2))
        sequential = enumeration.extremal_search(7, forest, 'all')
        # balayage par sous-arbres sans pool de processus
        frontier = enumeration._frontier(4, 'all', forest)
        state = enumeration.ScanState()
        for g, code in frontier:
            state.merge(enumeration._scan_subtree((graph6_encode(g), str(code), 7, 'all', str(forest), True)))
        self.assertEqual(state.count_f_free, sequential.count_f_free)
        self.assertAlmostEqual(state.max_rho, sequential.max_rho, delta=TOL)
        self.assertEqual(state.sorted_argmax(), sequential.argmax)

    def test_parallel_uses_pool(self):
        forest = StarForest((1, 1))
        sequential = enumeration.extremal_search(7, forest, 'all')

        class InlinePool:
            def __init__(self, processes):
                self.processes = processes

            def __enter__(self):
                return self

            def __exit__(self, *exc):
                return False

            def imap_unordered(self, function, tasks):
                return map(function, tasks)

        with patch('bench.enumeration.Pool', InlinePool):
            parallel = enumeration.extremal_search(7, forest, 'all', workers=2)
        self.assertEqual(parallel.count_f_free, sequential.count_f_free)
        self.assertEqual(parallel.argmax, sequential.argmax)

    def test_order_too_large(self):
        with self.assertRaises(OrderTooLarge):
            enumeration.extremal_search(11, StarForest((1, 1)), 'all')

    def test_empty_class(self):
        with patch('bench.enumeration._scan_subtree', return_value=enumeration.ScanState()):
            with self.assertRaises(EmptyClass):
                enumeration.extremal_search(3, StarForest((1, 1)), 'all')


class BoundApplicabilityTest(SimpleTestCase):
    """Seuil d'ordre retenu selon la classe"""

    def test_connected_uses_connected_threshold(self):
        forest = StarForest((1, 1))
        self.assertEqual(threshold('thm_3_1', forest), 196)
        bound, applicable = enumeration._bound_for(196, forest, 'connected')
        self.assertTrue(applicable)
        self.assertAlmostEqual(bound, rho_bound_theorem_1_7(196, 2, 1), delta=TOL)
        self.assertFalse(enumeration._bound_for(195, forest, 'connected')[1])

    def test_all_graphs_undefined_for_k2(self):
        bound, applicable = enumeration._bound_for(196, StarForest((1, 1)), 'all')
        self.assertIsNotNone(bound)
        self.assertFalse(applicable)

    def test_connected_bipartite_uses_f(self):
        forest = StarForest((1, 1, 1))
        n = math.ceil(threshold('f_value', forest))
        self.assertTrue(enumeration._bound_for(n, forest, 'connected_bipartite')[1])
        self.assertFalse(enumeration._bound_for(n - 1, forest, 'connected_bipartite')[1])
        self.assertFalse(enumeration._bound_for(n, forest, 'bipartite')[1])

    def test_kp3_explicit_threshold(self):
        forest = StarForest((2, 2))
        self.assertTrue(enumeration._bound_for(18, forest, 'bipartite')[1])
        self.assertFalse(enumeration._bound_for(17, forest, 'bipartite')[1])

    def test_below_k(self):
        self.assertEqual(enumeration._bound_for(2, StarForest((1, 1, 1)), 'all'), (None, False))


class VerificationTest(SimpleTestCase):
    """Borne sur les arêtes et table de la conjecture"""

    def test_edge_bound_holds(self):
        for n, degrees, graph_class in ((6, (1, 1), 'all'), (8, (2, 2), 'all'), (7, (2, 1), 'connected')):
            self.assertEqual(enumeration.verify_edge_bound(n, StarForest(degrees), graph_class), [])

    def test_edge_bound_below_order(self):
        with self.assertRaises(ParamOutOfRange):
            enumeration.verify_edge_bound(3, StarForest((2, 2)))

    def test_conjecture_table(self):
        table = enumeration.test_conjecture_q(8, StarForest((1, 1)), 'all')
        margins = [row.margin for row in table.rows]
        self.assertEqual(margins, sorted(margins, reverse=True))
        edgeless = next(row for row in table.rows if graph6_decode(row.graph6).edge_count == 0)
        self.assertEqual(edgeless.q, 0.0)
        self.assertLess(edgeless.margin, 0)
        self.assertAlmostEqual(table.max_margin, margins[0], delta=TOL)

    def test_conjecture_family_on_the_bound(self):
        # F₉,₂ = K₁ ∇ 4K₂ est 2S₂-libre et atteint la borne pour d = 2
        table = enumeration.test_conjecture_q(9, StarForest((2, 2)), 'all')
        self.assertTrue(any(abs(row.margin) <= TOL for row in table.rows))


class RecordFileTest(SimpleTestCase):
    """Fichiers JSON-lines de résultats"""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = Path(self.directory.name) / 'runs.jsonl'

    def tearDown(self):
        self.directory.cleanup()

    def test_round_trip(self):
        records = [
            enumeration.extremal_search(5, StarForest((1, 1)), 'all'),
            enumeration.extremal_search(6, StarForest((2, 2)), 'connected_bipartite'),
        ]
        self.assertEqual(enumeration.write_records(records, self.path), 2)
        self.assertEqual(enumeration.read_records(self.path), records)

    def test_missing_file(self):
        with self.assertRaises(RecordFileError) as ctx:
            enumeration.read_records(self.path)
        self.assertIn(str(self.path), ctx.exception.message)

    def test_malformed_line(self):
        record = enumeration.extremal_search(5, StarForest((1, 1)), 'all')
        enumeration.write_records([record], self.path)
        with open(self.path, 'a', encoding='utf-8') as handle:
            handle.write('{pas du json\n')
        with self.assertRaises(ParseError) as ctx:
            enumeration.read_records(self.path)
        self.assertEqual(ctx.exception.line, 2)

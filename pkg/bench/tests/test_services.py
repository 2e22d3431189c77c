from django.contrib.auth import get_user_model
from django.test import SimpleTestCase, TestCase

from bench import enumeration
from bench.models import SearchRun
from bench.services import SUITES, PropertySuiteService, SearchService, SuiteReport
from bench.star_forest import StarForest

User = get_user_model()


class SuiteReportTest(SimpleTestCase):
    """Rapport de suite"""

    def test_check(self):
        report = SuiteReport('demo')
        report.check(True, 'ok')
        report.check(False, 'ko')
        self.assertEqual(report.checked, 2)
        self.assertEqual(report.violations, ['ko'])
        self.assertFalse(report.ok)
        self.assertEqual(report.as_dict()['ok'], False)


class PropertySuiteTest(SimpleTestCase):
    """Suites de propriétés sur des domaines réduits"""

    def test_registry(self):
        self.assertEqual(sorted(SUITES), ['bipartite', 'conjecture', 'edge', 'hygiene', 'lemma23', 'perron'])

    def test_edge_suite(self):
        report = PropertySuiteService.edge_bound_suite(n_max=7)
        self.assertTrue(report.ok, report.violations)
        self.assertGreater(report.checked, 0)

    def test_lemma_2_3_suite(self):
        report = PropertySuiteService.lemma_2_3_suite(k_values=range(2, 4), d_values=range(1, 4), n_max=16)
        self.assertTrue(report.ok, report.violations)

    def test_bipartite_suite(self):
        report = PropertySuiteService.bipartite_suite(n_max=8)
        self.assertTrue(report.ok, report.violations)

    def test_perron_suite(self):
        report = PropertySuiteService.perron_floor_suite(k_max=4, n_max=12)
        self.assertTrue(report.ok, report.violations)

    def test_hygiene_suite(self):
        report = PropertySuiteService.spectral_hygiene_suite(n_max=6)
        self.assertTrue(report.ok, report.violations)
        self.assertGreater(report.checked, 156)

    def test_conjecture_suite_records_notes(self):
        report = PropertySuiteService.conjecture_suite(k_max=3, d_max=2, n_max=12, scan_n_max=7)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(len(report.notes), 7 - 6 + 1)

    def test_sandwich_suite(self):
        report = PropertySuiteService.sandwich_suite(StarForest((2, 2)), 'connected_bipartite', n_max=8)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(len(report.notes), 8 - 6 + 1)


class SearchServiceTest(TestCase):
    """Archivage des recherches"""

    def setUp(self):
        self.user = User.objects.create_user(username='chercheur', password='testpass123')

    def test_lancer_recherche(self):
        run = SearchService.lancer_recherche(6, StarForest((1, 1)), 'all', user=self.user)
        self.assertEqual(SearchRun.objects.count(), 1)
        self.assertEqual(run.created_by, self.user)
        self.assertEqual(run.forest, '2:1,1')
        self.assertTrue(run.sandwich_ok)

    def test_sans_sauvegarde(self):
        SearchService.lancer_recherche(5, StarForest((1, 1)), save=False)
        self.assertEqual(SearchRun.objects.count(), 0)

    def test_record_round_trip(self):
        record = enumeration.extremal_search(6, StarForest((2, 1)), 'connected')
        run = SearchRun.from_record(record)
        run.save()
        self.assertEqual(SearchRun.objects.get(pk=run.pk).to_record(), record)
        self.assertIsNone(SearchRun.objects.get(pk=run.pk).count_enumerated)

    def test_statistiques(self):
        SearchService.lancer_recherche(5, StarForest((1, 1)), 'all')
        SearchService.lancer_recherche(6, StarForest((2, 2)), 'connected_bipartite')
        stats = SearchService.statistiques()
        self.assertEqual(stats['total'], 2)
        self.assertEqual(stats['par_classe'], {'all': 1, 'connected_bipartite': 1})

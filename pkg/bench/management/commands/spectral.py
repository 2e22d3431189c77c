"""
Commande ``spectral`` : toutes les opérations de l'atelier en ligne de commande.

    python manage.py spectral construct kb 2 9
    python manage.py spectral bound t18 11 3 --json
    python manage.py spectral search 7 2,2 connected --workers 4 --out runs.jsonl

Codes de sortie : 0 succès, 1 erreur de domaine, 2 usage, 3 violations d'une suite.
"""
import argparse
import json
from fractions import Fraction
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from bench.conf import bench_setting
from bench.enumeration import (
    GRAPH_CLASSES, check_graph_class, enumerate_graphs, extremal_search, test_conjecture_q,
    write_records,
)
from bench.exceptions import BenchError, ParseError
from bench.extremal import (
    BOUND_KINDS, CONSTRUCTION_KINDS, THRESHOLD_KINDS, bound_report, build_construction,
    decimal_string, threshold_report,
)
from bench.graphs import (
    canonical_code, canonical_form, complement, components, degrees, disjoint_copies, graph6_decode,
    graph6_encode, is_bipartite, is_connected, is_triangle_free, join, union,
)
from bench.models import SearchRun
from bench.services import SUITES, PropertySuiteService
from bench.spectra import (
    adjacency_spectrum, check_perron_floor, least_eigenvalue, perron_vector,
    signless_laplacian_radius, signless_laplacian_spectrum, spectral_radius,
)
from bench.star_forest import StarForest, contains_star_forest, high_degree_vertices

USAGE_ERROR = 2
DOMAIN_ERROR = 1
SUITE_VIOLATION = 3

# Arité des bornes : paramètres après n
BOUND_ARITY = {'t17': ('k', 'd'), 'conj32': ('k', 'd'), 't18': ('k',), 'c19': ('k',),
               'l21': ('forest',), 't12': ('forest',)}

GRAPH_OPERATIONS = {'join': 2, 'union': 2, 'complement': 1, 'copies': 2, 'info': 1}

# Énoncé vérifié par chaque commande
SOURCES = {
    'construct': "Familles extrémales S(n,h), S⁺(n,h), F(n,k), K_{a,b} et K_{k−1} ∇ H, H (d−1)-régulier",
    'rho': "Rayon spectral ρ(G) de la matrice d'adjacence",
    'leig': "Plus petite valeur propre, minorée par −√((k−1)(n−k+1)) chez les bipartis F-libres",
    'q': "Rayon spectral de Q(G) = D(G) + A(G)",
    'spectrum': "Spectre complet de A(G) ou de Q(G)",
    'perron': "Plancher x_u ≥ 1/ρ du vecteur de Perron des bipartis extrémaux",
    'canon': "Forme canonique, égale pour deux graphes isomorphes",
    'free': "Contenance exacte d'une forêt d'étoiles",
    'bound': "Bornes sur ρ, ρ_n, q et sur le nombre d'arêtes des graphes F-libres",
    'threshold': "Seuils d'ordre exacts à partir desquels les bornes sont établies",
    'search': "Maximum exhaustif de ρ comparé à la borne et à la construction extrémale",
    'verify': "Suites de propriétés sur tous les petits graphes",
    'conjecture': "Conjecture q(G) ≤ q(F(n,k)) testée sur tous les petits graphes",
    'enumerate': "Représentants à isomorphisme près",
    'graph': "Opérations ∇, ∪, complément et copies disjointes",
}


def exact_payload(value):
    """Valeur exacte (entier ou rationnel) en chaînes, flottant tel quel"""
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return {
            'value': decimal_string(value),
            'numerator': str(value.numerator),
            'denominator': str(value.denominator),
        }
    return {'value': value}


class Command(BaseCommand):
    help = "Spectres, bornes et recherches extrémales pour les graphes sans forêt d'étoiles"

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--json', action='store_true', help="Sortie JSON (une ligne par résultat)")

        sub = parser.add_subparsers(dest='subcommand', required=True)

        p = sub.add_parser('construct', parents=[common], help="Construit une famille extrémale (graph6)")
        p.add_argument('kind', choices=CONSTRUCTION_KINDS)
        p.add_argument('params', nargs='+')

        for name, text in (('rho', "Rayon spectral ρ(G)"),
                           ('leig', "Plus petite valeur propre ρ_n(G)"),
                           ('q', "Rayon sans signe q(G)"),
                           ('perron', "Vecteur de Perron et plancher 1/ρ"),
                           ('canon', "Forme canonique et code")):
            p = sub.add_parser(name, parents=[common], help=text)
            p.add_argument('graph', help="graph6 ou fichier de lignes graph6")

        p = sub.add_parser('spectrum', parents=[common], help="Spectre complet")
        p.add_argument('graph')
        p.add_argument('--matrix', choices=['adjacency', 'signless'], default='adjacency')

        p = sub.add_parser('free', parents=[common], help="G est-il F-libre ?")
        p.add_argument('graph')
        p.add_argument('forest')

        p = sub.add_parser('bound', parents=[common], help="Évalue une borne")
        p.add_argument('kind', choices=BOUND_KINDS)
        p.add_argument('n', type=int)
        p.add_argument('params', nargs='*')

        p = sub.add_parser('threshold', parents=[common], help="Seuil d'ordre exact")
        p.add_argument('kind', choices=THRESHOLD_KINDS)
        p.add_argument('forest')

        p = sub.add_parser('search', parents=[common], help="Recherche exhaustive de ρ max")
        p.add_argument('n', type=int)
        p.add_argument('forest')
        p.add_argument('graph_class', nargs='?', default='all', choices=GRAPH_CLASSES)
        p.add_argument('--workers', type=int, default=None)
        p.add_argument('--out', default=None, help="Fichier JSON-lines des résultats")
        p.add_argument('--save', action='store_true', help="Archive la recherche en base")

        p = sub.add_parser('verify', parents=[common], help="Suite de propriétés")
        p.add_argument('suite', choices=sorted(SUITES) + ['sandwich'])
        p.add_argument('--n-max', type=int, default=None)
        p.add_argument('--forest', default=None)
        p.add_argument('--class', dest='graph_class', default='all', choices=GRAPH_CLASSES)

        p = sub.add_parser('conjecture', parents=[common], help="Table des marges q(G) − borne")
        p.add_argument('n', type=int)
        p.add_argument('forest')
        p.add_argument('graph_class', nargs='?', default='all', choices=GRAPH_CLASSES)

        p = sub.add_parser('enumerate', parents=[common], help="Représentants canoniques d'ordre n")
        p.add_argument('n', type=int)
        p.add_argument('graph_class', nargs='?', default='all', choices=GRAPH_CLASSES)
        p.add_argument('--count', action='store_true')

        p = sub.add_parser('graph', parents=[common], help="Opérations sur les graphes")
        p.add_argument('operation', choices=sorted(GRAPH_OPERATIONS))
        p.add_argument('operands', nargs='+')

        sub.add_parser('sources', parents=[common], help="Énoncé vérifié par chaque commande")

    # ===============================
    # Entrées / sorties
    # ===============================

    def handle(self, *args, **options):
        self.as_json = options.get('json', False)
        handler = getattr(self, f"cmd_{options['subcommand']}")
        try:
            handler(options)
        except BenchError as exc:
            raise CommandError(f"[{exc.code}] {exc.message}", returncode=DOMAIN_ERROR)

    def usage(self, message):
        raise CommandError(message, returncode=USAGE_ERROR)

    def emit(self, payload, line):
        if self.as_json:
            self.stdout.write(json.dumps(payload, sort_keys=True))
        else:
            self.stdout.write(line)

    def number(self, value):
        return f"{value:.{bench_setting('TABLE_DIGITS')}g}"

    def read_graphs(self, argument):
        """graph6 en ligne, ou fichier existant d'une ligne graph6 par graphe"""
        path = Path(argument)
        if not path.is_file():
            return [graph6_decode(argument)]
        graphs = []
        for number, line in enumerate(path.read_text(encoding='utf-8').splitlines(), start=1):
            if not line.strip():
                continue
            try:
                graphs.append(graph6_decode(line.strip()))
            except ParseError as exc:
                raise ParseError(f"{path} : {exc.message}", line=number)
        return graphs

    def integer(self, text, name):
        try:
            return int(text)
        except ValueError:
            self.usage(f"{name} doit être un entier : {text!r}")

    # ===============================
    # Graphes et spectres
    # ===============================

    def cmd_construct(self, options):
        g = build_construction(options['kind'], options['params'])
        self.emit({'kind': options['kind'], 'params': options['params'], 'graph6': graph6_encode(g),
                   'n': g.n, 'edges': g.edge_count}, graph6_encode(g))

    def cmd_rho(self, options):
        self._scalar(options, 'rho', spectral_radius)

    def cmd_leig(self, options):
        self._scalar(options, 'least_eigenvalue', least_eigenvalue)

    def cmd_q(self, options):
        self._scalar(options, 'q', signless_laplacian_radius)

    def _scalar(self, options, name, function):
        for g in self.read_graphs(options['graph']):
            value = function(g)
            self.emit({'graph6': graph6_encode(g), name: value}, self.number(value))

    def cmd_spectrum(self, options):
        compute = signless_laplacian_spectrum if options['matrix'] == 'signless' else adjacency_spectrum
        for g in self.read_graphs(options['graph']):
            result = compute(g)
            self.emit(
                {'graph6': graph6_encode(g), 'eigenvalues': list(result.eigenvalues), 'matrix': result.matrix,
                 'method': result.method, 'max_residual': result.max_residual, 'sweeps': result.sweeps},
                ' '.join(self.number(x) for x in result.eigenvalues),
            )

    def cmd_free(self, options):
        forest = StarForest.parse(options['forest'])
        for g in self.read_graphs(options['graph']):
            free = not contains_star_forest(g, forest)
            self.emit({'graph6': graph6_encode(g), 'forest': str(forest), 'free': free,
                       'high_degree_vertices': high_degree_vertices(g, forest)},
                      'true' if free else 'false')

    def cmd_perron(self, options):
        for g in self.read_graphs(options['graph']):
            data = perron_vector(g)
            floor = check_perron_floor(g)
            self.emit(
                {'graph6': graph6_encode(g), 'rho': data.rho, 'vector': list(data.vector),
                 'min_entry': data.min_entry, 'residual': data.residual, 'method': data.method,
                 'floor': floor.floor, 'floor_holds': floor.holds, 'floor_margin': floor.margin},
                '\n'.join([
                    f"rho        {self.number(data.rho)}",
                    f"vecteur    {' '.join(self.number(x) for x in data.vector)}",
                    f"min x_u    {self.number(data.min_entry)}",
                    f"1/rho      {self.number(floor.floor)}",
                    f"plancher   {'respecté' if floor.holds else 'VIOLÉ'} (marge {self.number(floor.margin)})",
                ]),
            )

    def cmd_canon(self, options):
        for g in self.read_graphs(options['graph']):
            canonical = graph6_encode(canonical_form(g))
            code = str(canonical_code(g))
            self.emit({'graph6': graph6_encode(g), 'canonical': canonical, 'code': code},
                      f"{canonical} {code}")

    def cmd_enumerate(self, options):
        check_graph_class(options['graph_class'])
        if options['count']:
            total = sum(1 for _ in enumerate_graphs(options['n'], options['graph_class']))
            self.emit({'n': options['n'], 'graph_class': options['graph_class'], 'count': total}, str(total))
            return
        for g in enumerate_graphs(options['n'], options['graph_class']):
            self.emit({'graph6': graph6_encode(g), 'edges': g.edge_count}, graph6_encode(g))

    def cmd_graph(self, options):
        operation, operands = options['operation'], options['operands']
        if len(operands) != GRAPH_OPERATIONS[operation]:
            self.usage(f"graph {operation} attend {GRAPH_OPERATIONS[operation]} opérande(s)")

        if operation == 'info':
            for g in self.read_graphs(operands[0]):
                facts = {
                    'graph6': graph6_encode(g), 'n': g.n, 'edges': g.edge_count, 'degrees': degrees(g),
                    'connected': is_connected(g), 'components': len(components(g)),
                    'bipartite': is_bipartite(g) is not None,
                    'triangle_free': is_triangle_free(g),
                }
                self.emit(facts, '\n'.join(f"{key:<14}{value}" for key, value in facts.items()))
            return

        if operation == 'copies':
            result = disjoint_copies(self.integer(operands[0], 'k'), graph6_decode(operands[1]))
        elif operation == 'complement':
            result = complement(graph6_decode(operands[0]))
        else:
            combine = join if operation == 'join' else union
            result = combine(graph6_decode(operands[0]), graph6_decode(operands[1]))
        self.emit({'operation': operation, 'graph6': graph6_encode(result)}, graph6_encode(result))

    # ===============================
    # Bornes et seuils
    # ===============================

    def cmd_bound(self, options):
        kind, params = options['kind'], options['params']
        expected = BOUND_ARITY[kind]
        if len(params) != len(expected):
            self.usage(f"bound {kind} attend n {' '.join(expected)}")
        values = {}
        for name, text in zip(expected, params):
            values[name] = StarForest.parse(text) if name == 'forest' else self.integer(text, name)
        report = bound_report(kind, options['n'], **values)
        self._report(report)

    def cmd_threshold(self, options):
        self._report(threshold_report(options['kind'], StarForest.parse(options['forest'])))

    def _report(self, report):
        payload = {'name': report.name, 'params': report.params, 'exact': report.exact,
                   'attained_by': report.attained_by, 'note': report.note}
        payload.update(exact_payload(report.value))
        shown = decimal_string(report.value) if isinstance(report.value, Fraction) else (
            str(report.value) if isinstance(report.value, int) else self.number(report.value))
        lines = [f"{report.name}  {shown}"]
        if report.attained_by:
            lines.append(f"atteinte par {report.attained_by}")
        if report.note:
            lines.append(report.note)
        self.emit(payload, '\n'.join(lines))

    # ===============================
    # Recherches et suites
    # ===============================

    def cmd_search(self, options):
        forest = StarForest.parse(options['forest'])
        record = extremal_search(options['n'], forest, options['graph_class'], workers=options['workers'])
        if options['out']:
            write_records([record], options['out'])
        if options['save']:
            run = SearchRun.from_record(record)
            run.save()
        line = '\n'.join([
            f"n={record.n} classe={record.graph_class} F={record.forest}",
            f"énumérés      {'-' if record.count_enumerated is None else record.count_enumerated}",
            f"F-libres      {record.count_f_free}",
            f"rho max       {self.number(record.max_rho)}",
            f"argmax        {' '.join(record.argmax)}",
            f"borne         {'-' if record.bound_value is None else self.number(record.bound_value)}"
            f"{' (applicable)' if record.bound_applicable else ''}",
            f"écart         {'-' if record.gap is None else self.number(record.gap)}",
            f"construction  {record.construction or '-'}",
        ])
        self.emit(record.as_dict(), line)

    def cmd_conjecture(self, options):
        table = test_conjecture_q(options['n'], StarForest.parse(options['forest']), options['graph_class'])
        payload = {
            'n': table.n, 'graph_class': table.graph_class, 'forest': str(table.forest), 'bound': table.bound,
            'max_margin': table.max_margin,
            'rows': [{'graph6': row.graph6, 'q': row.q, 'margin': row.margin} for row in table.rows],
        }
        lines = [f"borne {self.number(table.bound)}  marge max {self.number(table.max_margin)}"]
        lines += [f"{row.graph6:<12}{self.number(row.q):>20}{self.number(row.margin):>20}" for row in table.rows]
        self.emit(payload, '\n'.join(lines))

    def cmd_verify(self, options):
        suite = options['suite']
        kwargs = {}
        if options['n_max'] is not None:
            kwargs['n_max'] = options['n_max']
        forest = StarForest.parse(options['forest']) if options['forest'] else None

        if suite == 'sandwich':
            if forest is None:
                self.usage("verify sandwich demande --forest")
            report = PropertySuiteService.sandwich_suite(forest, options['graph_class'], **kwargs)
        else:
            if suite == 'edge':
                kwargs['graph_class'] = options['graph_class']
                if forest is not None:
                    kwargs['forests'] = [forest.degrees]
            elif forest is not None:
                self.usage(f"--forest ne s'applique pas à la suite {suite}")
            report = SUITES[suite](**kwargs)

        lines = [f"{report.name} : {report.checked} vérifications, {len(report.violations)} violations"]
        lines += [f"  ! {violation}" for violation in report.violations]
        lines += [f"  {note}" for note in report.notes]
        self.emit(report.as_dict(), '\n'.join(lines))
        if not report.ok:
            raise CommandError(f"Suite {report.name} : {len(report.violations)} violations",
                               returncode=SUITE_VIOLATION)

    def cmd_sources(self, options):
        width = max(len(name) for name in SOURCES)
        self.emit(SOURCES, '\n'.join(f"{name:<{width}}  {text}" for name, text in SOURCES.items()))

"""
Erreurs métier de l'atelier.

Chaque erreur porte un ``code`` stable : l'API le renvoie dans ses réponses
400 et la commande ``spectral`` le convertit en code de sortie 1.
"""


class BenchError(Exception):
    """Erreur de domaine (paramètres, graphes, fichiers de résultats)"""
    code = 'bench_error'

    def __init__(self, message: str = ''):
        super().__init__(message or self.__class__.__doc__)
        self.message = message or self.__class__.__doc__


class OrderTooLarge(BenchError):
    """Ordre du graphe supérieur au plafond autorisé"""
    code = 'order_too_large'


class BadEdge(BenchError):
    """Arête invalide (boucle ou extrémité hors du graphe)"""
    code = 'bad_edge'


class ParseError(BenchError):
    """Entrée texte mal formée"""
    code = 'parse_error'

    def __init__(self, message: str = '', offset: int | None = None, line: int | None = None):
        position = ''
        if offset is not None:
            position = f" (octet {offset})"
        elif line is not None:
            position = f" (ligne {line})"
        super().__init__(f"{message}{position}" if message else '')
        self.offset = offset
        self.line = line


class EmptyGraph(BenchError):
    """Graphe vide : aucune valeur propre à calculer"""
    code = 'empty_graph'


class Disconnected(BenchError):
    """Graphe non connexe : pas de vecteur de Perron positif"""
    code = 'disconnected'


class ParamOutOfRange(BenchError):
    """Paramètres hors du domaine de validité"""
    code = 'param_out_of_range'


class NoRegularGraph(BenchError):
    """Aucun graphe régulier de ce degré et de cet ordre"""
    code = 'no_regular_graph'


class NegativeDiscriminant(BenchError):
    """Discriminant négatif dans la borne"""
    code = 'negative_discriminant'


class DivisionByZeroK2(BenchError):
    """Seuil non défini pour k = 2 (dénominateur nul)"""
    code = 'division_by_zero_k2'


class EmptyClass(BenchError):
    """Aucun graphe de la classe n'évite la forêt"""
    code = 'empty_class'


class ConvergenceError(BenchError):
    """Le solveur n'a pas convergé"""
    code = 'convergence_error'


class RecordFileError(BenchError):
    """Fichier de résultats inaccessible"""
    code = 'record_file_error'

    def __init__(self, path, message: str = ''):
        super().__init__(f"{message or self.__class__.__doc__} : {path}")
        self.path = str(path)

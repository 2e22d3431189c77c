"""
Familles extrémales et évaluation des bornes.

Les bornes spectrales sont des flottants ; les seuils d'ordre sont calculés
en rationnels exacts (Fraction) car ils dépassent de loin tout n énumérable.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, Optional, Sequence, Union

from .exceptions import DivisionByZeroK2, NegativeDiscriminant, NoRegularGraph, ParamOutOfRange
from .graphs import (
    Graph, complete_graph, degrees, disjoint_copies, empty_graph, from_edges, join, union,
)
from .star_forest import StarForest, edge_bound_lemma_2_1, edge_bound_theorem_1_2

logger = logging.getLogger(__name__)

THRESHOLD_KINDS = ('thm_1_7', 'thm_3_1', 'f_value', 'thm_1_8_and_cor_1_9', 'lemma_2_2', 'lemma_2_3')
BOUND_KINDS = ('t17', 't18', 'c19', 'conj32', 'l21', 't12')


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: Dict[str, Union[int, str]]
    value: Union[float, int, Fraction]
    exact: bool = False
    attained_by: Optional[str] = None  # graph6 de la construction extrémale
    note: str = ''


# ========================
# CONSTRUCTIONS
# ========================

def make_complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ParamOutOfRange(f"K_{{{a},{b}}} : tailles négatives")
    return join(empty_graph(a), empty_graph(b))


def make_S(n: int, h: int) -> Graph:
    """S_{n,h} = K_h ∇ K̄_{n−h}"""
    if not 0 <= h <= n:
        raise ParamOutOfRange(f"S_{{n,h}} demande 0 ≤ h ≤ n (n = {n}, h = {h})")
    return join(complete_graph(h), empty_graph(n - h))


def make_S_plus(n: int, h: int) -> Graph:
    """S⁺_{n,h} = K_h ∇ (K₂ ∪ K̄_{n−h−2})"""
    if not 0 <= h <= n - 2:
        raise ParamOutOfRange(f"S⁺_{{n,h}} demande 0 ≤ h ≤ n − 2 (n = {n}, h = {h})")
    return join(complete_graph(h), union(complete_graph(2), empty_graph(n - h - 2)))


def make_F(n: int, k: int) -> Graph:
    """F_{n,k} = K_{k−1} ∇ (pK₂ ∪ K_s) avec n − k + 1 = 2p + s ; K₀ est le graphe vide"""
    if k < 1 or k - 1 > n:
        raise ParamOutOfRange(f"F_{{n,k}} demande 1 ≤ k ≤ n + 1 (n = {n}, k = {k})")
    p, s = divmod(n - k + 1, 2)
    matching = disjoint_copies(p, complete_graph(2)) if p else empty_graph(0)
    return join(complete_graph(k - 1), union(matching, complete_graph(s)))


def circulant(m: int, offsets: Sequence[int]) -> Graph:
    """Circulant sur Z_m : i ~ i ± j pour chaque décalage j"""
    return from_edges(m, [(i, (i + j) % m) for i in range(m) for j in offsets if j % m])


def make_join_regular(n: int, k: int, d: int) -> Graph:
    """
    K_{k−1} ∇ H avec H (d−1)-régulier d'ordre n − k + 1, pris circulant :
    décalages 1..⌊(d−1)/2⌋, plus m/2 quand d − 1 est impair.
    """
    if k < 2 or d < 1:
        raise ParamOutOfRange(f"Paramètres invalides (k = {k}, d = {d})")
    m = n - k + 1
    r = d - 1
    if m < 1:
        raise ParamOutOfRange(f"Ordre de H non positif (n = {n}, k = {k})")
    if r >= m or (r * m) % 2:
        raise NoRegularGraph(f"Pas de graphe {r}-régulier d'ordre {m}")
    offsets = list(range(1, r // 2 + 1))
    if r % 2:
        offsets.append(m // 2)
    h = circulant(m, offsets) if offsets else empty_graph(m)
    if any(value != r for value in degrees(h)):
        raise NoRegularGraph(f"Circulant non {r}-régulier d'ordre {m}")
    return join(complete_graph(k - 1), h)


def make_double_star(a: int, b: int) -> Graph:
    """Étoile double : centres adjacents 0 et 1, avec a et b feuilles"""
    if a < 0 or b < 0:
        raise ParamOutOfRange(f"Étoile double ({a}, {b}) : tailles négatives")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return from_edges(a + b + 2, edges)


# ========================
# BORNES SPECTRALES
# ========================

def _check_nk(n: int, k: int):
    if k < 2:
        raise ParamOutOfRange(f"Il faut k ≥ 2 (reçu {k})")
    if n < k:
        raise ParamOutOfRange(f"Il faut n ≥ k (n = {n}, k = {k})")


def rho_bound_theorem_1_7(n: int, k: int, d: int) -> float:
    """(k + d − 3 + √((k − d − 1)² + 4(k − 1)(n − k + 1))) / 2"""
    _check_nk(n, k)
    if d < 1:
        raise ParamOutOfRange(f"Il faut d ≥ 1 (reçu {d})")
    return (k + d - 3 + math.sqrt((k - d - 1) ** 2 + 4 * (k - 1) * (n - k + 1))) / 2


def rho_bound_bipartite(n: int, k: int) -> float:
    _check_nk(n, k)
    return math.sqrt((k - 1) * (n - k + 1))


def least_eig_bound(n: int, k: int) -> float:
    return -rho_bound_bipartite(n, k)


def q_bound_conjecture_3_2(n: int, k: int, d: int) -> float:
    """(n + 2k + 2d − 6 + √((n + 2k − 2d − 2)² − 8(k − 1)(k − d − 1))) / 2"""
    _check_nk(n, k)
    if d < 1:
        raise ParamOutOfRange(f"Il faut d ≥ 1 (reçu {d})")
    discriminant = (n + 2 * k - 2 * d - 2) ** 2 - 8 * (k - 1) * (k - d - 1)
    if discriminant < 0:
        raise NegativeDiscriminant(f"Discriminant {discriminant} < 0 (n = {n}, k = {k}, d = {d})")
    return (n + 2 * k + 2 * d - 6 + math.sqrt(discriminant)) / 2


# ========================
# SEUILS D'ORDRE
# ========================

def _f_value(forest: StarForest) -> Fraction:
    k, s = forest.k, forest.sum_d
    if k == 2:
        raise DivisionByZeroK2("f(k, d1..dk) a pour dénominateur k − 2, nul pour k = 2")
    numerator = k ** 2 * (s + k - 2) ** 2 * (2 * s + 5 * k - 4) ** (4 * k - 2) + 2 * (k - 2) * s
    return Fraction(numerator, k - 2)


def threshold(kind: str, forest: StarForest) -> Fraction:
    """Seuil d'ordre exact du résultat désigné par ``kind``"""
    k, s = forest.k, forest.sum_d
    if kind not in THRESHOLD_KINDS:
        raise ParamOutOfRange(f"Seuil inconnu : {kind}")
    if k < 2:
        raise ParamOutOfRange(f"Il faut k ≥ 2 (reçu {k})")

    if kind == 'thm_1_7':
        if k == 2:
            raise DivisionByZeroK2("Le seuil a pour dénominateur k − 2, nul pour k = 2")
        return Fraction((2 * s + 5 * k - 8) ** 4 * (s + k - 2) ** 4, k - 2)
    if kind == 'thm_3_1':
        return Fraction((2 * s + 5 * k - 7) ** 2 * (s + k - 2) ** 2)
    if kind == 'f_value':
        return _f_value(forest)
    if kind == 'thm_1_8_and_cor_1_9':
        return _f_value(forest) ** 2 / (4 * k - 8)
    if kind == 'lemma_2_2':
        return Fraction(forest.d_max ** 2, k - 1) + (k - 1)
    # lemma_2_3
    return Fraction((forest.d_min - 1) ** 2 + (k - 1) ** 2, k - 1)


def threshold_is_met(kind: str, forest: StarForest, n: int) -> Optional[bool]:
    """n ≥ seuil ; None quand le seuil n'est pas défini (k = 2)"""
    try:
        return n >= threshold(kind, forest)
    except DivisionByZeroK2:
        return None


def decimal_string(value: Fraction) -> str:
    """Écriture décimale : entière si exacte, sinon au moins 30 chiffres significatifs"""
    if value.denominator == 1:
        return str(value.numerator)
    with localcontext() as context:
        context.prec = max(30, len(str(value.numerator)) + 5)
        return format(Decimal(value.numerator) / Decimal(value.denominator), 'f')


# ========================
# RAPPORTS
# ========================

def bound_report(kind: str, n: int, k: Optional[int] = None, d: Optional[int] = None,
                 forest: Optional[StarForest] = None) -> BoundReport:
    """
    Évalue une borne. t17, conj32 prennent (n, k, d) ; t18, c19 prennent (n, k) ;
    l21, t12 prennent (n, forêt). Une forêt fournie fixe k et d = dk.
    """
    if kind not in BOUND_KINDS:
        raise ParamOutOfRange(f"Borne inconnue : {kind}")
    if forest is not None:
        k, d = forest.k, forest.d_min
    if kind in ('l21', 't12'):
        if forest is None:
            raise ParamOutOfRange(f"La borne {kind} demande une forêt d'étoiles")
        value = edge_bound_lemma_2_1(forest, n) if kind == 'l21' else edge_bound_theorem_1_2(forest, n)
        return BoundReport(
            name=kind, params={'n': n, 'forest': str(forest)}, value=value, exact=True,
            note="borne sur e(G) pour G F-libre",
        )
    if k is None:
        raise ParamOutOfRange(f"La borne {kind} demande k")

    if kind in ('t18', 'c19'):
        value = rho_bound_bipartite(n, k) if kind == 't18' else least_eig_bound(n, k)
        return BoundReport(
            name=kind, params={'n': n, 'k': k}, value=value,
            attained_by=str(make_complete_bipartite(k - 1, n - k + 1)),
            note="égalité pour K_{k−1,n−k+1}",
        )

    if d is None:
        raise ParamOutOfRange(f"La borne {kind} demande d")
    value = rho_bound_theorem_1_7(n, k, d) if kind == 't17' else q_bound_conjecture_3_2(n, k, d)
    try:
        attained_by, note = str(make_join_regular(n, k, d)), "égalité pour K_{k−1} ∇ H, H (d−1)-régulier"
    except NoRegularGraph:
        attained_by, note = None, "aucun H (d−1)-régulier à cet ordre : égalité inaccessible"
    return BoundReport(name=kind, params={'n': n, 'k': k, 'd': d}, value=value,
                       attained_by=attained_by, note=note)


def threshold_report(kind: str, forest: StarForest) -> BoundReport:
    try:
        value = threshold(kind, forest)
    except DivisionByZeroK2 as exc:
        logger.info("Seuil %s non défini pour %s : %s", kind, forest, exc.message)
        raise
    return BoundReport(
        name=kind, params={'forest': str(forest)}, value=value, exact=True,
        note=f"{len(str(value.numerator))} chiffres au numérateur",
    )


# ========================
# FABRIQUE
# ========================

CONSTRUCTIONS = {
    'f': (make_F, 2),
    's': (make_S, 2),
    'splus': (make_S_plus, 2),
    'kb': (make_complete_bipartite, 2),
    'joinreg': (make_join_regular, 3),
    'dstar': (make_double_star, 2),
}
CONSTRUCTION_KINDS = tuple(CONSTRUCTIONS) + ('forest',)


def build_construction(kind: str, args: Sequence[str]) -> Graph:
    """Construit une famille nommée à partir d'arguments texte"""
    if kind == 'forest':
        return StarForest.parse(','.join(args)).as_graph()
    if kind not in CONSTRUCTIONS:
        raise ParamOutOfRange(f"Construction inconnue : {kind}")
    factory, arity = CONSTRUCTIONS[kind]
    if len(args) != arity:
        raise ParamOutOfRange(f"La construction {kind} attend {arity} paramètres, {len(args)} reçus")
    try:
        values = [int(arg) for arg in args]
    except ValueError:
        raise ParamOutOfRange(f"Paramètres entiers attendus : {', '.join(args)}")
    return factory(*values)

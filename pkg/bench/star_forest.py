"""
Forêts d'étoiles F = S_{d1} ∪ ... ∪ S_{dk} : description, test de contenance
exact et bornes sur le nombre d'arêtes d'un graphe F-libre.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.flow import maximum_flow_value

from .exceptions import ParamOutOfRange, ParseError
from .graphs import Graph, degrees, empty_graph, iter_bits, join, union

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarForest:
    """Degrés des centres, triés d1 ≥ ... ≥ dk ≥ 1"""
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if not self.degrees:
            raise ParamOutOfRange("Une forêt d'étoiles compte au moins une étoile")
        if any(d < 1 for d in self.degrees):
            raise ParamOutOfRange(f"Degrés d'étoiles invalides : {self.degrees}")
        object.__setattr__(self, 'degrees', tuple(sorted(self.degrees, reverse=True)))

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def sum_d(self) -> int:
        return sum(self.degrees)

    @property
    def order(self) -> int:
        return self.sum_d + self.k

    @property
    def d_min(self) -> int:
        return self.degrees[-1]

    @property
    def d_max(self) -> int:
        return self.degrees[0]

    def __str__(self):
        return f"{self.k}:{','.join(map(str, self.degrees))}"

    @property
    def bare(self) -> str:
        return ','.join(map(str, self.degrees))

    @classmethod
    def parse(cls, text: str) -> 'StarForest':
        """Lit "k:d1,...,dk" ou "d1,...,dk" (l'ordre des degrés est libre)"""
        raw = text.strip()
        declared: Optional[int] = None
        if ':' in raw:
            head, raw = raw.split(':', 1)
            try:
                declared = int(head)
            except ValueError:
                raise ParseError(f"Nombre d'étoiles illisible : {head!r}")
        try:
            values = [int(part) for part in raw.split(',')]
        except ValueError:
            raise ParseError(f"Forêt d'étoiles illisible : {text!r}")
        if declared is not None and declared != len(values):
            raise ParseError(f"{declared} étoiles annoncées, {len(values)} degrés fournis")
        return cls(tuple(values))

    def as_graph(self) -> Graph:
        """F elle-même : chaque étoile est son centre suivi de ses feuilles"""
        result = empty_graph(0)
        for d in self.degrees:
            result = union(result, join(empty_graph(1), empty_graph(d)))
        return result


# ========================
# CONTENANCE
# ========================

def _distinct_roles(forest: StarForest) -> List[Tuple[int, ...]]:
    return sorted(set(permutations(forest.degrees)), reverse=True)


def _greedy_leaves(g: Graph, centers: Sequence[int], roles: Sequence[int], blocked: int) -> bool:
    """Affectation gloutonne des feuilles ; un succès suffit à conclure"""
    used = blocked
    for center, need in sorted(zip(centers, roles), key=lambda pair: -pair[1]):
        free = g.adj[center] & ~used
        if free.bit_count() < need:
            return False
        for _ in range(need):
            low = free & -free
            used |= low
            free ^= low
    return True


def _flow_leaves(g: Graph, centers: Sequence[int], roles: Sequence[int], blocked: int) -> bool:
    network = nx.DiGraph()
    for center, need in zip(centers, roles):
        network.add_edge('source', ('c', center), capacity=need)
        for leaf in iter_bits(g.adj[center] & ~blocked):
            network.add_edge(('c', center), ('v', leaf), capacity=1)
            network.add_edge(('v', leaf), 'sink', capacity=1)
    return maximum_flow_value(network, 'source', 'sink') == sum(roles)


def contains_star_forest(g: Graph, forest: StarForest) -> bool:
    """
    Vrai ssi g contient k étoiles disjointes de degrés d1..dk.

    On énumère les ensembles de k centres candidats puis les affectations de
    rôles compatibles avec les degrés ; les feuilles sont attribuées par flot
    maximal (capacité di par centre, 1 par feuille).
    """
    if g.n < forest.order or g.edge_count < forest.sum_d:
        return False
    ranked = sorted(degrees(g), reverse=True)
    if any(ranked[i] < d for i, d in enumerate(forest.degrees)):
        return False
    if forest.k == 1:
        return True

    candidates = sorted(
        (v for v in range(g.n) if g.degree(v) >= forest.d_min),
        key=lambda v: (-g.degree(v), v),
    )
    roles_list = _distinct_roles(forest)
    for centers in combinations(candidates, forest.k):
        blocked = sum(1 << c for c in centers)
        available = [(g.adj[c] & ~blocked).bit_count() for c in centers]
        pool = 0
        for c in centers:
            pool |= g.adj[c]
        if (pool & ~blocked).bit_count() < forest.sum_d:
            continue
        for roles in roles_list:
            if any(a < r for a, r in zip(available, roles)):
                continue
            if _greedy_leaves(g, centers, roles, blocked) or _flow_leaves(g, centers, roles, blocked):
                return True
    return False


def contains_star_forest_oracle(g: Graph, forest: StarForest) -> bool:
    """Recherche exhaustive : centres ordonnés puis sous-ensembles de feuilles"""

    def place(index: int, used: int) -> bool:
        if index == forest.k:
            return True
        need = forest.degrees[index]
        for center in range(g.n):
            if used >> center & 1:
                continue
            free = [u for u in iter_bits(g.adj[center]) if not used >> u & 1]
            for leaves in combinations(free, need):
                mask = (1 << center) | sum(1 << u for u in leaves)
                if place(index + 1, used | mask):
                    return True
        return False

    if g.n < forest.order:
        return False
    return place(0, 0)


def is_f_free(g: Graph, forest: StarForest) -> bool:
    return not contains_star_forest(g, forest)


def high_degree_vertices(g: Graph, forest: StarForest) -> List[int]:
    """C = {v : d(v) ≥ Σdi + k − 1} ; au plus k − 1 sommets si g est F-libre"""
    floor = forest.sum_d + forest.k - 1
    return [v for v in range(g.n) if g.degree(v) >= floor]


# ========================
# BORNES SUR LES ARÊTES
# ========================

def _require_two_stars(forest: StarForest, n: int):
    if forest.k < 2:
        raise ParamOutOfRange(f"Il faut au moins deux étoiles (k = {forest.k})")
    if n < forest.order:
        raise ParamOutOfRange(f"Ordre {n} inférieur à l'ordre de la forêt ({forest.order})")


def edge_bound_lemma_2_1(forest: StarForest, n: int) -> int:
    """(Σdi + 2k − 3)·n − (k − 1)(Σdi + k − 1)"""
    _require_two_stars(forest, n)
    k, s = forest.k, forest.sum_d
    return (s + 2 * k - 3) * n - (k - 1) * (s + k - 1)


def edge_bound_theorem_1_2(forest: StarForest, n: int) -> int:
    """max_i (i−1)(n−i+1) + C(i−1, 2) + ⌊(di − 1)(n − i + 1)/2⌋, avec dk ≥ 2"""
    _require_two_stars(forest, n)
    if forest.d_min < 2:
        raise ParamOutOfRange("Cette borne suppose tous les degrés ≥ 2")
    return max(
        (i - 1) * (n - i + 1) + comb(i - 1, 2) + (d - 1) * (n - i + 1) // 2
        for i, d in enumerate(forest.degrees, start=1)
    )

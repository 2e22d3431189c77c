"""
Spectres des matrices d'adjacence A(G) et sans signe Q(G) = D(G) + A(G).

Le solveur de référence est une méthode de Jacobi cyclique (rotations sur
matrice dense) ; l'itération de la puissance sert de voie rapide pour les
valeurs extrêmes et retombe sur Jacobi si elle converge mal.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .conf import bench_setting
from .exceptions import ConvergenceError, Disconnected, EmptyGraph
from .graphs import Graph, degrees, is_connected, max_degree

logger = logging.getLogger(__name__)

# Graine du vecteur de départ perturbé (valeur propre minimale, départs orthogonaux)
START_SEED = 20210817


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: Tuple[float, ...]  # ordre décroissant
    method: str
    max_residual: float
    sweeps: int = 0
    matrix: str = 'adjacency'

    @property
    def largest(self) -> float:
        return self.eigenvalues[0]

    @property
    def least(self) -> float:
        return self.eigenvalues[-1]


@dataclass(frozen=True)
class PerronData:
    rho: float
    vector: Tuple[float, ...]  # entrée maximale ramenée à 1
    min_entry: float
    residual: float
    method: str


@dataclass(frozen=True)
class PerronFloorCheck:
    holds: bool
    margin: float  # min_entry - 1/rho
    rho: float
    min_entry: float
    floor: float


# ========================
# MATRICES
# ========================

def adjacency_matrix(g: Graph) -> np.ndarray:
    return g.adjacency_matrix()


def signless_laplacian_matrix(g: Graph) -> np.ndarray:
    return g.adjacency_matrix() + np.diag(np.array(degrees(g), dtype=np.float64))


# ========================
# SOLVEURS
# ========================

def jacobi_eigen(matrix: np.ndarray, tol: Optional[float] = None,
                 max_sweeps: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Valeurs et vecteurs propres d'une matrice symétrique par rotations de
    Jacobi cycliques. Renvoie (valeurs, vecteurs en colonnes, balayages).
    """
    tol = bench_setting('JACOBI_TOLERANCE') if tol is None else tol
    max_sweeps = bench_setting('JACOBI_MAX_SWEEPS') if max_sweeps is None else max_sweeps
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps + 1):
        off = math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diag(a) ** 2))))
        if off <= tol * scale:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    raise ConvergenceError(f"Jacobi : pas de convergence en {max_sweeps} balayages (n = {n})")


def _power_iteration(matrix: np.ndarray, start: np.ndarray) -> Optional[Tuple[float, np.ndarray, int]]:
    """
    Valeur propre dominante d'une matrice symétrique à spectre positif
    dominant. Arrêt quand le quotient de Rayleigh et le vecteur sont stables
    (le vecteur converge deux fois moins vite que la valeur), confirmé par le
    résidu. None si la convergence est trop lente.
    """
    tol = bench_setting('POWER_TOLERANCE')
    max_iterations = bench_setting('POWER_MAX_ITERATIONS')
    x = start / np.linalg.norm(start)
    previous = None
    for iteration in range(1, max_iterations + 1):
        y = matrix @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return None
        value = float(x @ y)
        step = float(np.max(np.abs(y / norm - x)))
        x = y / norm
        if (previous is not None and abs(value - previous) <= tol * max(1.0, abs(value))
                and step <= 100 * tol):
            mx = matrix @ x
            value = float(x @ mx)
            residual = float(np.linalg.norm(mx - value * x))
            if residual <= math.sqrt(tol) * max(1.0, abs(value)):
                return value, x, iteration
        previous = value
    return None


def _perturbed_start(n: int) -> np.ndarray:
    return np.random.default_rng(START_SEED).standard_normal(n)


def _spectrum(matrix: np.ndarray, kind: str) -> SpectrumResult:
    values, vectors, sweeps = jacobi_eigen(matrix)
    order = np.argsort(-values, kind='stable')
    values, vectors = values[order], vectors[:, order]
    residual = float(np.max(np.abs(matrix @ vectors - vectors * values))) if len(values) else 0.0
    return SpectrumResult(
        eigenvalues=tuple(float(x) for x in values),
        method='jacobi',
        max_residual=residual,
        sweeps=sweeps,
        matrix=kind,
    )


def _require_vertices(g: Graph):
    if g.n == 0:
        raise EmptyGraph("Le graphe vide n'a pas de spectre")


# ========================
# OPÉRATIONS
# ========================

def adjacency_spectrum(g: Graph) -> SpectrumResult:
    _require_vertices(g)
    return _spectrum(adjacency_matrix(g), 'adjacency')


def signless_laplacian_spectrum(g: Graph) -> SpectrumResult:
    _require_vertices(g)
    return _spectrum(signless_laplacian_matrix(g), 'signless_laplacian')


def spectral_radius(g: Graph) -> float:
    """ρ(G) par itération de la puissance sur A + I (départ tout-un)"""
    _require_vertices(g)
    if g.edge_count == 0:
        return 0.0
    a = adjacency_matrix(g)
    found = _power_iteration(a + np.eye(g.n), np.ones(g.n))
    if found is None:
        found = _power_iteration(a + np.eye(g.n), np.ones(g.n) + 0.1 * _perturbed_start(g.n))
    if found is None:
        logger.debug("Rayon spectral : repli sur Jacobi (n = %d)", g.n)
        return adjacency_spectrum(g).largest
    _, x, _ = found
    return float(x @ a @ x)


def least_eigenvalue(g: Graph) -> float:
    """ρ_n(G) : plus grande valeur propre de cI - A avec c = Δ(G), ramenée par c - μ"""
    _require_vertices(g)
    if g.edge_count == 0:
        return 0.0
    c = float(max_degree(g))
    a = adjacency_matrix(g)
    found = _power_iteration(c * np.eye(g.n) - a, _perturbed_start(g.n))
    if found is None:
        logger.debug("Plus petite valeur propre : repli sur Jacobi (n = %d)", g.n)
        return adjacency_spectrum(g).least
    _, x, _ = found
    return float(x @ a @ x)


def signless_laplacian_radius(g: Graph) -> float:
    """q(G), plus grande valeur propre de Q = D + A"""
    _require_vertices(g)
    if g.edge_count == 0:
        return 0.0
    q = signless_laplacian_matrix(g)
    found = _power_iteration(q, np.ones(g.n))
    if found is None:
        found = _power_iteration(q, np.ones(g.n) + 0.1 * _perturbed_start(g.n))
    if found is None:
        logger.debug("Rayon sans signe : repli sur Jacobi (n = %d)", g.n)
        return signless_laplacian_spectrum(g).largest
    _, x, _ = found
    return float(x @ q @ x)


def perron_vector(g: Graph) -> PerronData:
    """Vecteur propre positif de ρ, entrée maximale égale à 1"""
    _require_vertices(g)
    if not is_connected(g):
        raise Disconnected("Le vecteur de Perron n'est défini que pour un graphe connexe")
    a = adjacency_matrix(g)
    if g.n == 1:
        return PerronData(rho=0.0, vector=(1.0,), min_entry=1.0, residual=0.0, method='trivial')

    found = _power_iteration(a + np.eye(g.n), np.ones(g.n))
    method = 'power'
    if found is None:
        values, vectors, _ = jacobi_eigen(a)
        x = np.abs(vectors[:, int(np.argmax(values))])
        method = 'jacobi'
    else:
        x = np.abs(found[1])
    x = x / np.max(x)
    rho = float(x @ a @ x / (x @ x))
    residual = float(np.max(np.abs(a @ x - rho * x)))
    return PerronData(
        rho=rho,
        vector=tuple(float(value) for value in x),
        min_entry=float(np.min(x)),
        residual=residual,
        method=method,
    )


def check_perron_floor(g: Graph) -> PerronFloorCheck:
    """Plancher x_u ≥ 1/ρ des entrées du vecteur de Perron normalisé"""
    if g.edge_count == 0:
        raise EmptyGraph("Plancher 1/ρ non défini sans arête")
    data = perron_vector(g)
    floor = 1.0 / data.rho
    margin = data.min_entry - floor
    return PerronFloorCheck(
        holds=margin >= -bench_setting('CHECK_TOLERANCE'),
        margin=margin,
        rho=data.rho,
        min_entry=data.min_entry,
        floor=floor,
    )

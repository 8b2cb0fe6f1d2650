"""Perpendicular-bisector evolutes and the spectral theory of their matrices.

The evolute keeps every normal turned by a quarter turn and maps support
numbers by ``p* = P p`` with a cyclically tridiagonal ``P`` that depends only
on the turning angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DegenerateTurning, EigensolverFailure, EvenGon, NoInvariantComplement
from .geometry import EPS_PARALLEL, Polygon, alternating_sums

EPS_ILL = 1e-6
SPEC_REL = 1e-8


def _check_theta(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size < 1:
        raise DegenerateTurning("empty turning-angle vector")
    if np.any(np.abs(np.sin(theta)) <= EPS_PARALLEL):
        raise DegenerateTurning("a turning angle is congruent to 0 mod pi")
    return theta


@dataclass(frozen=True)
class PMatrix:
    """Evolute matrix for the turning angles ``theta`` (``theta[j]`` turns line j into j+1)."""

    n: int
    theta: np.ndarray
    entries: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __matmul__(self, other):
        return self.entries @ other

    @property
    def a(self) -> np.ndarray:
        """``cot`` of the turning angle entering each line."""
        return 1.0 / np.tan(np.roll(self.theta, 1))

    @property
    def b(self) -> np.ndarray:
        return 1.0 / np.sin(np.roll(self.theta, 1))


def p_matrix(theta) -> PMatrix:
    theta = _check_theta(theta)
    n = theta.size
    cot = 1.0 / np.tan(theta)
    csc = 1.0 / np.sin(theta)
    A = np.zeros((n, n))
    idx = np.arange(n)
    # theta[i] is theta_{i+1/2}, theta[i-1] is theta_{i-1/2}
    np.add.at(A, (idx, idx), 0.5 * (np.roll(cot, 1) - cot))
    np.add.at(A, (idx, (idx + 1) % n), 0.5 * csc)
    np.add.at(A, (idx, (idx - 1) % n), -0.5 * np.roll(csc, 1))
    A.flags.writeable = False
    theta = theta.copy()
    theta.flags.writeable = False
    return PMatrix(n, theta, A)


def m_matrix(theta) -> np.ndarray:
    """Symmetric matrix taking support numbers to signed side lengths."""
    theta = _check_theta(theta)
    n = theta.size
    cot = 1.0 / np.tan(theta)
    csc = 1.0 / np.sin(theta)
    M = np.zeros((n, n))
    idx = np.arange(n)
    np.add.at(M, (idx, idx), -(np.roll(cot, 1) + cot))
    np.add.at(M, (idx, (idx + 1) % n), csc)
    np.add.at(M, (idx, (idx - 1) % n), np.roll(csc, 1))
    return M


def equiangular_p_matrix(n: int) -> np.ndarray:
    Z = np.roll(np.eye(n), 1, axis=1)
    return (Z - Z.T) / (2.0 * math.sin(2.0 * math.pi / n))


def equiangular_eigenvalues(n: int) -> np.ndarray:
    m = np.arange(n)
    return 1j * np.sin(2 * np.pi * m / n) / math.sin(2 * math.pi / n)


def p_evolute_transform(P: Polygon) -> Polygon:
    """The polygon formed by the perpendicular bisectors of the sides of ``P``."""
    A = p_matrix(P.turning_angles())
    return Polygon(P.alpha + math.pi / 2, A.entries @ P.p)


def p_evolute_power(P: Polygon, k: int) -> Polygon:
    for _ in range(k):
        P = p_evolute_transform(P)
    return P


# -- spectra ------------------------------------------------------------------

REAL_PAIR = "real-pair"
IMAGINARY_PAIR = "imaginary-pair"
COMPLEX_QUADRUPLE = "complex-quadruple"
NONGENERIC = "nongeneric"


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray
    invariant_pair_check: tuple  # (|P C + S|, |P S - C|)
    symmetry_residual: float  # Hausdorff distance between spectrum and its negation
    matching_residual: float  # optimal one-to-one matching distance, multiset version
    spectral_radius: float
    max_modulus_class: str
    ill_conditioned: bool

    @property
    def has_plus_minus_i(self) -> bool:
        tol = 1e-6 * max(1.0, self.spectral_radius)
        ev = self.eigenvalues
        return bool(np.min(np.abs(ev - 1j)) <= tol and np.min(np.abs(ev + 1j)) <= tol)


def hausdorff(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def multiset_distance(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(d)
    return float(d[r, c].max())


def classify_spectrum(ev, rel: float = 1e-6) -> str:
    """Structure of the eigenvalues of maximal modulus."""
    ev = np.asarray(ev, dtype=complex)
    rho = float(np.max(np.abs(ev)))
    if rho == 0.0:
        return NONGENERIC
    tol = rel * rho
    top = ev[np.abs(np.abs(ev) - rho) <= tol]
    if top.size == 2:
        if np.all(np.abs(top.imag) <= tol):
            return REAL_PAIR
        if np.all(np.abs(top.real) <= tol):
            return IMAGINARY_PAIR
        return NONGENERIC
    if top.size == 4:
        if np.all(np.abs(top.imag) > tol) and np.all(np.abs(top.real) > tol):
            return COMPLEX_QUADRUPLE
    return NONGENERIC


def invariant_plane(alpha) -> tuple[np.ndarray, np.ndarray]:
    alpha = np.asarray(alpha, dtype=float)
    return np.cos(alpha), np.sin(alpha)


def spectral_report(theta, alpha=None) -> SpectralReport:
    """Eigenvalues of the evolute matrix with diagnostics.

    ``alpha`` fixes the translation plane used for the invariant-pair check;
    by default the angles are rebuilt from ``theta`` starting at 0.
    """
    A = p_matrix(theta)
    try:
        ev = np.linalg.eigvals(A.entries)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    if not np.all(np.isfinite(ev)):
        raise EigensolverFailure("non-finite eigenvalues")
    if alpha is None:
        alpha = np.concatenate([[0.0], np.cumsum(A.theta[:-1])])
    C, S = invariant_plane(alpha)
    pair = (float(np.linalg.norm(A.entries @ C + S)), float(np.linalg.norm(A.entries @ S - C)))
    return SpectralReport(
        eigenvalues=ev,
        invariant_pair_check=pair,
        symmetry_residual=hausdorff(ev, -ev),
        matching_residual=multiset_distance(ev, -ev),
        spectral_radius=float(np.max(np.abs(ev))),
        max_modulus_class=classify_spectrum(ev),
        ill_conditioned=bool(np.min(np.abs(np.sin(A.theta))) < EPS_ILL),
    )


def odd_trace_residuals(theta) -> dict:
    """``|Tr P^k| / ||P||^k`` for odd ``k <= n``."""
    A = p_matrix(theta).entries
    norm = float(np.linalg.norm(A, 2))
    out = {}
    Ak = A.copy()
    A2 = A @ A
    for k in range(1, A.shape[0] + 1, 2):
        out[k] = abs(float(np.trace(Ak))) / norm**k
        Ak = Ak @ A2
    return out


def kernel_generator(alpha) -> np.ndarray:
    """``(cos B_1, ..., cos B_n)``, spanning the kernel of the evolute matrix for odd n."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.size % 2 == 0:
        raise EvenGon("the kernel generator is defined for odd n")
    _, Bj = alternating_sums(alpha)
    return np.cos(Bj)


# -- pseudo-Steiner point ---------------------------------------------------------


@dataclass(frozen=True)
class PseudoSteiner:
    """Projection onto ``span{C, S}`` along the invariant complement."""

    alpha: np.ndarray
    projector: np.ndarray  # n x n
    point_map: np.ndarray  # 2 x n; p -> (a, b)

    def __call__(self, p) -> np.ndarray:
        return self.point_map @ np.asarray(p, dtype=float)

    def of(self, P: Polygon) -> np.ndarray:
        return self(P.p)


def generalized_i_dimension(A: np.ndarray, rel: float = SPEC_REL) -> tuple[int, np.ndarray, np.ndarray]:
    """Dimension of the generalized eigenspace of ``+-i`` and an SVD of the probe matrix."""
    n = A.shape[0]
    M = A @ A + np.eye(n)
    M = M / max(np.linalg.norm(M, 2), np.finfo(float).tiny)
    G = np.linalg.matrix_power(M, n)
    U, s, _ = np.linalg.svd(G)
    if s[0] == 0.0:
        return n, U, s
    null = int(np.sum(s < rel * s[0]))
    return null, U, s


def pseudo_steiner(theta, alpha) -> PseudoSteiner:
    A = p_matrix(theta).entries
    n = A.shape[0]
    alpha = np.asarray(alpha, dtype=float)
    dim, U, s = generalized_i_dimension(A)
    if dim != 2:
        raise NoInvariantComplement(f"generalized eigenspace of +-i has dimension {dim}")
    C, S = invariant_plane(alpha)
    W = U[:, : n - 2]
    basis = np.column_stack([C, S, W])
    inv = np.linalg.inv(basis)
    point_map = inv[:2]
    projector = np.column_stack([C, S]) @ point_map
    return PseudoSteiner(alpha.copy(), projector, point_map)


def pseudo_steiner_point(P: Polygon) -> np.ndarray:
    return pseudo_steiner(P.turning_angles(), P.alpha)(P.p)

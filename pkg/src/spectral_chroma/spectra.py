"""Adjacency spectra, matrix polynomials and the derived spectral parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, is_connected

JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
GROUP_REL_TOL = 1e-8


class NumericalError(ArithmeticError):
    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message} (residual {residual:.3e})")


class DisconnectedGraphError(GraphError):
    pass


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"{g!r} is not connected")


def jacobi_eigh(a, rel_tol: float = JACOBI_REL_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all (p, q) pairs until the off-diagonal Frobenius mass drops to
    ``rel_tol * ||a||_F``.  Returns ``(eigenvalues, eigenvectors)`` with the
    eigenvalues in descending order and eigenvectors as columns.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T):
        raise ValueError("jacobi_eigh needs a square symmetric matrix")
    v = np.eye(n)
    scale = np.linalg.norm(a)
    target = rel_tol * scale
    upper = np.triu_indices(n, 1)
    off = math.sqrt(2.0 * float(np.sum(a[upper] ** 2)))
    sweeps = 0
    # one extra sweep after the target is met costs little and squares the error
    polish = 1
    while off > target or polish:
        if off <= target:
            polish -= 1
        if sweeps >= max_sweeps:
            raise NumericalError(f"Jacobi did not converge in {max_sweeps} sweeps", off)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q]
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        off = math.sqrt(2.0 * float(np.sum(a[upper] ** 2)))
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], v[:, order]


@dataclass(frozen=True)
class Spectrum:
    """Sorted adjacency spectrum of a connected graph.

    ``distinct`` lists ``(theta_j, multiplicity)`` with theta_0 > ... > theta_d;
    eigenvalues closer than the grouping tolerance are merged and represented
    by their mean.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    distinct: tuple
    perron: np.ndarray
    residual_tol: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.distinct])

    @property
    def d(self) -> int:
        return len(self.distinct) - 1

    def multiplicity(self, value: float, tol: float | None = None) -> int:
        tol = self.group_tol if tol is None else tol
        return int(np.sum(np.abs(self.eigenvalues - value) <= tol))

    @property
    def group_tol(self) -> float:
        scale = math.sqrt(float(np.sum(self.eigenvalues ** 2)))
        return GROUP_REL_TOL * max(1.0, scale)


def group_eigenvalues(eigenvalues: Sequence[float], tol: float) -> tuple:
    groups: list[list[float]] = []
    for lam in eigenvalues:
        if groups and abs(groups[-1][-1] - lam) <= tol:
            groups[-1].append(float(lam))
        else:
            groups.append([float(lam)])
    return tuple((float(np.mean(grp)), len(grp)) for grp in groups)


def eigendecompose(g: Graph, tol: float = 1e-10) -> Spectrum:
    """Full spectrum, distinct eigenvalues and Perron vector of a connected graph."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    require_connected(g)
    a = g.adjacency_matrix()
    vals, vecs = jacobi_eigh(a)
    resid = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    worst = float(resid.max()) if resid.size else 0.0
    if worst > tol:
        raise NumericalError("eigenpair residual exceeds tolerance", worst)
    perron = vecs[:, 0].copy()
    if perron[np.argmax(np.abs(perron))] < 0:
        perron = -perron
    perron /= np.linalg.norm(perron)
    if g.n > 1 and perron.min() <= 0:
        raise NumericalError("Perron vector is not strictly positive", float(perron.min()))
    group_tol = GROUP_REL_TOL * max(1.0, float(np.linalg.norm(a)))
    return Spectrum(vals, vecs, group_eigenvalues(vals, group_tol), perron, tol)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial ``a_0 + a_1 x + ... + a_k x^k``; ``coefficients[j]`` is a_j."""

    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = tuple(float(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def identity(cls) -> "Polynomial":
        return cls((0.0, 1.0))

    @property
    def k(self) -> int:
        """Degree bound (number of coefficients minus one)."""
        return len(self.coefficients) - 1

    @property
    def degree(self) -> int:
        nz = [j for j, c in enumerate(self.coefficients) if c != 0.0]
        return nz[-1] if nz else 0

    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coefficients)

    def __call__(self, x):
        acc = np.zeros_like(np.asarray(x, dtype=float)) + self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc if np.ndim(acc) else float(acc)

    def affine(self, scale: float, shift: float) -> "Polynomial":
        """``scale * p + shift``."""
        coeffs = [scale * c for c in self.coefficients]
        coeffs[0] += shift
        return Polynomial(coeffs)

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0.0:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            terms.append(f"{c:+.6g}{'*' if mono else ''}{mono}")
        return " ".join(terms) if terms else "0"


def matrix_polynomial(g: Graph, p: Polynomial) -> np.ndarray:
    """``p(A)`` by Horner's rule on matrices (integral coefficients stay exact)."""
    a = g.adjacency_matrix()
    eye = np.eye(g.n)
    out = p.coefficients[-1] * eye
    for c in reversed(p.coefficients[:-1]):
        out = out @ a + c * eye
    return out


def diagonal_powers(g: Graph, k: int) -> np.ndarray:
    """Row j holds the diagonal of ``A^j`` for j = 0..k."""
    a = g.adjacency_matrix()
    rows = [np.ones(g.n)]
    power = np.eye(g.n)
    for _ in range(k):
        power = power @ a
        rows.append(np.diag(power).copy())
    return np.array(rows)


@dataclass(frozen=True)
class SpectralParams:
    p_lambda1: float
    big_w: float
    small_w: float
    big_lambda: float
    small_lambda: float
    r_p: float
    diag: np.ndarray
    images: np.ndarray


def spectral_params(g: Graph, p: Polynomial, spec: Spectrum) -> SpectralParams:
    """W, w (max/min diagonal of p(A)), Lambda, lambda (max/min of p over the
    non-principal eigenvalues) and the Perron-weighted diagonal average R."""
    if g.n < 2:
        raise GraphError("spectral parameters need at least two vertices")
    diag = np.diag(matrix_polynomial(g, p)).copy()
    images = np.asarray(p(spec.eigenvalues), dtype=float)
    nu2 = spec.perron ** 2
    return SpectralParams(
        p_lambda1=float(images[0]),
        big_w=float(diag.max()),
        small_w=float(diag.min()),
        big_lambda=float(images[1:].max()),
        small_lambda=float(images[1:].min()),
        r_p=float(diag @ nu2 / nu2.sum()),
        diag=diag,
        images=images,
    )

"""Closed-form eigenvalue lower bounds on (distance) chromatic parameters."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .spectra import Polynomial, Spectrum, require_connected, spectral_params

SLACK = 1e-9


class BoundError(ValueError):
    pass


class HypothesisError(BoundError):
    """The polynomial violates p(lambda_1) >= Lambda(p)."""


class BoundKind(str, enum.Enum):
    HOFFMAN = "hoffman"
    CLASSIC_KAPPA = "classic-kappa"
    HOFFMAN_TYPE = "hoffman-type"
    UNIFIED_KAPPA = "unified-kappa"
    VECTOR_R = "vector-r"


@dataclass(frozen=True)
class BoundReport:
    kind: BoundKind
    raw: float
    lower_bound: int
    witness: Polynomial
    k: int
    kappa: int | None = None
    note: str | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "raw": self.raw,
            "lower_bound": self.lower_bound,
            "kappa": self.kappa,
            "k": self.k,
            "witness": list(self.witness.coefficients),
            "note": self.note,
        }


def ceil_bound(raw: float) -> int:
    """Integer bound implied by a real one; the slack keeps 5.0000000001 at 5."""
    return max(1, math.ceil(raw - SLACK))


def _scale(params) -> float:
    return max(abs(params.p_lambda1), abs(params.big_w), float(np.abs(params.images).max()),
               float(np.abs(params.diag).max()))


def _check_degree(p: Polynomial, k: int | None) -> int:
    if k is None:
        return max(p.degree, 1)
    if p.degree > k:
        raise BoundError(f"polynomial of degree {p.degree} exceeds distance parameter k={k}")
    return k


def hoffman_bound(spec: Spectrum) -> BoundReport:
    lam1, lamn = spec.lambda1, spec.lambda_min
    if lamn >= -SLACK:
        raise BoundError("Hoffman bound needs a non-empty graph (smallest eigenvalue < 0)")
    raw = 1.0 - lam1 / lamn
    return BoundReport(BoundKind.HOFFMAN, raw, ceil_bound(raw), Polynomial.identity(), 1)


def kappa_of(p: Polynomial, g: Graph, spec: Spectrum) -> int:
    """Smallest kappa >= 0 with
    ``(kappa+1) W(p) >= p(lambda_1) + (sum of the kappa smallest p(lambda_i), i >= 2)``.
    """
    require_connected(g)
    params = spectral_params(g, p, spec)
    slack = SLACK * _scale(params)
    if params.p_lambda1 < params.big_lambda - slack:
        raise HypothesisError(
            f"p(lambda_1) = {params.p_lambda1:.10g} < Lambda(p) = {params.big_lambda:.10g}"
        )
    rest = np.sort(params.images[1:])
    partial = params.p_lambda1
    for kappa in range(g.n):
        if partial <= (kappa + 1) * params.big_w + slack:
            return kappa
        if kappa < len(rest):
            partial += rest[kappa]
    return g.n - 1


def unified_kappa_bound(g: Graph, p: Polynomial, spec: Spectrum, k: int | None = None) -> BoundReport:
    k = _check_degree(p, k)
    kappa = kappa_of(p, g, spec)
    params = spectral_params(g, p, spec)
    note = None
    denom = params.big_w - params.small_lambda
    if denom > SLACK * _scale(params):
        ratio = (params.p_lambda1 - params.small_lambda) / denom
        if abs(ratio - (kappa + 1)) <= 1e-7 * max(1.0, ratio):
            tol = 1e-7 * max(1.0, _scale(params))
            mult = int(np.sum(np.abs(params.images - params.small_lambda) <= tol))
            note = f"ratio bound attains 1+kappa; multiplicity of lambda(p) in p(A) is {mult}"
    return BoundReport(BoundKind.UNIFIED_KAPPA, float(kappa + 1), kappa + 1, p, k, kappa, note)


def classic_kappa_bound(g: Graph, spec: Spectrum) -> BoundReport:
    x = Polynomial.identity()
    kappa = kappa_of(x, g, spec)
    return BoundReport(BoundKind.CLASSIC_KAPPA, float(kappa + 1), kappa + 1, x, 1, kappa)


def _ratio(num: float, denom: float, scale: float, what: str) -> float:
    if denom <= SLACK * max(scale, 1e-300):
        raise BoundError(f"degenerate denominator {what} = {denom:.3e}")
    return num / denom


def hoffman_type_bound(g: Graph, p: Polynomial, spec: Spectrum, k: int | None = None) -> BoundReport:
    """``(p(lambda_1) - lambda(p)) / (W(p) - lambda(p))``."""
    k = _check_degree(p, k)
    require_connected(g)
    params = spectral_params(g, p, spec)
    raw = _ratio(params.p_lambda1 - params.small_lambda, params.big_w - params.small_lambda,
                 _scale(params), "W(p) - lambda(p)")
    return BoundReport(BoundKind.HOFFMAN_TYPE, raw, ceil_bound(raw), p, k)


def vector_r_bound(g: Graph, p: Polynomial, spec: Spectrum, k: int | None = None) -> BoundReport:
    """``(p(lambda_1) - lambda(p)) / (R(p) - lambda(p))`` with R the Perron-weighted
    average of the diagonal of p(A)."""
    k = _check_degree(p, k)
    require_connected(g)
    params = spectral_params(g, p, spec)
    raw = _ratio(params.p_lambda1 - params.small_lambda, params.r_p - params.small_lambda,
                 _scale(params), "R(p) - lambda(p)")
    return BoundReport(BoundKind.VECTOR_R, raw, ceil_bound(raw), p, k)

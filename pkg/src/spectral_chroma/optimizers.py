"""Optimal polynomials for the eigenvalue bounds via LP and binary MILP.

Every optimiser sweeps a family of fixed-index subproblems (a vertex carrying
the largest diagonal entry of p(A), or the distinct eigenvalue attaining the
smallest image), keeps the best, and re-evaluates the winning polynomial with
the closed forms in :mod:`bounds`.  The closed-form value is what gets reported.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import (BoundKind, BoundReport, hoffman_type_bound, kappa_of,
                     unified_kappa_bound, vector_r_bound)
from .graph import Graph
from .lp import LinExpr, MilpProblem, Sense, Status, solve_bilp, solve_lp, to_lp_format
from .spectra import Polynomial, Spectrum, diagonal_powers, require_connected

log = logging.getLogger(__name__)

COEFF_BOX = 100.0
EPSILON = 1e-4
AGREE_TOL = 1e-5
MAX_K = 6
SNAP_TOL = 1e-7


class EncodingError(RuntimeError):
    """No subproblem produced a usable polynomial."""


@dataclass(frozen=True)
class KappaEncoding:
    fixed_vertex: int
    big_m: float
    epsilon: float
    coefficient_box: float
    a_vars: tuple
    e_vars: tuple
    z_vars: tuple
    t_var: str
    variant: str


@dataclass(frozen=True)
class VectorLpEncoding:
    fixed_index: int
    a_vars: tuple


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"distance parameter k must be in 1..{MAX_K}, got {k}")


def _vander(values, k: int) -> np.ndarray:
    """Row i is (1, x_i, ..., x_i^k)."""
    return np.vander(np.asarray(values, dtype=float), k + 1, increasing=True)


def _poly_expr(row, a_vars, scale: float = 1.0) -> LinExpr:
    return LinExpr({a: scale * float(c) for a, c in zip(a_vars, row)})


def _witness(assignment: dict, a_vars) -> Polynomial:
    """Coefficients from a solution, with those below the solver's resolution
    (relative to the largest) set to zero.  Such residue, e.g. an odd term of
    1e-13 on a bipartite graph, can otherwise break p(lambda_1) = p(lambda_n)."""
    coeffs = np.array([assignment[a] for a in a_vars], dtype=float)
    top = float(np.abs(coeffs).max())
    coeffs[np.abs(coeffs) <= SNAP_TOL * top] = 0.0
    return Polynomial(coeffs)


def _dump(problem: MilpProblem, dump_dir, label: str) -> None:
    if dump_dir is None:
        return
    path = Path(dump_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / f"{label}.lp").write_text(to_lp_format(problem), encoding="utf-8")


def _label(g: Graph, k: int, kind: str, index) -> str:
    name = (g.name or f"n{g.n}").replace(" ", "_")
    return f"{name}_k{k}_{kind}_{index}"


def _signature_groups(diag: np.ndarray) -> dict:
    """Vertices grouped by their column (A^j)_vv, j = 0..k.  Subproblems anchored
    at vertices of one group are identical, so one solve per group suffices."""
    groups: dict = {}
    for v in range(diag.shape[1]):
        groups.setdefault(tuple(diag[:, v].tolist()), []).append(v)
    return groups


def _agree(solver_value: float, closed_form: float, what: str, label: str) -> None:
    if abs(solver_value - closed_form) > AGREE_TOL * max(1.0, abs(closed_form)):
        log.warning("%s: solver objective %.10g disagrees with closed form %.10g (%s); "
                    "using the closed form", label, solver_value, closed_form, what)


# --- unified kappa ----------------------------------------------------------

def big_m_for(spec: Spectrum, k: int, box: float = COEFF_BOX) -> float:
    top = float(np.abs(spec.eigenvalues).max())
    return box * sum(top ** j for j in range(k + 1)) * 2.0


def encode_kappa_bilp(g: Graph, spec: Spectrum, k: int, m: int, *, box: float = COEFF_BOX,
                      epsilon: float = EPSILON, variant: str = "corrected",
                      symmetry_breaking: bool = True) -> MilpProblem:
    """Binary program maximising kappa(p) over p with p(A)_mm = 0 = W(p).

    Variables a0..ak (coefficients), e2..en (kappa-smallest indicators),
    z2..zn (indicator times p(lambda_i)) and t >= 0.  With
    ``variant="printed"`` the z-linking constraints are the literal ones, which
    do not force z_i = 0 when e_i = 0; ``"corrected"`` relaxes the lower link
    to p(lambda_i) - M(1 - e_i) <= z_i and adds z_i <= M e_i.
    ``symmetry_breaking`` orders the indicators within each repeated eigenvalue.
    """
    _check_k(k)
    require_connected(g)
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    if not 0 <= m < g.n:
        raise ValueError(f"vertex {m} out of range")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n = g.n
    big_m = big_m_for(spec, k, box)
    diag = diagonal_powers(g, k)
    vals = _vander(spec.eigenvalues, k)

    prob = MilpProblem(name=_label(g, k, "kappa", m))
    a = tuple(prob.add_variable(f"a{j}", "free", -box, box) for j in range(k + 1))
    e = tuple(prob.add_variable(f"e{i}", "binary") for i in range(2, n + 1))
    z = tuple(prob.add_variable(f"z{i}", "free", -big_m, big_m) for i in range(2, n + 1))
    t = prob.add_variable("t", "nonneg")
    p = [_poly_expr(vals[i], a) for i in range(n)]   # p[0] is p(lambda_1)
    rest = range(n - 1)                              # index r <-> lambda_{r+2}

    prob.set_objective(LinExpr({ei: 1.0 for ei in e}), Sense.MAX)
    prob.add_constraint(p[0] + LinExpr({zi: 1.0 for zi in z}) + t, "==", 0.0, "threshold")
    for r in rest:
        # t + eps <= -z_i + M(1 - e_i)
        prob.add_constraint(LinExpr({t: 1.0, z[r]: 1.0, e[r]: big_m}), "<=", big_m - epsilon,
                            f"strict_{r + 2}")
    for r in rest:
        for s in rest:
            # z_i + z_j - p(lambda_j) + M e_i <= M
            expr = LinExpr({z[r]: 1.0, e[r]: big_m}) + LinExpr({z[s]: 1.0}) - p[s + 1]
            prob.add_constraint(expr, "<=", big_m, f"order_{r + 2}_{s + 2}")
    prob.add_constraint(_poly_expr(diag[:, m], a), "==", 0.0, "w_anchor")
    for v in range(n):
        if v != m:
            prob.add_constraint(_poly_expr(diag[:, v], a), "<=", 0.0, f"w_{v}")
    for r in rest:
        if variant == "printed":
            prob.add_constraint(p[r + 1] - z[r], "<=", 0.0, f"zlow_{r + 2}")
        else:
            prob.add_constraint(p[r + 1] - z[r] + LinExpr({e[r]: big_m}), "<=", big_m,
                                f"zlow_{r + 2}")
            prob.add_constraint(LinExpr({z[r]: 1.0, e[r]: -big_m}), "<=", 0.0, f"zoff_{r + 2}")
        prob.add_constraint(LinExpr({z[r]: 1.0, e[r]: big_m}) - p[r + 1], "<=", big_m,
                            f"zhigh_{r + 2}")
        prob.add_constraint(LinExpr({z[r]: 1.0, e[r]: big_m}), ">=", 0.0, f"zneg_{r + 2}")
    for r in rest:
        # hypothesis p(lambda_1) >= p(lambda_i)
        prob.add_constraint(p[0] - p[r + 1], ">=", 0.0, f"hyp_{r + 2}")
    if symmetry_breaking:
        # equal eigenvalues are interchangeable: select the later copies first
        lam = spec.eigenvalues
        for r in range(n - 2):
            if abs(lam[r + 1] - lam[r + 2]) <= spec.group_tol:
                prob.add_constraint(LinExpr({e[r]: 1.0, e[r + 1]: -1.0}), "<=", 0.0,
                                    f"sym_{r + 2}")
    prob.meta["encoding"] = KappaEncoding(m, big_m, epsilon, box, a, e, z, t, variant)
    return prob


def _threshold_lp(g: Graph, spec: Spectrum, k: int, m: int, r: int, box: float,
                  diag: np.ndarray) -> MilpProblem:
    """max p(lambda_1) + (sum of the r smallest p(lambda_i), i >= 2) subject to
    W(p) = p(A)_mm = 0, the hypothesis and the coefficient box.

    The r-smallest sum is concave in p: it equals max r*u - sum_i mult_i s_i over
    s_i >= 0, s_i >= u - p(theta_i).
    """
    thetas = spec.thetas
    mults = [mult for _, mult in spec.distinct]
    vals = _vander(thetas, k)
    prob = MilpProblem(name=_label(g, k, f"threshold{r}", m))
    a = tuple(prob.add_variable(f"a{j}", "free", -box, box) for j in range(k + 1))
    u = prob.add_variable("u", "free")
    s = [prob.add_variable(f"s{i}", "nonneg") for i in range(1, len(thetas))]
    p = [_poly_expr(vals[i], a) for i in range(len(thetas))]
    obj = p[0] + LinExpr({u: float(r)}) - LinExpr({si: float(mults[i + 1]) for i, si in enumerate(s)})
    prob.set_objective(obj, Sense.MAX)
    prob.add_constraint(_poly_expr(diag[:, m], a), "==", 0.0, "w_anchor")
    for v in range(g.n):
        if v != m:
            prob.add_constraint(_poly_expr(diag[:, v], a), "<=", 0.0, f"w_{v}")
    for i, si in enumerate(s):
        prob.add_constraint(LinExpr({si: 1.0, u: -1.0}) + p[i + 1], ">=", 0.0, f"cut_{i + 1}")
        prob.add_constraint(p[0] - p[i + 1], ">=", 0.0, f"hyp_{i + 1}")
    prob.meta["a_vars"] = a
    return prob


def _kappa_threshold(g, spec, k, box, epsilon, dump_dir, stats):
    """Largest kappa reachable, by bisection on kappa.

    For W(p) = 0 the map c -> p(lambda_1) + S_c(p) is convex with value
    trace p(A) <= 0 at c = n - 1, so kappa(p) >= c  iff  p(lambda_1) + S_{c-1}(p) > 0.
    Each test is one LP per distinct diagonal signature; the feasible c form
    an initial segment, so bisection finds the maximum.
    """
    diag = diagonal_powers(g, k)
    groups = _signature_groups(diag)
    cache: dict = {}

    def attempt(c: int):
        best = None
        for sig, verts in groups.items():
            key = (sig, c)
            if key not in cache:
                prob = _threshold_lp(g, spec, k, verts[0], c - 1, box, diag)
                _dump(prob, dump_dir, _label(g, k, f"threshold{c - 1}", verts[0]))
                sol = solve_lp(prob)
                stats["solves"] = stats.get("solves", 0) + 1
                cache[key] = (sol, prob.meta["a_vars"])
            sol, a_vars = cache[key]
            if sol.status is Status.OPTIMAL and sol.objective_value >= epsilon:
                if best is None or sol.objective_value > best[0]:
                    best = (sol.objective_value, _witness(sol.assignment, a_vars))
        return best

    lo, hi = 0, g.n - 1      # kappa = lo is always reachable; find max feasible
    witness = None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        got = attempt(mid)
        if got is None:
            hi = mid - 1
        else:
            lo, witness = mid, got[1]
    stats["subproblems"] = g.n
    return lo, witness


def _kappa_bilp(g, spec, k, box, epsilon, dump_dir, stats, variant, node_cap, symmetry):
    diag = diagonal_powers(g, k)
    best = None
    for sig, verts in _signature_groups(diag).items():
        prob = encode_kappa_bilp(g, spec, k, verts[0], box=box, epsilon=epsilon,
                                 variant=variant, symmetry_breaking=symmetry)
        _dump(prob, dump_dir, _label(g, k, "kappa", verts[0]))
        sol = solve_bilp(prob, node_cap=node_cap)
        stats["solves"] = stats.get("solves", 0) + 1
        stats["nodes"] = stats.get("nodes", 0) + sol.nodes
        if sol.status is Status.ITER_LIMIT:
            log.warning("kappa BILP at vertex %d hit the node cap; using the incumbent", verts[0])
        if not sol.assignment:
            continue
        value = round(sol.objective_value)
        if best is None or value > best[0]:
            best = (value, _witness(sol.assignment, prob.meta["encoding"].a_vars))
    stats["subproblems"] = g.n
    if best is None:
        raise EncodingError(f"every kappa subproblem failed for {g!r}")
    return best


def optimize_unified_kappa(g: Graph, spec: Spectrum, k: int, *, method: str = "threshold",
                           variant: str = "corrected", box: float = COEFF_BOX,
                           epsilon: float = EPSILON, node_cap: int = 1_000_000,
                           symmetry_breaking: bool = True,
                           dump_dir=None, stats: dict | None = None) -> BoundReport:
    """Best unified kappa bound over polynomials of degree <= k.

    ``method="bilp"`` solves one binary program per anchor vertex;
    ``method="threshold"`` answers the same question with a bisection over LPs
    and is far faster on 15-20 vertex graphs.  Either way the witness is
    re-checked with :func:`bounds.kappa_of` and that value is reported.
    """
    _check_k(k)
    require_connected(g)
    stats = {} if stats is None else stats
    if method == "threshold":
        solver_kappa, witness = _kappa_threshold(g, spec, k, box, epsilon, dump_dir, stats)
    elif method == "bilp":
        solver_kappa, witness = _kappa_bilp(g, spec, k, box, epsilon, dump_dir, stats,
                                            variant, node_cap, symmetry_breaking)
    else:
        raise ValueError(f"unknown method {method!r}")
    if witness is None:
        # kappa = 0 only; any polynomial meeting the hypothesis witnesses it
        witness = Polynomial.identity()
    report = unified_kappa_bound(g, witness, spec, k)
    if report.kappa != solver_kappa:
        log.warning("%s: solver kappa %d, closed-form kappa %d; reporting the closed form",
                    _label(g, k, "kappa", "best"), solver_kappa, report.kappa)
    stats["solver_kappa"] = solver_kappa
    return report


# --- ratio bounds -----------------------------------------------------------

def encode_vector_lp(g: Graph, spec: Spectrum, k: int, m_prime: int) -> MilpProblem:
    """LP over a0..ak: max p(lambda_1) - p(theta_m') with R(p) - p(theta_m') = 1
    and p(theta_i) >= p(theta_m') for every non-principal distinct eigenvalue."""
    _check_k(k)
    require_connected(g)
    if not 1 <= m_prime <= spec.d:
        raise ValueError(f"m' must lie in 1..{spec.d}, got {m_prime}")
    nu = spec.perron
    if abs(float(nu @ nu) - 1.0) > 1e-9:
        raise ValueError("Perron vector must have unit norm")
    diag = diagonal_powers(g, k)
    r_row = diag @ (nu ** 2)
    vals = _vander(spec.thetas, k)
    prob = MilpProblem(name=_label(g, k, "vector", m_prime))
    a = tuple(prob.add_variable(f"a{j}", "free") for j in range(k + 1))
    low = _poly_expr(vals[m_prime], a)
    prob.set_objective(_poly_expr(vals[0], a) - low, Sense.MAX)
    prob.add_constraint(_poly_expr(r_row, a) - low, "==", 1.0, "denominator")
    for i in range(1, spec.d + 1):
        if i != m_prime:
            prob.add_constraint(_poly_expr(vals[i], a) - low, ">=", 0.0, f"min_{i}")
    prob.meta["encoding"] = VectorLpEncoding(m_prime, a)
    return prob


def _hoffman_type_lp(g: Graph, spec: Spectrum, k: int, m: int, m_prime: int,
                     diag: np.ndarray, others) -> MilpProblem:
    vals = _vander(spec.thetas, k)
    prob = MilpProblem(name=_label(g, k, "hoffman_type", f"{m}_{m_prime}"))
    a = tuple(prob.add_variable(f"a{j}", "free") for j in range(k + 1))
    low = _poly_expr(vals[m_prime], a)
    top = _poly_expr(diag[:, m], a)
    prob.set_objective(_poly_expr(vals[0], a) - low, Sense.MAX)
    prob.add_constraint(top - low, "==", 1.0, "denominator")
    for v in others:
        prob.add_constraint(_poly_expr(diag[:, v], a) - top, "<=", 0.0, f"w_{v}")
    for i in range(1, spec.d + 1):
        if i != m_prime:
            prob.add_constraint(_poly_expr(vals[i], a) - low, ">=", 0.0, f"min_{i}")
    prob.meta["a_vars"] = a
    return prob


def _best_ratio(candidates, closed_form, g, k, kind):
    best = None
    for label, sol, a_vars in candidates:
        if sol.status is not Status.OPTIMAL:
            continue
        p = _witness(sol.assignment, a_vars)
        try:
            report = closed_form(p)
        except ValueError:
            continue
        _agree(sol.objective_value, report.raw, kind, label)
        if best is None or report.raw > best.raw + 1e-12:
            best = report
    if best is None:
        raise EncodingError(f"every {kind} subproblem was degenerate for {g!r}")
    return best


def optimize_vector_r(g: Graph, spec: Spectrum, k: int, *, dump_dir=None,
                      stats: dict | None = None) -> BoundReport:
    _check_k(k)
    require_connected(g)
    stats = {} if stats is None else stats
    cands = []
    for mp in range(1, spec.d + 1):
        prob = encode_vector_lp(g, spec, k, mp)
        _dump(prob, dump_dir, prob.name)
        cands.append((prob.name, solve_lp(prob), prob.meta["encoding"].a_vars))
    stats["subproblems"] = stats["solves"] = spec.d
    return _best_ratio(cands, lambda p: vector_r_bound(g, p, spec, k), g, k, "vector-r")


def optimize_hoffman_type(g: Graph, spec: Spectrum, k: int, *, dump_dir=None,
                          stats: dict | None = None) -> BoundReport:
    _check_k(k)
    require_connected(g)
    stats = {} if stats is None else stats
    diag = diagonal_powers(g, k)
    groups = _signature_groups(diag)
    reps = [verts[0] for verts in groups.values()]
    cands = []
    for m in reps:
        others = [v for v in reps if v != m]
        for mp in range(1, spec.d + 1):
            prob = _hoffman_type_lp(g, spec, k, m, mp, diag, others)
            _dump(prob, dump_dir, prob.name)
            cands.append((prob.name, solve_lp(prob), prob.meta["a_vars"]))
    stats["subproblems"] = g.n * spec.d
    stats["solves"] = len(cands)
    return _best_ratio(cands, lambda p: hoffman_type_bound(g, p, spec, k), g, k, "hoffman-type")


def optimize(kind: BoundKind | str, g: Graph, spec: Spectrum, k: int, **kw) -> BoundReport:
    kind = BoundKind(kind)
    if kind is BoundKind.HOFFMAN_TYPE:
        return optimize_hoffman_type(g, spec, k, **kw)
    if kind is BoundKind.VECTOR_R:
        return optimize_vector_r(g, spec, k, **kw)
    if kind is BoundKind.UNIFIED_KAPPA:
        return optimize_unified_kappa(g, spec, k, **kw)
    raise ValueError(f"bound {kind.value!r} has no optimiser; it takes a fixed polynomial")

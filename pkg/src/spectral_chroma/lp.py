"""A small self-contained LP / binary MILP solver.

Two-phase primal simplex on a dense tableau with Bland's anti-cycling rule,
and best-first branch-and-bound over binary variables on top of it.  Sized for
problems with a few hundred rows and columns.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

FEAS_TOL = 1e-7
INT_TOL = 1e-6
PIVOT_TOL = 1e-9
MAX_PIVOTS = 50_000
MAX_NODES = 1_000_000


class LPError(ValueError):
    pass


class VarKind(str, enum.Enum):
    FREE = "free"
    NONNEG = "nonneg"
    BINARY = "binary"


class Sense(str, enum.Enum):
    MAX = "max"
    MIN = "min"


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITER_LIMIT = "iter_limit"


class LinExpr:
    """Sparse linear expression ``sum(coef * var) + constant``."""

    __slots__ = ("terms", "constant")

    def __init__(self, terms: Mapping[str, float] | Iterable | None = None, constant: float = 0.0):
        self.terms: dict[str, float] = {}
        self.constant = float(constant)
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for var, coef in items:
            self.add_term(var, coef)

    def add_term(self, var: str, coef: float) -> "LinExpr":
        coef = float(coef)
        new = self.terms.get(var, 0.0) + coef
        if new == 0.0:
            self.terms.pop(var, None)
        else:
            self.terms[var] = new
        return self

    def copy(self) -> "LinExpr":
        out = LinExpr(constant=self.constant)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        out = self.copy()
        if isinstance(other, LinExpr):
            for v, c in other.terms.items():
                out.add_term(v, c)
            out.constant += other.constant
        elif isinstance(other, str):
            out.add_term(other, 1.0)
        else:
            out.constant += float(other)
        return out

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        if isinstance(other, str):
            other = LinExpr({other: 1.0})
        return self + (-other if isinstance(other, LinExpr) else -float(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        scalar = float(scalar)
        out = LinExpr(constant=self.constant * scalar)
        out.terms = {v: c * scalar for v, c in self.terms.items() if c * scalar != 0.0}
        return out

    __rmul__ = __mul__

    def value(self, assignment: Mapping[str, float]) -> float:
        return self.constant + sum(c * assignment[v] for v, c in self.terms.items())

    def __repr__(self) -> str:
        body = " + ".join(f"{c:g}*{v}" for v, c in self.terms.items()) or "0"
        return f"LinExpr({body} + {self.constant:g})"


@dataclass
class Variable:
    name: str
    kind: VarKind
    lower: float
    upper: float


@dataclass
class Constraint:
    expr: LinExpr
    rel: str
    rhs: float
    name: str


@dataclass
class MilpProblem:
    """Linear objective and constraints over free, non-negative and binary variables."""

    variables: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)
    objective: LinExpr = field(default_factory=LinExpr)
    sense: Sense = Sense.MAX
    name: str = "problem"
    meta: dict = field(default_factory=dict)

    def add_variable(self, name: str, kind: VarKind | str = VarKind.FREE,
                     lower: float | None = None, upper: float | None = None) -> str:
        kind = VarKind(kind)
        if name in self.variables:
            raise LPError(f"variable {name!r} declared twice")
        if kind is VarKind.BINARY:
            lo, hi = 0.0, 1.0
        elif kind is VarKind.NONNEG:
            lo = 0.0 if lower is None else max(0.0, float(lower))
            hi = math.inf if upper is None else float(upper)
        else:
            lo = -math.inf if lower is None else float(lower)
            hi = math.inf if upper is None else float(upper)
        if lo > hi:
            raise LPError(f"empty box for {name!r}: [{lo}, {hi}]")
        self.variables[name] = Variable(name, kind, lo, hi)
        return name

    def add_constraint(self, expr: LinExpr, rel: str, rhs: float = 0.0, name: str | None = None) -> None:
        if rel not in ("<=", ">=", "=="):
            raise LPError(f"unknown relation {rel!r}")
        for v in expr.terms:
            if v not in self.variables:
                raise LPError(f"constraint references undeclared variable {v!r}")
        # move the expression's constant to the right-hand side
        body = expr.copy()
        rhs = float(rhs) - body.constant
        body.constant = 0.0
        self.constraints.append(Constraint(body, rel, rhs, name or f"c{len(self.constraints)}"))

    def set_objective(self, expr: LinExpr, sense: Sense | str = Sense.MAX) -> None:
        for v in expr.terms:
            if v not in self.variables:
                raise LPError(f"objective references undeclared variable {v!r}")
        self.objective = expr.copy()
        self.sense = Sense(sense)

    @property
    def binaries(self) -> list[str]:
        return [v.name for v in self.variables.values() if v.kind is VarKind.BINARY]

    def violation(self, assignment: Mapping[str, float]) -> float:
        """Largest constraint or bound violation of an assignment."""
        worst = 0.0
        for v in self.variables.values():
            x = assignment[v.name]
            worst = max(worst, v.lower - x, x - v.upper)
        for c in self.constraints:
            lhs = c.expr.value(assignment)
            if c.rel == "<=":
                worst = max(worst, lhs - c.rhs)
            elif c.rel == ">=":
                worst = max(worst, c.rhs - lhs)
            else:
                worst = max(worst, abs(lhs - c.rhs))
        return worst


@dataclass
class MilpSolution:
    status: Status
    objective_value: float = math.nan
    assignment: dict = field(default_factory=dict)
    pivots: int = 0
    nodes: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


# --- simplex core -----------------------------------------------------------

def _pivot(tab: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factor = tab[:, col].copy()
    factor[row] = 0.0
    tab -= np.outer(factor, tab[row])


class _Tableau:
    """Dense tableau over ``A y = b, y >= 0`` that can be rebuilt from the
    original data (``B^-1 [A | b]``) to shed accumulated rounding error."""

    REFACTOR_EVERY = 50

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        self.a, self.b = a, b
        self.basis = basis
        self.cost = np.zeros(a.shape[1])
        self.tab = np.zeros((a.shape[0] + 1, a.shape[1] + 1))
        self.tab[:-1, :-1] = a
        self.tab[:-1, -1] = b
        self.pivots = 0

    def set_cost(self, cost: np.ndarray) -> None:
        self.cost = cost
        self._price()

    def _price(self) -> None:
        tab = self.tab
        tab[-1, :-1] = self.cost
        tab[-1, -1] = 0.0
        for i, bcol in enumerate(self.basis):
            if tab[-1, bcol] != 0.0:
                tab[-1, :] -= tab[-1, bcol] * tab[i, :]

    def refactor(self) -> None:
        try:
            binv = np.linalg.inv(self.a[:, self.basis])
        except np.linalg.LinAlgError:
            return
        self.tab[:-1, :-1] = binv @ self.a
        self.tab[:-1, -1] = binv @ self.b
        for i, bcol in enumerate(self.basis):
            self.tab[:-1, bcol] = 0.0
            self.tab[i, bcol] = 1.0
        self._price()

    def pivot(self, row: int, col: int) -> None:
        _pivot(self.tab, row, col)
        self.basis[row] = col
        self.pivots += 1
        if self.pivots % self.REFACTOR_EVERY == 0:
            self.refactor()

    def run(self, ncols: int) -> Status:
        """Minimise the cost over the first ``ncols`` columns.

        Bland's rule: enter the lowest-index column with negative reduced cost;
        leave on the minimum ratio, ties to the lowest basic variable index.
        """
        tab = self.tab
        m = tab.shape[0] - 1
        clean = False
        while True:
            entering = np.flatnonzero(tab[-1, :ncols] < -PIVOT_TOL)
            if entering.size == 0:
                if clean:
                    return Status.OPTIMAL
                self.refactor()
                clean = True
                continue
            if self.pivots >= MAX_PIVOTS:
                return Status.ITER_LIMIT
            col = int(entering[0])
            column = tab[:m, col]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                return Status.UNBOUNDED
            rhs = np.maximum(tab[rows, -1], 0.0)
            ratios = rhs / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            row = int(min(ties, key=lambda r: self.basis[r]))
            self.pivot(row, col)
            clean = False

    def drop(self, keep_rows: np.ndarray, ncols: int) -> None:
        self.a = self.a[keep_rows][:, :ncols]
        self.b = self.b[keep_rows]
        self.basis = [b for b, k in zip(self.basis, keep_rows) if k]
        rows = np.vstack([self.tab[:-1][keep_rows], self.tab[-1:]])
        self.tab = np.hstack([rows[:, :ncols], rows[:, -1:]])
        self.cost = self.cost[:ncols]


@dataclass
class _Column:
    var: str
    sign: float   # x = offset + sign * column value
    offset: float


def _standardise(problem: MilpProblem, lower: Mapping[str, float], upper: Mapping[str, float]):
    """Map the problem onto ``min c.y, A y (rel) b, y >= 0``.

    Returns (columns, rows, cost, cost_const, substitution) where ``substitution``
    maps every variable to a list of (column index, sign) plus a constant.
    """
    columns: list[_Column] = []
    subst: dict[str, tuple[list, float]] = {}
    extra_rows = []
    for v in problem.variables.values():
        lo, hi = lower.get(v.name, v.lower), upper.get(v.name, v.upper)
        if lo > hi + FEAS_TOL:
            return None
        if math.isfinite(lo) and math.isfinite(hi) and hi - lo <= 0.0:
            subst[v.name] = ([], lo)
        elif math.isfinite(lo):
            columns.append(_Column(v.name, 1.0, lo))
            subst[v.name] = ([(len(columns) - 1, 1.0)], lo)
            if math.isfinite(hi):
                extra_rows.append(({len(columns) - 1: 1.0}, "<=", hi - lo))
        elif math.isfinite(hi):
            columns.append(_Column(v.name, -1.0, hi))
            subst[v.name] = ([(len(columns) - 1, -1.0)], hi)
        else:
            columns.append(_Column(v.name, 1.0, 0.0))
            columns.append(_Column(v.name, -1.0, 0.0))
            subst[v.name] = ([(len(columns) - 2, 1.0), (len(columns) - 1, -1.0)], 0.0)

    def lower_expr(expr: LinExpr):
        coefs: dict[int, float] = {}
        const = expr.constant
        for var, c in expr.terms.items():
            cols, off = subst[var]
            const += c * off
            for j, s in cols:
                coefs[j] = coefs.get(j, 0.0) + c * s
        return coefs, const

    rows = []
    for con in problem.constraints:
        coefs, const = lower_expr(con.expr)
        rows.append((coefs, con.rel, con.rhs - const))
    rows.extend(extra_rows)
    obj, obj_const = lower_expr(problem.objective)
    sign = -1.0 if problem.sense is Sense.MAX else 1.0
    cost = np.zeros(len(columns))
    for j, c in obj.items():
        cost[j] = sign * c
    return columns, rows, cost, sign * obj_const, subst


def solve_lp(problem: MilpProblem, lower: Mapping[str, float] | None = None,
             upper: Mapping[str, float] | None = None, relax: bool = False) -> MilpSolution:
    """Solve the LP; binary variables are only allowed with ``relax=True``
    (then they range over [0, 1]).  ``lower``/``upper`` override variable boxes."""
    if problem.binaries and not relax:
        raise LPError("solve_lp got binary variables; use solve_bilp")
    lower, upper = dict(lower or {}), dict(upper or {})
    std = _standardise(problem, lower, upper)
    if std is None:
        return MilpSolution(Status.INFEASIBLE)
    columns, rows, cost, cost_const, subst = std
    nvar = len(columns)

    # constant rows (no live columns) are checked directly
    live = []
    for coefs, rel, b in rows:
        coefs = {j: c for j, c in coefs.items() if c != 0.0}
        if not coefs:
            bad = (rel == "<=" and b < -FEAS_TOL) or (rel == ">=" and b > FEAS_TOL) \
                or (rel == "==" and abs(b) > FEAS_TOL)
            if bad:
                return MilpSolution(Status.INFEASIBLE)
            continue
        if b < 0:
            coefs = {j: -c for j, c in coefs.items()}
            b = -b
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        live.append((coefs, rel, b))

    m = len(live)
    n_slack = sum(1 for _, rel, _ in live if rel != "==")
    n_art = sum(1 for _, rel, _ in live if rel != "<=")
    ncols = nvar + n_slack + n_art
    a = np.zeros((m, ncols))
    b = np.zeros(m)
    basis = [0] * m
    s_idx, a_idx = nvar, nvar + n_slack
    for i, (coefs, rel, rhs) in enumerate(live):
        # equilibrate rows so big-M rows and unit rows share one scale
        scale = max(abs(c) for c in coefs.values())
        for j, c in coefs.items():
            a[i, j] = c / scale
        b[i] = rhs / scale
        if rel == "<=":
            a[i, s_idx] = 1.0
            basis[i] = s_idx
            s_idx += 1
        else:
            if rel == ">=":
                a[i, s_idx] = -1.0
                s_idx += 1
            a[i, a_idx] = 1.0
            basis[i] = a_idx
            a_idx += 1

    tbl = _Tableau(a, b, basis)
    first_art = nvar + n_slack
    if n_art:
        # phase 1: minimise the sum of artificials
        phase1 = np.zeros(ncols)
        phase1[first_art:] = 1.0
        tbl.set_cost(phase1)
        status = tbl.run(ncols)
        if status is Status.ITER_LIMIT:
            return MilpSolution(Status.ITER_LIMIT, pivots=tbl.pivots)
        # rows are equilibrated, so an absolute threshold is a relative one per row
        if -tbl.tab[-1, -1] > FEAS_TOL:
            return MilpSolution(Status.INFEASIBLE, pivots=tbl.pivots)
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if tbl.basis[i] >= first_art:
                row = np.abs(tbl.tab[i, :first_art])
                j = int(np.argmax(row)) if row.size else -1
                if j >= 0 and row[j] > PIVOT_TOL:
                    _pivot(tbl.tab, i, j)
                    tbl.basis[i] = j
                else:
                    keep[i] = False
        tbl.drop(keep, first_art)
        ncols = first_art

    # phase 2
    full_cost = np.zeros(ncols)
    full_cost[:nvar] = cost
    tbl.set_cost(full_cost)
    status = tbl.run(ncols)
    pivots = tbl.pivots
    if status is not Status.OPTIMAL:
        return MilpSolution(status, pivots=pivots)
    tab, basis = tbl.tab, tbl.basis

    y = np.zeros(ncols)
    for i, bcol in enumerate(basis):
        y[bcol] = tab[i, -1]
    assignment = {}
    for name, (cols, off) in subst.items():
        assignment[name] = float(off + sum(s * y[j] for j, s in cols))
    value = float(problem.objective.value(assignment))
    return MilpSolution(Status.OPTIMAL, value, assignment, pivots=pivots)


# --- branch and bound ------------------------------------------------------

def _integral_objective(problem: MilpProblem) -> bool:
    obj = problem.objective
    if obj.constant != round(obj.constant):
        return False
    for v, c in obj.terms.items():
        if problem.variables[v].kind is not VarKind.BINARY or c != round(c):
            return False
    return True


def solve_bilp(problem: MilpProblem, node_cap: int = MAX_NODES) -> MilpSolution:
    """Best-first branch-and-bound over the binary variables.

    Each node solves the LP relaxation with some binaries fixed; branching is on
    the most fractional binary (ties to the earliest declared).  When the
    objective is an integer combination of binaries, bounds are floored.
    """
    binaries = problem.binaries
    maximise = problem.sense is Sense.MAX
    integral = _integral_objective(problem)
    order = {name: i for i, name in enumerate(binaries)}

    def key(bound: float) -> float:
        return -bound if maximise else bound

    def better(a: float, b: float) -> bool:
        return a > b + FEAS_TOL if maximise else a < b - FEAS_TOL

    def prunable(bound: float, incumbent: float) -> bool:
        if integral:
            bound = math.floor(bound + INT_TOL) if maximise else math.ceil(bound - INT_TOL)
        return not better(bound, incumbent)

    counter = itertools.count()
    root = solve_lp(problem, relax=True)
    pivots, nodes = root.pivots, 1
    if root.status is Status.ITER_LIMIT:
        return MilpSolution(Status.ITER_LIMIT, pivots=pivots, nodes=nodes)
    if root.status is not Status.OPTIMAL:
        return MilpSolution(root.status, pivots=pivots, nodes=nodes)

    best: MilpSolution | None = None
    heap = [(key(root.objective_value), next(counter), {}, root)]
    while heap:
        _, _, fixed, sol = heapq.heappop(heap)
        if best is not None and prunable(sol.objective_value, best.objective_value):
            continue
        frac = [(abs(sol.assignment[b] - 0.5), order[b], b) for b in binaries
                if b not in fixed and min(sol.assignment[b], 1.0 - sol.assignment[b]) > INT_TOL]
        if frac:
            _, _, var = min(frac)
        else:
            # Near-integral binaries can hide big-M violations (M * 1e-6 may
            # exceed a strictness margin), so re-solve with them fixed exactly.
            unfixed = [b for b in binaries if b not in fixed]
            exact = sol
            if unfixed:
                rounded = {**fixed, **{b: float(round(sol.assignment[b])) for b in unfixed}}
                exact = solve_lp(problem, lower=rounded, upper=rounded, relax=True)
                nodes += 1
                pivots += exact.pivots
            if exact.status is Status.OPTIMAL:
                if best is None or better(exact.objective_value, best.objective_value):
                    best = MilpSolution(Status.OPTIMAL, exact.objective_value, exact.assignment)
                continue
            var = max(unfixed, key=lambda b: (min(sol.assignment[b], 1.0 - sol.assignment[b]),
                                              -order[b]))
        for val in (1.0, 0.0):
            if nodes >= node_cap:
                out = best or MilpSolution(Status.ITER_LIMIT)
                return MilpSolution(Status.ITER_LIMIT, out.objective_value, out.assignment,
                                    pivots, nodes)
            child = {**fixed, var: val}
            res = solve_lp(problem, lower=child, upper=child, relax=True)
            nodes += 1
            pivots += res.pivots
            if res.status is Status.OPTIMAL:
                if best is None or not prunable(res.objective_value, best.objective_value):
                    heapq.heappush(heap, (key(res.objective_value), next(counter), child, res))
            elif res.status is Status.UNBOUNDED:
                return MilpSolution(Status.UNBOUNDED, pivots=pivots, nodes=nodes)
    if best is None:
        return MilpSolution(Status.INFEASIBLE, pivots=pivots, nodes=nodes)
    best.pivots, best.nodes = pivots, nodes
    return best


# --- LP text format ---------------------------------------------------------

def _fmt_expr(expr: LinExpr) -> str:
    parts = []
    for v, c in expr.terms.items():
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c):.17g} {v}")
    text = " ".join(parts) or "0"
    return text[2:] if text.startswith("+ ") else text


def to_lp_format(problem: MilpProblem) -> str:
    """CPLEX-style LP text for cross-checking with external solvers."""
    lines = [f"\\ {problem.name}", "Maximize" if problem.sense is Sense.MAX else "Minimize"]
    obj = _fmt_expr(problem.objective)
    if problem.objective.constant:
        obj += f" + {problem.objective.constant:.17g} __const"
    lines.append(f" obj: {obj}")
    lines.append("Subject To")
    rel_txt = {"<=": "<=", ">=": ">=", "==": "="}
    for c in problem.constraints:
        lines.append(f" {c.name}: {_fmt_expr(c.expr)} {rel_txt[c.rel]} {c.rhs:.17g}")
    if problem.objective.constant:
        lines.append(" __fix_const: __const = 1")
    lines.append("Bounds")
    for v in problem.variables.values():
        if v.kind is VarKind.BINARY:
            continue
        if math.isinf(v.lower) and math.isinf(v.upper):
            lines.append(f" {v.name} free")
        else:
            lo = "-inf" if math.isinf(v.lower) else f"{v.lower:.17g}"
            hi = "+inf" if math.isinf(v.upper) else f"{v.upper:.17g}"
            lines.append(f" {lo} <= {v.name} <= {hi}")
    if problem.binaries:
        lines.append("Binary")
        lines.extend(f" {b}" for b in problem.binaries)
    lines.append("End")
    return "\n".join(lines) + "\n"

import itertools
import math

import numpy as np
import pytest
from scipy.optimize import linprog

from spectral_chroma.lp import (LinExpr, LPError, MilpProblem, Sense, Status, VarKind,
                                solve_bilp, solve_lp, to_lp_format)


def lp_from_arrays(c, a, b, rels, kinds, box=None, sense="max"):
    prob = MilpProblem()
    names = []
    for j, kind in enumerate(kinds):
        lo, hi = (None, None) if box is None else (-box if kind == "free" else 0.0, box)
        names.append(prob.add_variable(f"x{j}", kind, lo, hi))
    for row, rhs, rel in zip(a, b, rels):
        prob.add_constraint(LinExpr(zip(names, row)), rel, rhs)
    prob.set_objective(LinExpr(zip(names, c)), sense)
    return prob, names


def vertex_enumeration(c, a, b, rels, box):
    """Max c.x over {a x rel b, 0 <= x <= box} by trying every basis."""
    n = len(c)
    rows = [(np.asarray(r, float), float(v), rel) for r, v, rel in zip(a, b, rels)]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1
        rows += [(e, 0.0, ">="), (e, float(box), "<=")]
    best = -math.inf
    for idx in itertools.combinations(range(len(rows)), n):
        m = np.array([rows[i][0] for i in idx])
        if abs(np.linalg.det(m)) < 1e-10:
            continue
        x = np.linalg.solve(m, np.array([rows[i][1] for i in idx]))
        ok = all((r @ x <= v + 1e-9) if rel == "<=" else (r @ x >= v - 1e-9) if rel == ">="
                 else abs(r @ x - v) <= 1e-9 for r, v, rel in rows)
        if ok:
            best = max(best, float(np.asarray(c) @ x))
    return best


def test_one_variable():
    prob, _ = lp_from_arrays([1], [[1]], [3], ["<="], ["nonneg"])
    sol = solve_lp(prob)
    assert sol.status is Status.OPTIMAL and math.isclose(sol.objective_value, 3)


def test_two_variable_example():
    prob, _ = lp_from_arrays([1, 1], [[1, 2], [3, 1]], [4, 6], ["<=", "<="], ["nonneg"] * 2)
    sol = solve_lp(prob)
    assert math.isclose(sol.objective_value, 2.8, rel_tol=1e-12)
    assert math.isclose(sol.assignment["x0"], 1.6) and math.isclose(sol.assignment["x1"], 1.2)


def test_infeasible_and_unbounded():
    prob, _ = lp_from_arrays([1], [[1], [1]], [5, 3], [">=", "<="], ["nonneg"])
    assert solve_lp(prob).status is Status.INFEASIBLE
    prob, _ = lp_from_arrays([1, 1], [[1, -1]], [1], ["<="], ["nonneg"] * 2)
    assert solve_lp(prob).status is Status.UNBOUNDED


def test_free_variables_and_min():
    # min |shifted| style: min x s.t. x >= -4, x free
    prob, _ = lp_from_arrays([1], [[1]], [-4], [">="], ["free"], sense="min")
    sol = solve_lp(prob)
    assert math.isclose(sol.objective_value, -4)


def test_equality_and_constant_terms():
    prob = MilpProblem()
    x, y = prob.add_variable("x", "nonneg"), prob.add_variable("y", "free", -3, 3)
    prob.add_constraint(LinExpr({x: 1, y: 1}, constant=2), "==", 5)
    prob.set_objective(LinExpr({x: 1, y: -1}, constant=10))
    sol = solve_lp(prob)
    assert math.isclose(sol.objective_value, 10 + 6 + 3)
    assert prob.violation(sol.assignment) <= 1e-9


def test_linexpr_arithmetic():
    e = LinExpr({"a": 1, "b": 2}) - LinExpr({"b": 2}) + 3
    assert e.terms == {"a": 1.0} and e.constant == 3
    assert (2 * e).terms == {"a": 2.0}
    assert (5 - LinExpr({"a": 1})).value({"a": 2}) == 3
    assert LinExpr({"a": 0}).terms == {}


def test_problem_validation():
    prob = MilpProblem()
    prob.add_variable("x")
    with pytest.raises(LPError):
        prob.add_variable("x")
    with pytest.raises(LPError):
        prob.add_constraint(LinExpr({"y": 1}), "<=", 1)
    with pytest.raises(LPError):
        prob.add_constraint(LinExpr({"x": 1}), "<", 1)
    with pytest.raises(LPError):
        prob.add_variable("z", "free", 2, 1)
    prob.add_variable("e", VarKind.BINARY)
    with pytest.raises(LPError):
        solve_lp(prob)


def test_random_dense_lps_match_vertex_enumeration(rng):
    box = 10.0
    seen = {Status.OPTIMAL: 0, Status.INFEASIBLE: 0}
    for _ in range(150):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 9))
        a = rng.integers(-5, 6, size=(m, n)).astype(float)
        b = rng.integers(-10, 20, size=m).astype(float)
        rels = list(rng.choice(["<=", ">=", "=="], size=m, p=[0.6, 0.3, 0.1]))
        c = rng.integers(-5, 6, size=n).astype(float)
        prob, _ = lp_from_arrays(c, a, b, rels, ["nonneg"] * n, box)
        sol = solve_lp(prob)
        oracle = vertex_enumeration(c, a, b, rels, box)
        if oracle == -math.inf:
            assert sol.status is Status.INFEASIBLE
        else:
            assert sol.status is Status.OPTIMAL
            assert abs(sol.objective_value - oracle) <= 1e-6
            assert prob.violation(sol.assignment) <= 1e-7
        seen[sol.status] += 1
    assert seen[Status.OPTIMAL] > 30 and seen[Status.INFEASIBLE] > 5


def test_random_lps_match_scipy_with_free_variables(rng):
    for _ in range(60):
        n = int(rng.integers(2, 8))
        m = int(rng.integers(2, 12))
        a = rng.normal(size=(m, n))
        b = rng.normal(size=m) * 3
        kinds = list(rng.choice(["free", "nonneg"], size=n))
        c = rng.normal(size=n)
        prob, _ = lp_from_arrays(c, a, b, ["<="] * m, kinds, box=50.0)
        sol = solve_lp(prob)
        bounds = [(-50 if k == "free" else 0, 50) for k in kinds]
        ref = linprog(-c, A_ub=a, b_ub=b, bounds=bounds, method="highs")
        if ref.status == 2:
            assert sol.status is Status.INFEASIBLE
        else:
            assert sol.status is Status.OPTIMAL
            assert abs(sol.objective_value + ref.fun) <= 1e-6 * max(1.0, abs(ref.fun))


def test_bilp_small_examples():
    prob = MilpProblem()
    e1, e2 = prob.add_variable("e1", "binary"), prob.add_variable("e2", "binary")
    prob.add_constraint(LinExpr({e1: 1, e2: 1}), "<=", 1)
    prob.set_objective(LinExpr({e1: 1, e2: 1}))
    assert solve_bilp(prob).objective_value == 1


def test_knapsack_true_optimum():
    # 5 + 3 > 7, so {e1, e3} is infeasible; {e1} and {e2, e3} tie at 10
    prob = MilpProblem()
    es = [prob.add_variable(f"e{i}", "binary") for i in (1, 2, 3)]
    prob.add_constraint(LinExpr(zip(es, [5, 4, 3])), "<=", 7)
    prob.set_objective(LinExpr(zip(es, [10, 6, 4])))
    sol = solve_bilp(prob)
    brute = max(10 * x + 6 * y + 4 * z for x, y, z in itertools.product((0, 1), repeat=3)
                if 5 * x + 4 * y + 3 * z <= 7)
    assert sol.objective_value == brute == 10
    assert prob.violation(sol.assignment) == 0


def random_bilp(rng, nb, nc):
    prob = MilpProblem()
    bins = [prob.add_variable(f"e{i}", "binary") for i in range(nb)]
    cont = [prob.add_variable(f"y{i}", "free", -5, 5) for i in range(nc)]
    names = bins + cont
    m = int(rng.integers(2, 7))
    a = rng.integers(-4, 5, size=(m, nb + nc)).astype(float)
    b = rng.integers(-2, 8, size=m).astype(float)
    for row, rhs in zip(a, b):
        prob.add_constraint(LinExpr(zip(names, row)), "<=", rhs)
    c = rng.integers(-3, 6, size=nb + nc).astype(float)
    prob.set_objective(LinExpr(zip(names, c)))
    return prob, a, b, c


def brute_bilp(a, b, c, nb, nc):
    best = -math.inf
    for pattern in itertools.product((0.0, 1.0), repeat=nb):
        x = np.array(pattern)
        if nc == 0:
            if np.all(a[:, :nb] @ x <= b + 1e-9):
                best = max(best, float(c @ x))
            continue
        res = linprog(-c[nb:], A_ub=a[:, nb:], b_ub=b - a[:, :nb] @ x,
                      bounds=[(-5, 5)] * nc, method="highs")
        if res.status == 0:
            best = max(best, float(c[:nb] @ x) - res.fun)
    return best


@pytest.mark.parametrize("nb,nc", [(3, 0), (5, 1), (6, 2), (8, 2), (10, 1), (12, 0)])
def test_bilp_matches_exhaustive_oracle(rng, nb, nc):
    for _ in range(4 if nb <= 8 else 2):
        prob, a, b, c = random_bilp(rng, nb, nc)
        sol = solve_bilp(prob)
        oracle = brute_bilp(a, b, c, nb, nc)
        if oracle == -math.inf:
            assert sol.status is Status.INFEASIBLE
            continue
        assert sol.status is Status.OPTIMAL
        assert abs(sol.objective_value - oracle) <= 1e-6
        assert all(sol.assignment[e] in (0.0, 1.0) for e in prob.binaries)
        assert prob.violation(sol.assignment) <= 1e-7


def test_bilp_node_cap_reports_iter_limit(rng):
    prob, *_ = random_bilp(np.random.default_rng(3), 10, 0)
    sol = solve_bilp(prob, node_cap=1)
    assert sol.status in (Status.ITER_LIMIT, Status.OPTIMAL, Status.INFEASIBLE)
    prob = MilpProblem()
    es = [prob.add_variable(f"e{i}", "binary") for i in range(6)]
    prob.add_constraint(LinExpr(zip(es, [2] * 6)), "<=", 5)
    prob.set_objective(LinExpr(zip(es, [1, 1.01, 1.02, 1.03, 1.04, 1.05])))
    assert solve_bilp(prob, node_cap=2).status is Status.ITER_LIMIT


def test_determinism(rng):
    prob, *_ = random_bilp(rng, 8, 2)
    first = solve_bilp(prob)
    for _ in range(3):
        again = solve_bilp(prob)
        assert again.status is first.status
        assert again.objective_value == first.objective_value
        assert again.assignment == first.assignment


def test_lp_format_dump():
    prob = MilpProblem(name="demo")
    x = prob.add_variable("x", "free")
    e = prob.add_variable("e", "binary")
    prob.add_variable("t", "nonneg")
    prob.add_constraint(LinExpr({x: 1, e: -2}), "<=", 3, name="row")
    prob.set_objective(LinExpr({x: 1}), Sense.MIN)
    text = to_lp_format(prob)
    assert text.splitlines()[:3] == ["\\ demo", "Minimize", " obj: 1 x"]
    assert " row: 1 x - 2 e <= 3" in text
    assert " x free" in text and " 0 <= t <= +inf" in text
    assert text.rstrip().endswith("Binary\n e\nEnd")

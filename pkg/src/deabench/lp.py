"""Dense two-phase primal simplex.

Small problems only (a few dozen rows/columns): the DEA models solved here
have one column per region plus a handful of extras.  Pricing is Dantzig's
largest-coefficient rule; once the iteration budget is spent or a run of
degenerate pivots is seen, Bland's lowest-index rule takes over, which
guarantees termination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

FEAS_TOL = 1e-9
OPT_TOL = 1e-9
PIVOT_TOL = 1e-11
DEGENERATE_STREAK = 8
MAX_ITER = 50_000

RELATIONS = ("<=", ">=", "=")
_REL_ALIASES = {"<=": "<=", "≤": "<=", "le": "<=", ">=": ">=", "≥": ">=", "ge": ">=", "=": "=", "==": "=", "eq": "="}
_SENSE_ALIASES = {"max": "maximize", "maximize": "maximize", "min": "minimize", "minimize": "minimize"}


class LpValidationError(ValueError):
    """Malformed linear program (dimension mismatch, bad bounds, unknown relation)."""


class LpIterationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[float, ...]
    relation: str
    rhs: float


@dataclass(frozen=True)
class LpProblem:
    """``objective_sense`` over ``objective`` subject to linear constraints.

    ``bounds`` holds one ``(lower, upper)`` pair per variable; ``None`` or
    ``±inf`` mean unbounded on that side.  Default is ``(0, inf)``.
    """

    objective_sense: str
    objective: tuple[float, ...]
    constraints: tuple[Constraint, ...] = ()
    bounds: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        sense = _SENSE_ALIASES.get(str(self.objective_sense).lower())
        if sense is None:
            raise LpValidationError(f"unknown objective sense {self.objective_sense!r}")
        object.__setattr__(self, "objective_sense", sense)
        c = tuple(float(v) for v in self.objective)
        n = len(c)
        if n == 0:
            raise LpValidationError("problem has no variables")
        object.__setattr__(self, "objective", c)

        rows = []
        for i, con in enumerate(self.constraints):
            if not isinstance(con, Constraint):
                con = Constraint(*con)
            rel = _REL_ALIASES.get(con.relation)
            if rel is None:
                raise LpValidationError(f"constraint {i}: unknown relation {con.relation!r}")
            coefs = tuple(float(v) for v in con.coefficients)
            if len(coefs) != n:
                raise LpValidationError(
                    f"constraint {i} has {len(coefs)} coefficients, expected {n}")
            rows.append(Constraint(coefs, rel, float(con.rhs)))
        object.__setattr__(self, "constraints", tuple(rows))

        if self.bounds is None:
            bounds = tuple((0.0, np.inf) for _ in range(n))
        else:
            if len(self.bounds) != n:
                raise LpValidationError(f"{len(self.bounds)} bounds given for {n} variables")
            bounds = []
            for j, (lo, hi) in enumerate(self.bounds):
                lo = -np.inf if lo is None else float(lo)
                hi = np.inf if hi is None else float(hi)
                if np.isnan(lo) or np.isnan(hi) or lo > hi:
                    raise LpValidationError(f"variable {j}: invalid bounds ({lo}, {hi})")
                bounds.append((lo, hi))
            bounds = tuple(bounds)
        object.__setattr__(self, "bounds", bounds)
        if not all(np.isfinite(c)) or any(not np.all(np.isfinite(r.coefficients)) or not np.isfinite(r.rhs) for r in rows):
            raise LpValidationError("non-finite coefficient")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def matrix(self) -> tuple[np.ndarray, np.ndarray, list[str]]:
        """Dense ``(A, b, relations)``."""
        A = np.array([c.coefficients for c in self.constraints], dtype=float).reshape(-1, self.n_vars)
        b = np.array([c.rhs for c in self.constraints], dtype=float)
        return A, b, [c.relation for c in self.constraints]

    def is_feasible(self, x, tol: float = FEAS_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        for lo, hi, v in zip(*zip(*self.bounds), x):
            if v < lo - tol or v > hi + tol:
                return False
        for con in self.constraints:
            lhs = float(np.dot(con.coefficients, x))
            slack = tol * (1 + abs(con.rhs))
            if con.relation == "<=" and lhs > con.rhs + slack:
                return False
            if con.relation == ">=" and lhs < con.rhs - slack:
                return False
            if con.relation == "=" and abs(lhs - con.rhs) > slack:
                return False
        return True


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective_value: float
    variable_values: np.ndarray = field(repr=False)
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def make_problem(sense, objective, constraints=(), bounds=None) -> LpProblem:
    """Convenience constructor accepting ``(coefs, relation, rhs)`` triples."""
    return LpProblem(sense, tuple(objective), tuple(Constraint(tuple(a), r, b) for a, r, b in constraints),
                     None if bounds is None else tuple(bounds))


def _to_standard(problem: LpProblem):
    """Rewrite every variable as ``x = offset + M @ y`` with ``y >= 0``.

    Finite upper bounds on shifted variables become extra ``<=`` rows.
    """
    n = problem.n_vars
    cols: list[np.ndarray] = []
    offset = np.zeros(n)
    extra_rows: list[tuple[int, float]] = []  # (y index, upper)
    for j, (lo, hi) in enumerate(problem.bounds):
        e = np.zeros(n)
        e[j] = 1.0
        if np.isfinite(lo):
            offset[j] = lo
            cols.append(e)
            if np.isfinite(hi):
                extra_rows.append((len(cols) - 1, hi - lo))
        elif np.isfinite(hi):
            offset[j] = hi
            cols.append(-e)
        else:
            cols.append(e)
            cols.append(-e)
    M = np.column_stack(cols)

    A, b, rels = problem.matrix()
    A_y = A @ M
    b_y = b - A @ offset
    if extra_rows:
        k = M.shape[1]
        ub = np.zeros((len(extra_rows), k))
        for r, (j, cap) in enumerate(extra_rows):
            ub[r, j] = 1.0
        A_y = np.vstack([A_y, ub])
        b_y = np.concatenate([b_y, [cap for _, cap in extra_rows]])
        rels = rels + ["<="] * len(extra_rows)
    c = np.asarray(problem.objective, dtype=float)
    c_y = (c @ M) * (-1.0 if problem.objective_sense == "maximize" else 1.0)
    return A_y, b_y, rels, c_y, M, offset


class _Tableau:
    """Rows ``B^-1 [A | b]`` plus the basis; reduced costs computed on demand."""

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: list[int]):
        self.T = np.column_stack([A, b])
        self.basis = basis
        self.iterations = 0

    @property
    def rhs(self) -> np.ndarray:
        return self.T[:, -1]

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] /= T[row, col]
        for i in range(T.shape[0]):
            if i != row and T[i, col] != 0.0:
                T[i] -= T[i, col] * T[row]
        T[np.abs(T) < 1e-14] = 0.0
        self.basis[row] = col
        self.iterations += 1

    def run(self, cost: np.ndarray, allowed: np.ndarray) -> str:
        """Minimise ``cost @ y`` from the current basis; returns status."""
        bland = False
        streak = 0
        budget = 20 * (self.T.shape[0] + self.T.shape[1])
        start = self.iterations
        scale = 1.0 + np.max(np.abs(cost))
        while True:
            if self.iterations - start > MAX_ITER:
                raise LpIterationError("simplex iteration limit exceeded")
            if self.iterations - start > budget:
                bland = True
            body = self.T[:, :-1]
            reduced = cost - cost[self.basis] @ body
            candidates = np.flatnonzero(allowed & (reduced < -OPT_TOL * scale))
            if candidates.size == 0:
                return "optimal"
            if bland:
                col = int(candidates[0])
            else:
                col = int(candidates[np.argmin(reduced[candidates])])  # argmin takes lowest index on ties
            column = body[:, col]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                return "unbounded"
            ratios = self.rhs[rows] / column[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-12 * (1 + abs(best))]
            row = int(min(tied, key=lambda r: self.basis[r]))
            if best <= FEAS_TOL:
                streak += 1
                if streak >= DEGENERATE_STREAK:
                    bland = True
            else:
                streak = 0
            self.pivot(row, col)


def solve(problem: LpProblem) -> LpSolution:
    """Solve ``problem`` with the two-phase simplex.

    Deterministic for identical input.  Raises :class:`LpValidationError`
    for malformed problems (checked at construction of :class:`LpProblem`).
    """
    if not isinstance(problem, LpProblem):
        raise LpValidationError("expected an LpProblem")
    A, b, rels, c, M, offset = _to_standard(problem)
    m, k = A.shape
    # nonnegative right-hand sides
    for i in range(m):
        if b[i] < 0:
            A[i] = -A[i]
            b[i] = -b[i]
            rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[rels[i]]

    n_slack = sum(r != "=" for r in rels)
    n_art = sum(r != "<=" for r in rels)
    total = k + n_slack + n_art
    full = np.zeros((m, total))
    full[:, :k] = A
    basis = [-1] * m
    s = k
    a = k + n_slack
    art_cols = []
    for i, rel in enumerate(rels):
        if rel == "<=":
            full[i, s] = 1.0
            basis[i] = s
            s += 1
        elif rel == ">=":
            full[i, s] = -1.0
            s += 1
        if rel != "<=":
            full[i, a] = 1.0
            basis[i] = a
            art_cols.append(a)
            a += 1

    tab = _Tableau(full, b.copy(), basis)
    is_art = np.zeros(total, dtype=bool)
    is_art[art_cols] = True

    if art_cols:
        phase1 = is_art.astype(float)
        tab.run(phase1, np.ones(total, dtype=bool))
        infeas = float(phase1[tab.basis] @ tab.rhs)
        if infeas > FEAS_TOL * (1.0 + np.max(np.abs(b), initial=0.0)):
            return LpSolution("infeasible", float("nan"), np.full(problem.n_vars, np.nan), tab.iterations)
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = []
        for i in range(m):
            if is_art[tab.basis[i]]:
                row = tab.T[i, :-1]
                cands = np.flatnonzero(~is_art & (np.abs(row) > 1e-9))
                if cands.size:
                    tab.pivot(i, int(cands[0]))
                    keep.append(i)
            else:
                keep.append(i)
        tab.T = tab.T[keep]
        tab.basis = [tab.basis[i] for i in keep]

    cost = np.zeros(total)
    cost[:k] = c
    status = tab.run(cost, ~is_art)
    if status == "unbounded":
        inf = np.inf if problem.objective_sense == "maximize" else -np.inf
        return LpSolution("unbounded", inf, np.full(problem.n_vars, np.nan), tab.iterations)

    y = np.zeros(total)
    y[tab.basis] = np.maximum(tab.rhs, 0.0)
    x = offset + M @ y[:k]
    for j, (lo, hi) in enumerate(problem.bounds):
        x[j] = min(max(x[j], lo), hi)
    value = float(np.dot(problem.objective, x))
    return LpSolution("optimal", value, x, tab.iterations)


def linprog_dense(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, A_lb=None, b_lb=None,
                  bounds: Sequence | None = None, maximize: bool = False) -> LpSolution:
    """Matrix-form front end used by the DEA models."""
    cons = []
    for A, bv, rel in ((A_ub, b_ub, "<="), (A_lb, b_lb, ">="), (A_eq, b_eq, "=")):
        if A is None:
            continue
        A = np.atleast_2d(np.asarray(A, dtype=float))
        bv = np.atleast_1d(np.asarray(bv, dtype=float))
        if A.shape[0] != bv.shape[0]:
            raise LpValidationError("row count of A and b differ")
        cons.extend(Constraint(tuple(row), rel, float(v)) for row, v in zip(A, bv))
    problem = LpProblem("maximize" if maximize else "minimize", tuple(np.asarray(c, dtype=float)),
                        tuple(cons), None if bounds is None else tuple(bounds))
    return solve(problem)

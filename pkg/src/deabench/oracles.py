"""Brute-force reference solvers used to cross-check the LP-based models.

None of these share code with :mod:`deabench.lp`; each enumerates a finite
candidate set directly with ``numpy.linalg``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from .lp import LpProblem

MAX_ORACLE_VARS = 12
MAX_ORACLE_CONSTRAINTS = 20
MAX_GRID_INDICATORS = 4
MAX_FACET_DMUS = 25


class OracleRefusal(ValueError):
    """Instance too large for exhaustive enumeration."""


def enumerate_vertices_oracle(problem: LpProblem, tol: float = 1e-7):
    """Best objective value over all basic feasible solutions.

    Every variable bound is treated as one more half-space; each choice of
    ``n`` linearly independent tight rows gives a candidate vertex.  Returns
    ``None`` when no vertex is feasible.
    """
    n = problem.n_vars
    if n > MAX_ORACLE_VARS or len(problem.constraints) > MAX_ORACLE_CONSTRAINTS:
        raise OracleRefusal(
            f"oracle limited to {MAX_ORACLE_VARS} variables / {MAX_ORACLE_CONSTRAINTS} constraints")
    rows, rhs, is_eq = [], [], []
    for con in problem.constraints:
        rows.append(con.coefficients)
        rhs.append(con.rhs)
        is_eq.append(con.relation == "=")
    for j, (lo, hi) in enumerate(problem.bounds):
        e = np.zeros(n)
        e[j] = 1.0
        for v in (lo, hi):
            if np.isfinite(v):
                rows.append(e)
                rhs.append(v)
                is_eq.append(False)
    G = np.array(rows, dtype=float).reshape(-1, n)
    h = np.array(rhs, dtype=float)
    eq_idx = [i for i, e in enumerate(is_eq) if e]
    free_idx = [i for i, e in enumerate(is_eq) if not e]
    if len(eq_idx) > n:
        # redundant equalities: keep an independent subset
        sub = []
        for i in eq_idx:
            if np.linalg.matrix_rank(G[sub + [i]]) > len(sub):
                sub.append(i)
        eq_idx = sub
    need = n - len(eq_idx)
    c = np.asarray(problem.objective)
    best = None
    for extra in combinations(free_idx, need):
        idx = eq_idx + list(extra)
        sub = G[idx]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, h[idx])
        if not problem.is_feasible(x, tol=tol):
            continue
        val = float(c @ x)
        if best is None:
            best = val
        elif problem.objective_sense == "maximize":
            best = max(best, val)
        else:
            best = min(best, val)
    return best


def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 1:
        return np.array([[total]])
    if parts == 2:
        a = np.arange(total + 1)
        return np.column_stack([a, total - a])
    blocks = []
    for first in range(total + 1):
        rest = _compositions(total - first, parts - 1)
        blocks.append(np.column_stack([np.full(len(rest), first), rest]))
    return np.vstack(blocks)


def simplex_grid(m: int, step: float) -> np.ndarray:
    """Weight vectors on the ``m``-simplex with coordinates in multiples of ``step``."""
    return _grid(m, int(round(1.0 / step)))


@lru_cache(maxsize=8)
def _grid(m: int, k: int) -> np.ndarray:
    g = _compositions(k, m) / k
    g.flags.writeable = False
    return g


def bod_grid_oracle(values, dmu: int, step: float = 0.001, weight_floor: float = 0.0) -> float:
    """Grid search of ``exp(min_j sum_r w_r (z_ro - z_rj))`` over the weight simplex.

    A lower bound on the multiplicative benefit-of-the-doubt score that
    tightens as ``step`` shrinks.
    """
    Z = np.log(np.asarray(values, dtype=float))
    if Z.ndim != 2:
        raise ValueError("values must be a 2-D (dmu x indicator) array")
    m = Z.shape[1]
    if m > MAX_GRID_INDICATORS:
        raise OracleRefusal(f"grid oracle limited to {MAX_GRID_INDICATORS} indicators")
    W = simplex_grid(m, step)
    if weight_floor > 0:
        W = W[np.all(W >= weight_floor - 1e-12, axis=1)]
    D = Z[dmu][None, :] - Z  # (n_dmu, m)
    best = -np.inf
    for chunk in np.array_split(W, max(1, len(W) // 200_000 + 1)):
        t = (chunk @ D.T).min(axis=1)
        best = max(best, float(t.max()))
    return float(np.exp(best))


def envelopment_oracle(inputs, outputs, dmu: int, rts: str = "CRS") -> float:
    """Exact input-oriented efficiency for one input by basis enumeration.

    With ``s`` output rows (plus the convexity row under VRS), an optimal
    basic solution has at most ``s`` (``s + 1``) positive intensities; every
    DMU subset of that size is tried against every matching set of tight
    output rows.
    """
    x = np.asarray(inputs, dtype=float).ravel()
    Y = np.asarray(outputs, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    n, s = Y.shape
    if s > 2 or n > MAX_FACET_DMUS or x.shape[0] != n:
        raise OracleRefusal("facet oracle needs 1 input, <= 2 outputs, <= 25 DMUs")
    vrs = rts.upper() == "VRS"
    yo = Y[dmu]
    best = np.inf
    max_k = s + (1 if vrs else 0)
    for k in range(1, max_k + 1):
        n_tight = k - (1 if vrs else 0)
        for peers in combinations(range(n), k):
            P = list(peers)
            for tight in combinations(range(s), n_tight):
                A = Y[np.ix_(P, list(tight))].T if n_tight else np.zeros((0, k))
                rhs = yo[list(tight)]
                if vrs:
                    A = np.vstack([A, np.ones(k)])
                    rhs = np.append(rhs, 1.0)
                if A.shape[0] != k or abs(np.linalg.det(A)) < 1e-12:
                    continue
                lam = np.linalg.solve(A, rhs)
                if np.any(lam < -1e-12):
                    continue
                lam = np.clip(lam, 0.0, None)
                if np.any(Y[P].T @ lam < yo - 1e-9 * (1 + np.abs(yo))):
                    continue
                best = min(best, float(x[P] @ lam) / x[dmu])
    return best

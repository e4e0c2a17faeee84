"""The two DEA models: multiplicative benefit-of-the-doubt and input-oriented envelopment.

Benefit of the doubt
    With ``z = ln(value)`` each unit ``o`` picks simplex weights ``w`` that
    maximise ``t`` subject to ``t <= sum_r w_r (z_ro - z_rj)`` for every unit
    ``j``; the score is ``exp(t*)``.  Because only differences of logs enter,
    rescaling an indicator column leaves every score unchanged.

Envelopment
    minimise ``theta`` s.t. ``sum_j lambda_j x_j <= theta x_o``,
    ``sum_j lambda_j y_rj >= y_ro``, ``lambda >= 0`` and, for VRS,
    ``sum_j lambda_j = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .lp import linprog_dense
from .validation import check_inputs_outputs, check_positive_matrix, check_rts, check_weight_floor

PEER_TOL = 1e-9


class DeaInternalError(RuntimeError):
    pass


@dataclass(frozen=True)
class DmuSet:
    """One year's decision-making units and their (strictly positive) indicator values."""

    year: int
    dmu_ids: tuple[Hashable, ...]
    values: np.ndarray = field(repr=False)
    indicators: tuple[str, ...] = ()

    def __post_init__(self):
        values = check_positive_matrix(self.values, "values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dmu_ids", tuple(self.dmu_ids))
        if len(self.dmu_ids) != values.shape[0]:
            raise ValueError(f"{len(self.dmu_ids)} ids for {values.shape[0]} rows")
        if len(set(self.dmu_ids)) != len(self.dmu_ids):
            raise ValueError("duplicate DMU ids")
        if self.indicators and len(self.indicators) != values.shape[1]:
            raise ValueError("indicator names do not match column count")

    def index(self, dmu) -> int:
        try:
            return self.dmu_ids.index(dmu)
        except ValueError:
            raise KeyError(f"DMU {dmu!r} not in set for year {self.year}") from None


@dataclass(frozen=True)
class BodScore:
    dmu_id: Hashable
    score: float
    optimal_weights: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class EnvelopmentScore:
    dmu_id: Hashable
    theta: float
    lambdas: np.ndarray = field(repr=False)
    rts_mode: str = "CRS"

    @property
    def peers(self) -> tuple[int, ...]:
        return tuple(int(j) for j in np.flatnonzero(self.lambdas > PEER_TOL))


def bod_lp(values: np.ndarray, o: int, weight_floor: float = 0.0) -> tuple[float, np.ndarray]:
    """Solve the log-linear benefit-of-the-doubt LP for row ``o``.

    Returns ``(t*, w*)``.  ``values`` must already be strictly positive.
    """
    Z = np.log(values)
    n, m = Z.shape
    D = Z[o][None, :] - Z  # row j: z_o - z_j
    # variables: w_1..w_m, t ; constraint t - D_j . w <= 0
    A_ub = np.column_stack([-D, np.ones(n)])
    b_ub = np.zeros(n)
    A_eq = np.append(np.ones(m), 0.0)[None, :]
    c = np.append(np.zeros(m), 1.0)
    bounds = [(weight_floor, None)] * m + [(None, None)]
    sol = linprog_dense(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds, maximize=True)
    if not sol.optimal:
        raise DeaInternalError(f"benefit-of-the-doubt LP for row {o} ended {sol.status}")
    w = sol.variable_values[:m]
    t = min(float(sol.variable_values[m]), 0.0)  # j = o row forces t <= 0
    return t, w


def bod_multiplicative(dmu_set: DmuSet, dmu, weight_floor: float = 0.0) -> BodScore:
    """Benefit-of-the-doubt score of ``dmu`` within ``dmu_set``."""
    floor = check_weight_floor(weight_floor, dmu_set.values.shape[1])
    o = dmu_set.index(dmu)
    t, w = bod_lp(dmu_set.values, o, floor)
    return BodScore(dmu, float(np.exp(t)), w)


def bod_scores(dmu_set: DmuSet, weight_floor: float = 0.0) -> list[BodScore]:
    return [bod_multiplicative(dmu_set, d, weight_floor) for d in dmu_set.dmu_ids]


def envelopment_lp(x: np.ndarray, Y: np.ndarray, o: int, rts: str = "CRS",
                   reference: tuple[np.ndarray, np.ndarray] | None = None) -> tuple[float, np.ndarray]:
    """Input-oriented envelopment LP for unit ``o``; returns ``(theta, lambdas)``.

    ``x`` is ``(n, m)`` inputs and ``Y`` ``(n, s)`` outputs of the evaluated
    units; ``reference`` optionally replaces the frontier-building set.
    """
    Xr, Yr = (x, Y) if reference is None else reference
    n = Xr.shape[0]
    xo, yo = x[o], Y[o]
    # variables: theta, lambda_1..lambda_n
    A_ub = np.vstack([
        np.column_stack([-xo[:, None], Xr.T]),           # sum lambda x - theta x_o <= 0
        np.column_stack([np.zeros(Yr.shape[1]), -Yr.T]),  # -sum lambda y <= -y_o
    ])
    b_ub = np.concatenate([np.zeros(Xr.shape[1]), -yo])
    kw = {}
    if rts == "VRS":
        kw = dict(A_eq=np.append(0.0, np.ones(n))[None, :], b_eq=[1.0])
    c = np.append(1.0, np.zeros(n))
    bounds = [(None, None)] + [(0.0, None)] * n
    sol = linprog_dense(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, **kw)
    if sol.status == "infeasible":
        return float("nan"), np.full(n, np.nan)
    if not sol.optimal:
        raise DeaInternalError(f"envelopment LP for unit {o} ended {sol.status}")
    lam = np.clip(sol.variable_values[1:], 0.0, None)
    return float(sol.variable_values[0]), lam


def envelopment_input_oriented(inputs, outputs, dmu: int, rts: str = "CRS",
                               dmu_ids: Sequence | None = None) -> EnvelopmentScore:
    """Input-oriented efficiency of unit ``dmu`` (a row index) against the whole set."""
    x, Y = check_inputs_outputs(inputs, outputs)
    mode = check_rts(rts)
    theta, lam = envelopment_lp(x, Y, dmu, mode)
    if np.isnan(theta):
        raise DeaInternalError(f"unit {dmu} is in the reference set yet its {mode} LP is infeasible")
    theta = min(theta, 1.0)
    ident = dmu if dmu_ids is None else list(dmu_ids)[dmu]
    return EnvelopmentScore(ident, theta, lam, mode)

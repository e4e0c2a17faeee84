"""Seeded random instances and the model property checks run at acceptance time."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dea import bod_lp, envelopment_lp
from .lp import make_problem, solve
from .oracles import bod_grid_oracle, envelopment_oracle, enumerate_vertices_oracle

BOD_GRID_TOL = 5e-3
ENVELOPMENT_ORACLE_TOL = 1e-6
LP_ORACLE_TOL = 1e-7
INVARIANCE_TOL = 1e-9
GRID_STEP = {1: 0.001, 2: 0.001, 3: 0.002, 4: 0.01}


@dataclass
class PropertyOutcome:
    name: str
    checked: int = 0
    worst: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, deviation: float, what: str) -> None:
        self.checked += 1
        self.worst = max(self.worst, float(deviation))
        if not ok and len(self.failures) < 10:
            self.failures.append(what)


def bod_instances(count: int, seed: int):
    """``(values, evaluated_row)`` pairs with 3-4 indicators and 3-8 units."""
    rng = np.random.default_rng(seed)
    for k in range(count):
        m = 3 + k % 2
        n = int(rng.integers(3, 9))
        yield rng.uniform(1.0, 10.0, size=(n, m)), int(rng.integers(0, n))


def envelopment_instances(count: int, seed: int):
    """``(inputs, outputs, evaluated_row)`` with one input, two outputs and 5-15 units."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(5, 16))
        yield rng.uniform(1.0, 10.0, n), rng.uniform(0.1, 10.0, size=(n, 2)), int(rng.integers(0, n))


def lp_instances(count: int, seed: int):
    """Feasible, bounded 4-variable LPs mixing <=, >= and = rows and varied bounds."""
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        n = 4
        x0 = rng.uniform(0.0, 3.0, n)
        bounds = []
        for j in range(n):
            kind = rng.integers(0, 3)
            if kind == 0:
                bounds.append((0.0, None))
            elif kind == 1:
                bounds.append((0.0, float(x0[j] + rng.uniform(0.5, 4.0))))
            else:
                bounds.append((float(x0[j] - rng.uniform(0.5, 2.0)), float(x0[j] + rng.uniform(0.5, 4.0))))
        cons = []
        for _ in range(int(rng.integers(2, 7))):
            a = np.round(rng.uniform(-3, 3, n), 3)
            lhs = float(a @ x0)
            rel = rng.choice(["<=", "<=", ">=", "="], p=[0.45, 0.2, 0.25, 0.1])
            if rel == "<=":
                cons.append((a, "<=", lhs + float(rng.uniform(0.0, 2.0))))
            elif rel == ">=":
                cons.append((a, ">=", lhs - float(rng.uniform(0.0, 2.0))))
            else:
                cons.append((a, "=", lhs))
        # cap the variables without finite upper bounds so the optimum exists
        cap = np.array([1.0 if b[1] is None else 0.0 for b in bounds])
        if cap.any():
            cons.append((cap, "<=", float(cap @ x0 + rng.uniform(1.0, 5.0))))
        c = np.round(rng.uniform(-5, 5, n), 3)
        sense = "maximize" if rng.random() < 0.5 else "minimize"
        yield make_problem(sense, c, cons, bounds)
        made += 1


def check_bod(count: int = 100, seed: int = 20100) -> list[PropertyOutcome]:
    frontier = PropertyOutcome("BoD frontier nonemptiness")
    scale = PropertyOutcome("BoD column-scale invariance")
    mono = PropertyOutcome("BoD monotonicity")
    grid = PropertyOutcome("BoD grid-oracle agreement")
    rng = np.random.default_rng(seed + 1)
    for k, (V, o) in enumerate(bod_instances(count, seed)):
        scores = np.exp([bod_lp(V, j)[0] for j in range(len(V))])
        maxima = np.flatnonzero((V == V.max(axis=0)).any(axis=1))
        dev = float(np.max(np.abs(scores[maxima] - 1.0)))
        frontier.record(dev <= INVARIANCE_TOL and abs(scores.max() - 1.0) <= INVARIANCE_TOL, dev,
                        f"instance {k}: column-max holder scored {scores[maxima]}")

        col = int(rng.integers(0, V.shape[1]))
        Vs = V.copy()
        Vs[:, col] *= float(rng.uniform(0.01, 100.0))
        scaled = np.exp([bod_lp(Vs, j)[0] for j in range(len(V))])
        dev = float(np.max(np.abs(scaled - scores)))
        scale.record(dev <= INVARIANCE_TOL, dev, f"instance {k}: drift {dev:.3g}")

        Vm = V.copy()
        Vm[o, col] *= 1.5
        bumped = float(np.exp(bod_lp(Vm, o)[0]))
        drop = scores[o] - bumped
        mono.record(drop <= INVARIANCE_TOL, max(drop, 0.0), f"instance {k}: {scores[o]} -> {bumped}")

        g = bod_grid_oracle(V, o, GRID_STEP[V.shape[1]])
        gap = scores[o] - g
        grid.record(-INVARIANCE_TOL <= gap <= BOD_GRID_TOL, abs(gap),
                    f"instance {k}: LP {scores[o]:.6f} vs grid {g:.6f}")
    return [frontier, scale, mono, grid]


def check_envelopment(count: int = 100, seed: int = 20110) -> list[PropertyOutcome]:
    units = PropertyOutcome("envelopment units invariance")
    order = PropertyOutcome("envelopment VRS >= CRS")
    oracle = PropertyOutcome("envelopment facet-oracle agreement")
    rng = np.random.default_rng(seed + 1)
    for k, (x, Y, o) in enumerate(envelopment_instances(count, seed)):
        X = x[:, None]
        crs = envelopment_lp(X, Y, o, "CRS")[0]
        vrs = envelopment_lp(X, Y, o, "VRS")[0]
        Xs = X * float(rng.uniform(0.01, 100.0))
        Ys = Y.copy()
        Ys[:, int(rng.integers(0, 2))] *= float(rng.uniform(0.01, 100.0))
        dev = max(abs(envelopment_lp(Xs, Ys, o, "CRS")[0] - crs), abs(envelopment_lp(Xs, Ys, o, "VRS")[0] - vrs))
        units.record(dev <= INVARIANCE_TOL, dev, f"instance {k}: drift {dev:.3g}")
        order.record(vrs >= crs - INVARIANCE_TOL, max(crs - vrs, 0.0), f"instance {k}: VRS {vrs} < CRS {crs}")
        dev = max(abs(crs - envelopment_oracle(x, Y, o, "CRS")), abs(vrs - envelopment_oracle(x, Y, o, "VRS")))
        oracle.record(dev <= ENVELOPMENT_ORACLE_TOL, dev, f"instance {k}: oracle gap {dev:.3g}")
    return [units, order, oracle]


def check_lp(count: int = 200, seed: int = 20120) -> list[PropertyOutcome]:
    out = PropertyOutcome("LP vertex-oracle agreement")
    for k, problem in enumerate(lp_instances(count, seed)):
        sol = solve(problem)
        best = enumerate_vertices_oracle(problem)
        if best is None or not sol.optimal:
            out.record(False, np.inf, f"instance {k}: status {sol.status}, oracle {best}")
            continue
        dev = abs(sol.objective_value - best) / max(1.0, abs(best))
        out.record(dev <= LP_ORACLE_TOL and problem.is_feasible(sol.variable_values), dev,
                   f"instance {k}: simplex {sol.objective_value} vs oracle {best}")
    return [out]


def run_property_suite(seed: int = 0) -> list[PropertyOutcome]:
    return (check_bod(seed=20100 + seed) + check_envelopment(seed=20110 + seed)
            + check_lp(seed=20120 + seed))

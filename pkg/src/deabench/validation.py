"""Input checks shared by the estimators and the pipeline functions."""
from __future__ import annotations

import numpy as np
from sklearn.utils import check_array


class ContractViolation(ValueError):
    """Data reached a layer whose preconditions it does not meet."""


def check_positive_matrix(X, name: str = "X") -> np.ndarray:
    """2-D float array with every entry strictly positive."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if np.any(X <= 0):
        i, j = np.argwhere(X <= 0)[0]
        raise ContractViolation(
            f"{name}[{i}, {j}] = {X[i, j]!r}: strictly positive values required "
            "(apply flooring upstream)")
    return X


def check_inputs_outputs(inputs, outputs) -> tuple[np.ndarray, np.ndarray]:
    """Validate an envelopment data set: positive inputs, nonnegative outputs."""
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    x = check_array(x, dtype=np.float64)
    Y = np.asarray(outputs, dtype=np.float64)
    if Y.ndim == 1:
        Y = Y[:, None]
    Y = check_array(Y, dtype=np.float64)
    if x.shape[0] != Y.shape[0]:
        raise ContractViolation(f"{x.shape[0]} input rows vs {Y.shape[0]} output rows")
    if np.any(x <= 0):
        raise ContractViolation("inputs must be strictly positive")
    if np.any(Y < 0):
        raise ContractViolation("outputs must be nonnegative")
    if np.any(Y.max(axis=1) <= 0):
        raise ContractViolation("every DMU needs at least one positive output")
    return x, Y


def check_rts(rts: str) -> str:
    mode = str(rts).upper()
    if mode not in ("CRS", "VRS"):
        raise ContractViolation(f"rts must be 'CRS' or 'VRS', got {rts!r}")
    return mode


def check_weight_floor(weight_floor: float, n_indicators: int) -> float:
    floor = float(weight_floor)
    if not 0.0 <= floor < 1.0 / n_indicators:
        raise ContractViolation(
            f"weight_floor must lie in [0, 1/{n_indicators}), got {weight_floor}")
    return floor

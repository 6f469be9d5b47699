"""Mackey-Glass trajectory generation and supervised slicing.

The delay equation du/dt = beta*u_tau/(1 + u_tau^n) - gamma*u is integrated
with a fixed-step Euler scheme (the benchmark convention is a unity step),
using a constant pre-history on [-tau, 0] and discarding an initial
transient so the returned samples sit on the attractor.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class MackeyGlassParams:
    beta: float = 0.2
    gamma: float = 0.1
    tau: float = 16.0
    n: float = 10.0
    dt: float = 1.0
    history: float = 1.2
    transient: int = 1000

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        ratio = self.tau / self.dt
        if ratio <= 0 or abs(ratio - round(ratio)) > 1e-9:
            raise ValueError(f"tau/dt must be a positive integer, got {ratio}")
        if self.n < 1:
            raise ValueError("exponent n must be >= 1")
        if self.transient < 0:
            raise ValueError("transient must be >= 0")

    @property
    def delay_steps(self) -> int:
        return int(round(self.tau / self.dt))


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled scalar sequence."""

    values: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must all be finite")

    def __len__(self) -> int:
        return len(self.values)


def integrate_mackey_glass(params: MackeyGlassParams, length: int) -> TimeSeries:
    """Return `length` samples taken after the discarded transient."""
    if length <= 0:
        raise ValueError("length must be positive")
    raw = _kernels.mg_euler(
        params.transient + length,
        params.delay_steps,
        params.beta,
        params.gamma,
        params.n,
        params.dt,
        params.history,
    )
    return TimeSeries(values=raw[params.transient:], dt=params.dt)


def split_supervised(series: TimeSeries, train_len: int):
    """Split into one-step-ahead pairs: targets are inputs shifted by one.

    Train inputs cover indices [0, train_len); test inputs continue from
    train_len to the second-to-last sample. Returns
    (inputs_train, targets_train, inputs_test, targets_test).
    """
    values = series.values
    if train_len <= 0:
        raise ValueError("train_len must be positive")
    test_len = len(values) - train_len - 1
    if test_len < 1:
        raise ValueError(
            f"series of length {len(values)} leaves no room for a shifted "
            f"test split after {train_len} training samples"
        )
    inputs_train = values[:train_len]
    targets_train = values[1:train_len + 1]
    inputs_test = values[train_len:train_len + test_len]
    targets_test = values[train_len + 1:train_len + test_len + 1]
    return inputs_train, targets_train, inputs_test, targets_test


def write_series_csv(path, series: TimeSeries, header_lines=()) -> None:
    """Write `index,value` rows with optional commented provenance lines."""
    with open(path, "w", encoding="utf-8") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("index,value\n")
        for i, v in enumerate(series.values):
            fh.write(f"{i},{v!r}\n")

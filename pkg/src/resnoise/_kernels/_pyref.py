"""Pure NumPy/Python reference implementations of the hot kernels.

`resnoise._kernels` exposes exactly this interface; the compiled twin in
`_native.pyx` mirrors it operation for operation. Every function here is
deterministic given its inputs.
"""

import math

import numpy as np
from scipy.special import expit

from ..errors import NumericError

BACKEND = "python"

ACT_TANH = 0
ACT_SIGMOID = 1
ACT_LINEAR = 2


def _apply_activation(act_id, a):
    if act_id == ACT_TANH:
        return np.tanh(a)
    if act_id == ACT_SIGMOID:
        return expit(a)
    if act_id == ACT_LINEAR:
        return a
    raise ValueError(f"unknown activation id {act_id}")


def mg_euler(total, delay_steps, beta, gamma, n_exp, dt, history):
    """Euler-integrate the delay equation, returning `total` raw samples.

    Sample 0 is the constant history value; the delayed read falls back to
    the history while fewer than `delay_steps` samples exist.
    """
    r = np.empty(total)
    val = float(history)
    r[0] = val
    beta = float(beta)
    gamma = float(gamma)
    n_exp = float(n_exp)
    dt = float(dt)
    out = r.tolist()  # scalar loop on Python floats, written back at the end
    for k in range(total - 1):
        ud = out[k - delay_steps] if k >= delay_steps else history
        val = out[k]
        nxt = val + dt * (beta * ud / (1.0 + ud ** n_exp) - gamma * val)
        if not math.isfinite(nxt):
            raise NumericError(f"integration produced a non-finite value at step {k + 1}")
        out[k + 1] = nxt
    return np.asarray(out)


def collect_states(w_in, w_res, inputs, act_id, x0):
    """Drive the reservoir over `inputs` and record the state after each step."""
    n = w_in.shape[0]
    states = np.empty((inputs.shape[0], n))
    y = np.array(x0, dtype=float, copy=True)
    for t in range(inputs.shape[0]):
        y = _apply_activation(act_id, inputs[t] * w_in + y @ w_res)
        states[t] = y
    return states


def open_loop_clean(w_in, w_res, w_out, inputs, act_id, x0):
    """Noise-free driven run; returns the readout at every step."""
    outputs = np.empty(inputs.shape[0])
    y = np.array(x0, dtype=float, copy=True)
    for t in range(inputs.shape[0]):
        y = _apply_activation(act_id, inputs[t] * w_in + y @ w_res)
        outputs[t] = y @ w_out
    return outputs


def closed_loop_clean(w_in, w_res, w_out, act_id, y0, u0, steps, limit):
    """Noise-free free-run: each output becomes the next input.

    Returns (outputs, diverged_at); diverged_at is -1 for a clean run,
    otherwise the index of the first output beyond `limit` (later entries
    are zero).
    """
    outputs = np.zeros(steps)
    y = np.array(y0, dtype=float, copy=True)
    u = float(u0)
    for t in range(steps):
        y = _apply_activation(act_id, u * w_in + y @ w_res)
        u = float(y @ w_out)
        outputs[t] = u
        if not math.isfinite(u) or abs(u) > limit:
            return outputs, t
    return outputs, -1

"""Seeded white-Gaussian noise streams and the four-way noise operator.

Deviate addressing is counter-based rather than sequential: the value drawn
for (site, kind, realization k, time t, lane i) is a pure function of the
master seed and that key, so any subset can be regenerated in any order, on
any worker split, bit-identically.

Layout. Each (site, kind) pair owns a Philox4x64 key derived via
SeedSequence((master_seed, site, kind)). Within that stream the 256-bit
counter word 3 holds t and word 0 holds the realization's block offset
k * ceil(2*lanes/4); uniform double j of the window consumes one 64-bit
word. Lane i maps to the Box-Muller pair (2i, 2i+1):

    z_i = sqrt(-2 ln(1 - u_{2i})) * cos(2 pi u_{2i+1})

Box-Muller is exact and consumes a fixed word budget, which is what makes
the per-key purity hold (a rejection method would not).

Correlated kinds collapse the lane axis to a single lane shared by every
neuron; the scaled deviate sqrt(2*D)*z has variance 2*D.
"""

from dataclasses import dataclass, replace

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

SITE_RESERVOIR = 0
SITE_OUTPUT = 1

KIND_UA = 0  # uncorrelated additive
KIND_UM = 1  # uncorrelated multiplicative
KIND_CA = 2  # correlated additive
KIND_CM = 3  # correlated multiplicative


@dataclass(frozen=True)
class NoiseConfig:
    """Intensities per injection site plus the master seed.

    d_* are the reservoir intensities for the four noise kinds; d_ca_out and
    d_cm_out drive the single output neuron (only the correlated kinds are
    meaningful there).
    """

    d_ua: float = 0.0
    d_um: float = 0.0
    d_ca: float = 0.0
    d_cm: float = 0.0
    d_ca_out: float = 0.0
    d_cm_out: float = 0.0
    master_seed: int = 0

    def __post_init__(self):
        for name in ("d_ua", "d_um", "d_ca", "d_cm", "d_ca_out", "d_cm_out"):
            if getattr(self, name) < 0:
                raise ValueError(f"noise intensity {name} must be >= 0")

    @property
    def reservoir_active(self) -> bool:
        return any((self.d_ua, self.d_um, self.d_ca, self.d_cm))

    @property
    def output_active(self) -> bool:
        return any((self.d_ca_out, self.d_cm_out))

    @property
    def silent(self) -> bool:
        return not (self.reservoir_active or self.output_active)

    def with_seed(self, master_seed: int) -> "NoiseConfig":
        return replace(self, master_seed=master_seed)


class NoiseStream:
    """Keyed standard-normal source for one master seed."""

    def __init__(self, master_seed: int):
        self.master_seed = int(master_seed)
        self._keys = {}

    def _key(self, site: int, kind: int) -> int:
        tag = (site, kind)
        if tag not in self._keys:
            state = SeedSequence(entropy=(self.master_seed, site, kind)).generate_state(2, np.uint64)
            self._keys[tag] = int(state[0]) | (int(state[1]) << 64)
        return self._keys[tag]

    @staticmethod
    def _block_stride(lanes: int) -> int:
        # words per realization window, rounded up to whole 4-word blocks
        return (2 * lanes + 3) // 4

    def normals(self, site: int, kind: int, realization: int, t: int,
                lanes: int) -> np.ndarray:
        """Standard-normal deviates for every lane of one (k, t) window."""
        return self.normals_batch(site, kind, t, 1, lanes,
                                  first_realization=realization)[0]

    def normals_batch(self, site: int, kind: int, t: int, n_realizations: int,
                      lanes: int, first_realization: int = 0) -> np.ndarray:
        """(n_realizations, lanes) deviates for consecutive realizations.

        Slicing consistency: rows equal the same realizations generated one
        at a time, so worker splits over k cannot change any value.
        """
        stride = self._block_stride(lanes)
        bg = Philox(key=self._key(site, kind),
                    counter=[first_realization * stride, 0, 0, t])
        u = Generator(bg).random(4 * stride * n_realizations)
        u = u.reshape(n_realizations, 4 * stride)
        u1 = u[:, 0:2 * lanes:2]
        u2 = u[:, 1:2 * lanes:2]
        # 1-u maps [0,1) onto (0,1], keeping the log finite
        return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)

    def normal_at(self, site: int, kind: int, realization: int, t: int,
                  lane: int, lanes: int) -> float:
        """Single deviate addressed directly (used to verify key purity)."""
        stride = self._block_stride(lanes)
        block = realization * stride + (2 * lane) // 4
        offset = (2 * lane) % 4
        bg = Philox(key=self._key(site, kind), counter=[block, 0, 0, t])
        u = Generator(bg).random(offset + 2)
        u1, u2 = u[offset], u[offset + 1]
        return float(np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2))


def apply_reservoir_noise(x_res: np.ndarray, cfg: NoiseConfig, t: int,
                          stream: NoiseStream, realization: int = 0) -> np.ndarray:
    """Four-way operator on the reservoir state vector:

    y_i = x_i * (1 + sqrt(2 D_UM) xi^UM_{t,i}) * (1 + sqrt(2 D_CM) xi^CM_t)
          + sqrt(2 D_UA) xi^UA_{t,i} + sqrt(2 D_CA) xi^CA_t

    Correlated deviates are sampled once per t and shared by all lanes.
    """
    out = apply_reservoir_noise_batch(x_res[None, :], cfg, t, stream,
                                      first_realization=realization)
    return out[0]


def apply_reservoir_noise_batch(x_res: np.ndarray, cfg: NoiseConfig, t: int,
                                stream: NoiseStream,
                                first_realization: int = 0) -> np.ndarray:
    """Batched operator over consecutive realizations (rows of x_res)."""
    k, n = x_res.shape
    y = x_res
    if cfg.d_um:
        xi = stream.normals_batch(SITE_RESERVOIR, KIND_UM, t, k, n, first_realization)
        y = y * (1.0 + np.sqrt(2.0 * cfg.d_um) * xi)
    if cfg.d_cm:
        xi = stream.normals_batch(SITE_RESERVOIR, KIND_CM, t, k, 1, first_realization)
        y = y * (1.0 + np.sqrt(2.0 * cfg.d_cm) * xi)
    if cfg.d_ua or cfg.d_ca:
        add = np.zeros((k, 1))
        if cfg.d_ua:
            add = add + np.sqrt(2.0 * cfg.d_ua) * stream.normals_batch(
                SITE_RESERVOIR, KIND_UA, t, k, n, first_realization)
        if cfg.d_ca:
            add = add + np.sqrt(2.0 * cfg.d_ca) * stream.normals_batch(
                SITE_RESERVOIR, KIND_CA, t, k, 1, first_realization)
        y = y + add
    if y is x_res:
        y = x_res.copy()
    return y


def apply_output_noise(x_out: float, cfg: NoiseConfig, t: int,
                       stream: NoiseStream, realization: int = 0) -> float:
    """Single-neuron operator: y = x*(1 + sqrt(2 D_CM) xi) + sqrt(2 D_CA) xi'.

    Output-site deviates come from their own keys, independent of every
    reservoir deviate.
    """
    out = apply_output_noise_batch(np.array([x_out]), cfg, t, stream,
                                   first_realization=realization)
    return float(out[0])


def apply_output_noise_batch(x_out: np.ndarray, cfg: NoiseConfig, t: int,
                             stream: NoiseStream,
                             first_realization: int = 0) -> np.ndarray:
    k = x_out.shape[0]
    y = x_out
    if cfg.d_cm_out:
        xi = stream.normals_batch(SITE_OUTPUT, KIND_CM, t, k, 1, first_realization)[:, 0]
        y = y * (1.0 + np.sqrt(2.0 * cfg.d_cm_out) * xi)
    if cfg.d_ca_out:
        xi = stream.normals_batch(SITE_OUTPUT, KIND_CA, t, k, 1, first_realization)[:, 0]
        y = y + np.sqrt(2.0 * cfg.d_ca_out) * xi
    if y is x_out:
        y = x_out.copy()
    return y

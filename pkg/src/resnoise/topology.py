"""Weight-matrix construction, spectral-radius scaling, and matrix statistics.

Reservoir matrices are drawn uniformly on [-0.5, 0.5] (band variants mask
the same field outside a diagonal band) and rescaled to a target spectral
radius. The statistics exposed here (mean, square of the mean, mean of
squares, standard deviation, spectral radius) are the quantities that drive
the analytic variance predictions, so their definitions are load-bearing:

    mean            mu   = sum(entries) / (rows*cols)
    mean_squared    mu^2
    mean_of_squares eta  = sum(entries^2) / (rows*cols)
    std_dev         sqrt(eta - mu^2)
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

# Entropy tag mixed with the user seed so matrix generation has its own
# stream; noise seeding can never perturb topology.
_TOPOLOGY_TAG = 0x746F706F

_ZERO_RADIUS = 1e-14


@dataclass(frozen=True)
class ReservoirSpec:
    kind: str  # "uniform" or "band"
    n_neurons: int
    spectral_radius: float
    seed: int
    connectivity_percent: float = 100.0

    def __post_init__(self):
        if self.kind not in ("uniform", "band"):
            raise ValueError(f"unknown reservoir kind {self.kind!r}")
        if self.n_neurons <= 0:
            raise ValueError("n_neurons must be positive")
        if self.spectral_radius <= 0:
            raise ValueError("spectral_radius must be positive")
        if not 0 < self.connectivity_percent <= 100:
            raise ValueError("connectivity_percent must be in (0, 100]")


@dataclass(frozen=True)
class MatrixStats:
    mean: float
    mean_squared: float
    mean_of_squares: float
    std_dev: float
    spectral_radius: Optional[float] = None

    def as_text(self) -> str:
        rows = [
            ("mean", self.mean),
            ("mean_squared", self.mean_squared),
            ("mean_of_squares", self.mean_of_squares),
            ("std_dev", self.std_dev),
        ]
        if self.spectral_radius is not None:
            rows.append(("spectral_radius", self.spectral_radius))
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name:<{width}}  {value: .6e}" for name, value in rows)

    def as_csv_row(self) -> str:
        sr = "" if self.spectral_radius is None else repr(self.spectral_radius)
        return (f"{self.mean!r},{self.mean_squared!r},{self.mean_of_squares!r},"
                f"{self.std_dev!r},{sr}")


def _rng(spec: ReservoirSpec) -> np.random.Generator:
    return np.random.default_rng([spec.seed, _TOPOLOGY_TAG])


def gen_uniform(spec: ReservoirSpec, scaled: bool = True) -> np.ndarray:
    """Dense N x N matrix, i.i.d. uniform on [-0.5, 0.5], then rescaled."""
    if spec.kind != "uniform":
        raise ValueError("spec.kind must be 'uniform'")
    m = _rng(spec).uniform(-0.5, 0.5, size=(spec.n_neurons, spec.n_neurons))
    if not scaled:
        return m
    return scale_to_spectral_radius(m, spec.spectral_radius)


def band_half_width(n_neurons: int, connectivity_percent: float) -> int:
    """Half-width w whose band density best matches the requested percentage.

    A band of half-width w holds nnz(w) = (2w+1)*N - w*(w+1) entries.
    """
    target = connectivity_percent / 100.0 * n_neurons * n_neurons
    best_w, best_err = 0, float("inf")
    for w in range(n_neurons):
        nnz = (2 * w + 1) * n_neurons - w * (w + 1)
        err = abs(nnz - target)
        if err < best_err:
            best_w, best_err = w, err
        if nnz >= n_neurons * n_neurons:
            break
    return best_w


def gen_band(spec: ReservoirSpec, scaled: bool = True) -> np.ndarray:
    """Band matrix: the uniform field masked outside |i - j| <= w, rescaled."""
    if spec.kind != "band":
        raise ValueError("spec.kind must be 'band'")
    n = spec.n_neurons
    m = _rng(spec).uniform(-0.5, 0.5, size=(n, n))
    w = band_half_width(n, spec.connectivity_percent)
    idx = np.arange(n)
    m[np.abs(idx[:, None] - idx[None, :]) > w] = 0.0
    if not scaled:
        return m
    return scale_to_spectral_radius(m, spec.spectral_radius)


def gen_input_weights(n_neurons: int) -> np.ndarray:
    """1 x N input weights, all ones."""
    if n_neurons <= 0:
        raise ValueError("n_neurons must be positive")
    return np.ones(n_neurons)


def spectral_radius(m: np.ndarray) -> float:
    """Modulus of the dominant eigenvalue; values below 1e-14 report as 0."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"spectral radius needs a square matrix, got {m.shape}")
    rho = float(np.max(np.abs(np.linalg.eigvals(m))))
    return rho if rho > _ZERO_RADIUS else 0.0


def spectral_radius_power(m: np.ndarray, rel_tol: float = 1e-10,
                          window: int = 10, max_iter: int = 100_000,
                          seed: int = 0) -> float:
    """Norm-growth power-iteration estimate rho ~ ||M^m v||^(1/m).

    Kept as an independent cross-check of :func:`spectral_radius`; the
    geometric-mean estimate converges only as O(1/m) for complex dominant
    pairs, hence the generous iteration cap.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"spectral radius needs a square matrix, got {m.shape}")
    v = np.random.default_rng(seed).standard_normal(m.shape[0])
    v /= np.linalg.norm(v)
    log_growth = 0.0
    history = []
    for it in range(1, max_iter + 1):
        v = m @ v
        norm = np.linalg.norm(v)
        if norm <= _ZERO_RADIUS:
            return 0.0
        log_growth += np.log(norm)
        v /= norm
        estimate = np.exp(log_growth / it)
        history.append(estimate)
        if it > window:
            prev = history[-window - 1]
            if abs(estimate - prev) <= rel_tol * abs(estimate):
                return float(estimate)
    return float(history[-1])


def scale_to_spectral_radius(m: np.ndarray, s: float) -> np.ndarray:
    """Return m * (s / rho(m)); requires a nonzero spectral radius."""
    rho = spectral_radius(m)
    if rho <= _ZERO_RADIUS:
        raise ValueError("cannot scale a matrix with zero spectral radius")
    return m * (s / rho)


def matrix_stats(m: np.ndarray) -> MatrixStats:
    m = np.asarray(m, dtype=float)
    mean = float(m.mean())
    mean_of_squares = float(np.mean(m * m))
    variance = max(mean_of_squares - mean * mean, 0.0)
    sr = None
    if m.ndim == 2 and m.shape[0] == m.shape[1]:
        sr = spectral_radius(m)
    return MatrixStats(
        mean=mean,
        mean_squared=mean * mean,
        mean_of_squares=mean_of_squares,
        std_dev=float(np.sqrt(variance)),
        spectral_radius=sr,
    )


def save_matrix(path, m: np.ndarray) -> None:
    """Persist a dense matrix as text: a `rows,cols` header line, then one
    comma-separated line of full-precision entries per row."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{m.shape[0]},{m.shape[1]}\n")
        for row in m:
            fh.write(",".join(repr(v) for v in row) + "\n")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        rows, cols = (int(x) for x in fh.readline().split(","))
        m = np.loadtxt(fh, delimiter=",", ndmin=2)
    if m.shape != (rows, cols):
        raise ValueError(f"matrix file header says {(rows, cols)}, data is {m.shape}")
    return m

"""Internal-opinion vectors: generators, validation and file I/O."""
from __future__ import annotations

import io
import json

import numpy as np

RNG_NAME = "numpy.PCG64"


class OpinionError(ValueError):
    pass


def _check_n(n):
    if n < 1:
        raise OpinionError("n must be >= 1")


def validate(s, n: int | None = None) -> np.ndarray:
    """Return ``s`` as a float64 array after checking length and the [0, 1] range."""
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 1:
        raise OpinionError("opinions must be a 1-d vector")
    if n is not None and len(s) != n:
        raise OpinionError(f"expected {n} opinions, got {len(s)}")
    if not np.all(np.isfinite(s)) or s.min(initial=0.0) < 0.0 or s.max(initial=0.0) > 1.0:
        raise OpinionError("opinions must lie in [0, 1]")
    return s


def gen_uniform(n: int, seed=None) -> np.ndarray:
    _check_n(n)
    return np.random.default_rng(seed).random(n)


def exponential_raw(n: int, seed=None, x_min: float = 1.0) -> np.ndarray:
    """Samples from the density ``exp(x_min - x)`` on ``[x_min, inf)``."""
    _check_n(n)
    if not x_min > 0:
        raise OpinionError("x_min must be positive")
    return x_min + np.random.default_rng(seed).standard_exponential(n)


def gen_exponential(n: int, seed=None, x_min: float = 1.0) -> np.ndarray:
    x = exponential_raw(n, seed, x_min)
    return x / x.max()


def powerlaw_raw(n: int, seed=None, alpha: float = 2.5, x_min: float = 1.0) -> np.ndarray:
    """Pareto samples by inverse CDF, ``x_min * (1-U)**(-1/(alpha-1))``."""
    _check_n(n)
    if not alpha > 1:
        raise OpinionError("alpha must exceed 1")
    if not x_min > 0:
        raise OpinionError("x_min must be positive")
    u = np.random.default_rng(seed).random(n)
    return x_min * (1.0 - u) ** (-1.0 / (alpha - 1.0))


def gen_powerlaw(n: int, seed=None, alpha: float = 2.5, x_min: float = 1.0) -> np.ndarray:
    x = powerlaw_raw(n, seed, alpha, x_min)
    return x / x.max()


GENERATORS = {
    "unif": gen_uniform,
    "exp": gen_exponential,
    "pow": gen_powerlaw,
}


def generate(dist: str, n: int, seed=None, **params) -> tuple[np.ndarray, dict]:
    """Dispatch on ``dist`` and return ``(s, metadata)``."""
    if dist not in GENERATORS:
        raise OpinionError(f"unknown distribution {dist!r}; choose from {sorted(GENERATORS)}")
    if dist == "unif":
        params = {}
    elif dist == "exp":
        params = {"x_min": params.get("x_min", 1.0)}
    else:
        params = {"alpha": params.get("alpha", 2.5), "x_min": params.get("x_min", 1.0)}
    s = GENERATORS[dist](n, seed, **params)
    meta = {"distribution": dist, "n": n, "seed": seed, "rng": RNG_NAME, **params}
    return s, meta


def summary(s) -> dict:
    s = np.asarray(s)
    total = float(s.sum())
    return {"s_sum": total, "s_min": float(s.min()), "s_max": float(s.max()),
            "s_bar": total / len(s)}


def load_opinions(source, n: int) -> np.ndarray:
    if isinstance(source, str):
        source = io.StringIO(source)
    vals = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        try:
            vals.append(float(line))
        except ValueError:
            raise OpinionError(f"line {lineno}: not a number: {line!r}") from None
    return validate(vals, n)


def read_opinions(path, n: int) -> np.ndarray:
    with open(path) as fh:
        return load_opinions(fh, n)


def write_vector(path, x, meta: dict | None = None):
    """One ``repr``-exact real per line, plus a ``.json`` sidecar when ``meta`` is given."""
    with open(path, "w") as fh:
        fh.writelines(f"{v!r}\n" for v in map(float, x))
    if meta is not None:
        with open(str(path) + ".json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)

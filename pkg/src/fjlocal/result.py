from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np


class NumericalFailure(RuntimeError):
    """Base class for solver aborts that leave a partial state behind."""

    def __init__(self, msg, state=None):
        super().__init__(msg)
        self.state = state


class WatchdogError(NumericalFailure):
    pass


class DivergenceError(NumericalFailure):
    pass


@dataclass
class EstimateResult:
    z_hat: np.ndarray
    method: str
    epsilon: Optional[float] = None
    sigma: Optional[float] = None
    c: Optional[float] = None
    omega: Optional[float] = None
    pushes: int = 0
    touched_arcs: int = 0
    walks: int = 0
    samples: int = 0
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    def record(self) -> dict:
        """Everything except the vector, JSON-ready."""
        out = asdict(self)
        del out["z_hat"]
        return {k: v for k, v in out.items() if v is not None}

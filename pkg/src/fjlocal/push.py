"""Deterministic bounded local iteration (BLI) for the FJ equilibrium.

Popping ``v`` moves ``r_v / (1 + d_v)`` into ``z_hat[v]`` and the same amount
into the residual of every node that listens to ``v`` (its in-neighbours).
Throughout, ``z - z_hat = (I + L)^{-1} r``, so driving ``r <= eps * s``
certifies ``(1 - eps) z <= z_hat <= z`` elementwise.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import _kernels as K
from .graph import Graph
from .oracle import solve_dense
from .result import DivergenceError, EstimateResult, WatchdogError

DEFAULT_EPSILON = 1e-2
DEFAULT_SIGMA = 1e-5
DEFAULT_C = 1e-5
DEFAULT_MAX_PUSHES = 10**9
# residual magnitude (relative to max s) beyond which SOR is declared divergent
DIVERGENCE_FACTOR = 1e6


@dataclass
class PushState:
    z_hat: np.ndarray
    r: np.ndarray
    threshold: np.ndarray
    queue: np.ndarray
    in_queue: np.ndarray
    ctr: np.ndarray = field(default_factory=lambda: np.zeros(4, dtype=np.int64))
    pop_log: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    @classmethod
    def start(cls, r0, threshold, record_pops=False):
        """``z_hat = 0``, ``r = r0`` and every node queued in ascending order."""
        n = len(r0)
        st = cls(
            z_hat=np.zeros(n),
            r=np.array(r0, dtype=np.float64),
            threshold=np.asarray(threshold, dtype=np.float64),
            queue=np.arange(n, dtype=np.int64),
            in_queue=np.ones(n, dtype=np.uint8),
        )
        st.ctr[1] = n
        if record_pops:
            st.pop_log = np.empty(max(4 * n, 16), dtype=np.int64)
        return st

    @property
    def pushes(self) -> int:
        return int(self.ctr[2])

    @property
    def touched_arcs(self) -> int:
        return int(self.ctr[3])

    @property
    def queue_size(self) -> int:
        return int(self.ctr[1])

    def queued(self) -> np.ndarray:
        """Current queue contents in FIFO order."""
        head, size = int(self.ctr[0]), int(self.ctr[1])
        return np.roll(self.queue, -head)[:size].copy()

    def pops(self) -> np.ndarray:
        return self.pop_log[: self.pushes].copy()

    def certificate(self) -> float:
        """``max_v (|r_v| - threshold_v)``; non-positive once the run has ended."""
        return float(np.max(np.abs(self.r) - self.threshold, initial=-np.inf))


Checkpoint = Callable[[PushState], None]


def _schedule(every, at):
    if at is not None:
        return iter(sorted(set(int(a) for a in at if a > 0)))
    if every:
        from itertools import count
        return count(every, every)
    return iter(())


def run_push(G: Graph, state: PushState, omega: Optional[float] = None,
             max_pushes: int = DEFAULT_MAX_PUSHES, blowup: float = np.inf,
             checkpoint: Optional[Checkpoint] = None, every: Optional[int] = None,
             at: Optional[Iterable[int]] = None) -> PushState:
    """Drive ``state`` to termination with the BLI kernel, or SOR when ``omega`` is given.

    ``checkpoint(state)`` is called whenever the push count reaches a value in
    ``at`` (or a multiple of ``every``), and once more at the end.
    """
    sched = _schedule(every, at) if checkpoint else iter(())
    nxt = next(sched, None)
    while True:
        stop_at = np.iinfo(np.int64).max if nxt is None else nxt
        args = (G.in_offsets, G.in_targets, G.d, state.z_hat, state.r, state.threshold,
                state.queue, state.in_queue, state.ctr, stop_at, max_pushes, state.pop_log)
        if omega is None:
            status = K.bli_push(*args)
        else:
            status = K.sor_push(*args, float(omega), float(blowup))
        if status == K.PAUSED:
            checkpoint(state)
            nxt = next(sched, None)
        elif status == K.LOG_FULL:
            state.pop_log = np.concatenate([state.pop_log, np.empty_like(state.pop_log)])
        elif status == K.WATCHDOG:
            raise WatchdogError(
                f"push cap {max_pushes} reached with {state.queue_size} nodes still queued; "
                "some internal opinions are probably zero, use improved_bli instead",
                state,
            )
        elif status == K.DIVERGED:
            raise DivergenceError(
                f"residual exceeded {blowup:.3g} after {state.pushes} pushes; "
                f"omega={omega} does not converge on this graph",
                state,
            )
        else:
            if checkpoint:
                checkpoint(state)
            return state


def _check_eps(epsilon):
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")


def _check_shift(sigma, c):
    if not sigma > 0 or not c > 0:
        raise ValueError("sigma and c must be positive")


def shifted_epsilon(epsilon: float, sigma: float, c: float) -> float:
    return sigma * epsilon / (c + sigma)


def bound_local_iter(G: Graph, s, epsilon: float = DEFAULT_EPSILON, *,
                     max_pushes: int = DEFAULT_MAX_PUSHES, record_pops: bool = False,
                     checkpoint: Optional[Checkpoint] = None, every=None, at=None,
                     return_state: bool = False):
    """BLI with thresholds ``eps * s``.

    Termination needs every node to have positive internal opinion (or to
    never receive residual); otherwise the push cap raises
    :class:`WatchdogError`.
    """
    _check_eps(epsilon)
    s = np.asarray(s, dtype=np.float64)
    t0 = time.perf_counter()
    st = PushState.start(s, epsilon * s, record_pops)
    run_push(G, st, None, max_pushes, checkpoint=checkpoint, every=every, at=at)
    res = EstimateResult(st.z_hat.copy(), "bli-raw", epsilon=epsilon, pushes=st.pushes,
                         touched_arcs=st.touched_arcs, wall_time=time.perf_counter() - t0)
    return (res, st) if return_state else res


def improved_bli(G: Graph, s, epsilon: float = DEFAULT_EPSILON, sigma: float = DEFAULT_SIGMA,
                 c: float = DEFAULT_C, *, max_pushes: int = DEFAULT_MAX_PUSHES,
                 record_pops: bool = False, checkpoint: Optional[Checkpoint] = None,
                 every=None, at=None, return_state: bool = False):
    """BLI on the shifted opinions ``s + c``, then shift back.

    With ``eps' = sigma * eps / (c + sigma)`` every node whose equilibrium
    exceeds ``sigma`` gets the usual ``(1 - eps)`` relative band.  All
    thresholds are positive, so the loop always terminates.
    """
    _check_eps(epsilon)
    _check_shift(sigma, c)
    s_eff = np.asarray(s, dtype=np.float64) + c
    eps_p = shifted_epsilon(epsilon, sigma, c)
    t0 = time.perf_counter()
    st = PushState.start(s_eff, eps_p * s_eff, record_pops)
    run_push(G, st, None, max_pushes, checkpoint=checkpoint, every=every, at=at)
    res = EstimateResult(st.z_hat - c, "bli", epsilon=epsilon, sigma=sigma, c=c,
                         pushes=st.pushes, touched_arcs=st.touched_arcs,
                         wall_time=time.perf_counter() - t0, extra={"epsilon_shifted": eps_p})
    return (res, st) if return_state else res


def residual_invariant_gap(G: Graph, s_effective, state: PushState, z=None, cap=None) -> float:
    """``max |(z - z_hat) - (I + L)^{-1} r|`` for a paused or finished run.

    ``s_effective`` is the opinion vector the kernel actually saw (``s + c``
    for the shifted variants).
    """
    if z is None:
        z = solve_dense(G, s_effective, cap)
    err = solve_dense(G, state.r, cap)
    return float(np.max(np.abs((z - state.z_hat) - err), initial=0.0))

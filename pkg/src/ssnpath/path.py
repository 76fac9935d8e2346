"""Pathwise continuation over a geometric penalty grid with warm starts.

The grid is lam_t = lambda0 * gamma^t for t = 0..num_knots-1 with
gamma in (0, 1). Each knot is solved by the fixed-penalty Newton solve,
initialized from the previous knot's output (the very first knot starts from
beta = 0, dual = X'y/n). At lambda0 = ||X'y/n||_inf that start is already
stationary, so the path begins at the null model. A knot whose active set
outgrows the sparsity cap ends the path; the knots completed so far are
returned.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import CgBreakdown, DegenerateResponse, NoiseTooLarge
from .problem import PrimalDualState, cold_start
from .solver import CgPolicy, SsnConfig, StopReason, ssn_solve

#: Fraction of the penalty kept as shrinkage under the shifted schedule.
SHIFT_KEEP_FRACTION = 0.1


@dataclass(frozen=True)
class PathConfig:
    """Grid and per-knot solve parameters.

    ``num_knots`` counts grid points (indices t = 0..num_knots-1).
    ``shift_schedule`` is one of:

    - ``"zero"``: no shift, every knot solves the stated problem;
    - ``"shifted"``: shift_t = 0.9 * lam_t + shift_delta, which keeps only a
      tenth of the penalty (plus ``shift_delta``) as shrinkage on the active
      coefficients while the support is still estimated at the full level.
      Requires shift_delta < 0.1 * lam_t at every knot, else the config is
      rejected; shift_delta = 0 is always feasible.
    - a tuple of per-knot shifts, each in [0, lam_t).

    ``sparsity_cap = None`` defaults to ceil(n/2) at run time.
    """

    lambda0: float
    gamma: float
    num_knots: int
    max_inner: int = 1
    shift_schedule: str | tuple = "zero"
    shift_delta: float = 0.0
    sparsity_cap: int | None = None
    cg: CgPolicy = field(default_factory=CgPolicy)
    residual_tol: float = 0.0

    def __post_init__(self):
        if not self.lambda0 > 0.0:
            raise ValueError("lambda0 must be positive")
        if not (0.0 < self.gamma < 1.0):
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if self.num_knots < 1:
            raise ValueError("num_knots must be at least 1")
        if self.max_inner < 1:
            raise ValueError("max_inner must be at least 1")
        if isinstance(self.shift_schedule, str):
            if self.shift_schedule not in ("zero", "shifted"):
                raise ValueError(f"unknown shift schedule {self.shift_schedule!r}")
            if self.shift_schedule == "shifted":
                if self.shift_delta < 0.0:
                    raise ValueError("shifted schedule needs shift_delta >= 0")
                lam_last = self.lam(self.num_knots - 1)
                if self.shift(self.num_knots - 1) >= lam_last:
                    raise ValueError(
                        "shifted schedule infeasible: shift reaches the penalty "
                        f"level at the last knot (lam = {lam_last:.3e}, "
                        f"delta = {self.shift_delta:.3e})"
                    )
        else:
            sched = tuple(float(s) for s in self.shift_schedule)
            if len(sched) != self.num_knots:
                raise ValueError("custom shift schedule must have one entry per knot")
            for t, s in enumerate(sched):
                if not (0.0 <= s < self.lam(t)):
                    raise ValueError(f"shift {s} at knot {t} is outside [0, lam_t)")
            object.__setattr__(self, "shift_schedule", sched)

    def lam(self, t):
        return self.lambda0 * self.gamma**t

    def shift(self, t):
        if self.shift_schedule == "zero":
            return 0.0
        if self.shift_schedule == "shifted":
            return (1.0 - SHIFT_KEEP_FRACTION) * self.lam(t) + self.shift_delta
        return self.shift_schedule[t]


@dataclass
class KnotRecord:
    """Per-knot solution in sparse (index, value) form plus the dense dual."""

    t: int
    lam: float
    indices: np.ndarray
    values: np.ndarray
    dual: np.ndarray
    iterations: int
    active_size: int
    stop_reason: str

    @property
    def nnz(self):
        return self.indices.shape[0]

    def beta_dense(self, p):
        beta = np.zeros(p)
        beta[self.indices] = self.values
        return beta

    def state(self, p):
        return PrimalDualState(self.beta_dense(p), self.dual.copy())


@dataclass
class PathResult:
    """Knot records in strictly decreasing penalty order, plus run metadata.

    ``terminated_at`` is the index of the knot that tripped the sparsity cap,
    or None if the full grid completed. Records at and past that knot are not
    retained.
    """

    records: list
    p: int
    wall_time_s: float
    terminated_at: int | None = None

    def __len__(self):
        return len(self.records)

    def lambdas(self):
        return np.array([r.lam for r in self.records])


def default_lambda0(prob):
    """Smallest penalty at which the null model is stationary: ||X'y/n||_inf."""
    lam0 = float(np.max(np.abs(prob.xty))) / prob.n
    if lam0 == 0.0:
        raise DegenerateResponse("X'y is zero; the response is orthogonal to every column")
    return lam0


def grid_floor_index(lambda0, gamma, floor):
    """Largest t with lambda0 * gamma^t > floor, requiring t >= 1 to exist.

    Raises NoiseTooLarge when even the second grid point is at or below the
    floor.
    """
    if not (0.0 < gamma < 1.0) or not lambda0 > 0.0 or not floor > 0.0:
        raise ValueError("need lambda0 > 0, gamma in (0, 1), floor > 0")
    if lambda0 * gamma <= floor:
        raise NoiseTooLarge(
            f"floor {floor:.3e} is not below the second grid point "
            f"{lambda0 * gamma:.3e}; no valid grid length exists"
        )
    t = 1
    while lambda0 * gamma ** (t + 1) > floor:
        t += 1
    return t


def sign_recovery_config(prob, sigma, max_inner=None, **kwargs):
    """Path configuration targeting exact sign recovery under low coherence.

    Uses gamma = 8/13 and the shifted schedule shift_t = 0.9 lam_t + delta
    with delta = 3 * lam_u, where lam_u = sigma * sqrt(2 log(p) / n) is the
    universal noise threshold. The grid stops at the last knot above
    10 * delta, which keeps the schedule feasible at every knot.
    ``max_inner`` should be at least the true support size when that is
    known; the default is 10.

    Raises
    ------
    NoiseTooLarge
        If 10 * delta is not below lambda0 * gamma, so no valid grid exists.
    """
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    lam_u = sigma * math.sqrt(2.0 * math.log(prob.p) / prob.n)
    delta = 3.0 * lam_u
    gamma = 8.0 / 13.0
    lambda0 = default_lambda0(prob)
    last = grid_floor_index(lambda0, gamma, 10.0 * delta)
    return PathConfig(
        lambda0=lambda0,
        gamma=gamma,
        num_knots=last + 1,
        max_inner=10 if max_inner is None else max_inner,
        shift_schedule="shifted",
        shift_delta=delta,
        **kwargs,
    )


def solve_path(prob, config):
    """Run the fixed-penalty solve over the grid with warm starts.

    Knot t's initial state is exactly knot t-1's output state. Knot-level
    solver failures propagate with the knot index attached.
    """
    cap = config.sparsity_cap if config.sparsity_cap is not None else math.ceil(0.5 * prob.n)
    state = cold_start(prob)
    records = []
    terminated_at = None
    start = time.perf_counter()
    for t in range(config.num_knots):
        lam = config.lam(t)
        knot_cfg = SsnConfig(
            lam=lam,
            shift=config.shift(t),
            max_iter=config.max_inner,
            cg=config.cg,
            sparsity_cap=cap,
            residual_tol=config.residual_tol,
        )
        try:
            out = ssn_solve(prob, state, knot_cfg)
        except CgBreakdown as exc:
            exc.knot = t
            raise
        if out.stop_reason is StopReason.SPARSITY_CAP:
            terminated_at = t
            break
        idx = np.flatnonzero(out.state.beta)
        records.append(
            KnotRecord(
                t=t,
                lam=lam,
                indices=idx,
                values=out.state.beta[idx].copy(),
                dual=out.state.dual.copy(),
                iterations=out.iterations,
                active_size=out.active.size,
                stop_reason=out.stop_reason.value,
            )
        )
        state = out.state
    return PathResult(records, prob.p, time.perf_counter() - start, terminated_at)


def write_path_csv(result, file, coef_file=None, selector=None):
    """Write knot summaries as CSV: (knot, lambda, nnz, inner_iters, stop_reason).

    ``coef_file`` receives the companion sparse coefficients (knot, index,
    value). A selector result, when given, is appended as a trailing comment
    row ``#selector,<criterion>,<chosen_knot>,<chosen_lambda>,<value>``.
    """

    def _write(f):
        f.write("#schema=1\n")
        f.write("knot,lambda,nnz,inner_iters,stop_reason\n")
        for r in result.records:
            f.write(f"{r.t},{r.lam:.17g},{r.nnz},{r.iterations},{r.stop_reason}\n")
        if selector is not None:
            value = selector.values[selector.chosen_knot]
            f.write(
                f"#selector,{selector.criterion},{selector.chosen_knot},"
                f"{selector.chosen_lambda:.17g},{value:.17g}\n"
            )

    def _write_coefs(f):
        f.write("#schema=1\n")
        f.write("knot,index,value\n")
        for r in result.records:
            for j, v in zip(r.indices, r.values):
                f.write(f"{r.t},{j},{v:.17g}\n")

    if hasattr(file, "write"):
        _write(file)
    else:
        with open(file, "w") as f:
            _write(f)
    if coef_file is not None:
        if hasattr(coef_file, "write"):
            _write_coefs(coef_file)
        else:
            with open(coef_file, "w") as f:
                _write_coefs(f)

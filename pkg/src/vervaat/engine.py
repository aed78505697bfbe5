"""Perfect sampling by coupling into and from the past.

One sample is produced in two phases.

Backward phase: the dominating walk is started at time 0 from its exact
stationary law (a geometric shifted to the floor x0 - 1, drawn via
``draw_initial_dominating``) and grown one step backwards at a time.  For
each backward step the uniform that would have driven the observed forward
transition is imputed from its conditional law: uniform on (2/3, 1) for a
forward up-move, uniform on (0, 2/3] for a forward down-move or hold.  The
step coalesces as soon as the imputed driver W(1) = U^(1/beta) falls to
1/(D + 1) or below, because the multigamma coupler then maps *every* state
in [0, D] to the same point.

Forward phase: from the coalescence time -T the chain restarts at a single
point X(-T+1) = W(2), a fresh draw, and is rolled forward to time 0 with
the coupler, reusing the imputed first drivers and drawing second drivers
lazily (only when the collapsing branch needs one).  X(0) is an exact draw
from the stationary perpetuity law.

Stream consumption order per sample (fixed so runs replay exactly): one or
more uniforms for the geometric start, then per backward step one uniform
for the walk direction followed by one for the imputation (zeros redrawn),
then during the forward phase one uniform per lazy second driver.  Second
drivers come from ``w2_stream`` when one is supplied (so reconstructions
can replay them) and otherwise continue on the main stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .streams import UniformStream, geometric_half
from .updates import TWO_THIRDS, VervaatParams, coupler_collapses

__all__ = [
    "BackwardPath",
    "SampleResult",
    "StepBudgetError",
    "draw_initial_dominating",
    "backward_extend",
    "run_ciaftp",
    "forward_reconstruct",
    "sample_many",
]


class StepBudgetError(RuntimeError):
    """Backward phase exceeded the per-sample step budget."""

    def __init__(self, beta: float, x0: int, budget: int):
        self.beta = beta
        self.x0 = x0
        self.expected_floor = x0**beta
        self.budget = budget
        super().__init__(
            f"no coalescence within {budget} backward steps for beta={beta:g}; "
            f"expected steps grow like x0^beta = {x0}^{beta:g} ~ "
            f"{self.expected_floor:.3g}"
        )


@dataclass(slots=True)
class BackwardPath:
    """Dominating-walk trajectory grown backwards, with imputed drivers.

    ``d_states[t]`` is the walk at time -t (so ``d_states[0]`` is D(0));
    ``imputed_u[t-1]`` is the uniform U(-t) imputed for the forward
    transition D(-t) -> D(-t+1).  Invariants: every state is >= x0 - 1,
    consecutive states differ by one unit except for holds at the floor,
    and imputed_u[t-1] > 2/3 exactly when that forward transition is an
    up-move.  ``coalesce_index`` is T once U(-T)^(1/beta) <= 1/(D(-T)+1),
    and no earlier step satisfies that test.
    """

    d_states: list[int]
    imputed_u: list[float] = field(default_factory=list)
    coalesce_index: int | None = None


@dataclass(slots=True)
class SampleResult:
    """One perfect draw with its step-count diagnostics."""

    value: float
    steps: int
    d0: int
    path: BackwardPath | None = None
    x_path: list[float] | None = None


def draw_initial_dominating(params: VervaatParams, stream) -> int:
    """Stationary start of the dominating walk: x0 - 2 + Geom(1/2)."""
    return params.x0 - 2 + geometric_half(stream)


def backward_extend(params: VervaatParams, path: BackwardPath, stream) -> BackwardPath:
    """Grow the path one step backwards; mark coalescence if it occurs.

    Consumes one uniform for the backward walk direction (up with
    probability 1/3) and one for the conditional imputation.  Imputation
    uses the affine inverse-CDF maps 2/3 + u/3 (forward up) and (2/3) u
    (forward down or hold); a raw uniform of exactly 0 is redrawn so every
    imputed value stays inside the open interval and powers of it are
    well defined.
    """
    if path.coalesce_index is not None:
        raise RuntimeError("path already coalesced; cannot extend backwards")
    d_states = path.d_states
    floor = params.x0 - 1
    d_prev = d_states[-1]

    u_dir = stream.next_uniform()
    if u_dir > TWO_THIRDS:
        d = d_prev + 1
    elif d_prev > floor:
        d = d_prev - 1
    else:
        d = floor

    u = stream.next_uniform()
    while u == 0.0:
        u = stream.next_uniform()
    if d_prev == d + 1:  # forward transition d -> d_prev moves up
        u_imp = TWO_THIRDS + u / 3.0
    else:
        u_imp = TWO_THIRDS * u

    d_states.append(d)
    path.imputed_u.append(u_imp)

    # Coalescence test at the W level.  u_imp ** inv_beta underflows to 0
    # only when the exact value is far below any representable 1/(1+d), so
    # underflow can never claim a coalescence that did not happen.
    w1 = u_imp**params.inv_beta
    if coupler_collapses(d, w1):
        path.coalesce_index = len(path.imputed_u)
    return path


def run_ciaftp(
    params: VervaatParams,
    stream,
    w2_stream=None,
    collect_path: bool = False,
) -> SampleResult:
    """Produce one exact draw from the stationary perpetuity law.

    ``w2_stream``, when given, supplies the second coupler drivers so that
    :func:`forward_reconstruct` can replay them; otherwise they are drawn
    from ``stream`` after the backward phase.  ``collect_path`` attaches
    the backward path and the forward trajectory to the result.

    Raises :class:`StepBudgetError` if the backward phase exceeds
    ``params.step_budget`` steps (only plausible for large beta, where the
    expected step count x0^beta is itself enormous).
    """
    d0 = draw_initial_dominating(params, stream)
    path = BackwardPath(d_states=[d0])
    budget = params.step_budget
    while path.coalesce_index is None:
        if len(path.imputed_u) >= budget:
            raise StepBudgetError(params.beta, params.x0, budget)
        backward_extend(params, path, stream)
    t_coal = path.coalesce_index

    w2s = stream if w2_stream is None else w2_stream
    inv_beta = params.inv_beta
    imputed = path.imputed_u
    x = w2s.next_uniform() ** inv_beta  # X(-T+1) = W(-T)(2), any start collapses here
    x_path = [x] if collect_path else None
    for s in range(t_coal - 1, 0, -1):
        w1 = imputed[s - 1] ** inv_beta
        if coupler_collapses(x, w1):
            x = w2s.next_uniform() ** inv_beta
        else:
            x = w1 * (1.0 + x)
        if collect_path:
            x_path.append(x)
    return SampleResult(
        value=x,
        steps=t_coal,
        d0=d0,
        path=path if collect_path else None,
        x_path=x_path,
    )


def forward_reconstruct(
    params: VervaatParams, path: BackwardPath, stream, start: float
) -> float:
    """Roll the coupler forward from ``start`` at the coalescence time.

    ``stream`` supplies the second drivers; pass streams with identical
    seed and index to compare different starts against the same draws.
    Because the first application at time -T takes the collapsing branch
    for every start in [0, D(-T)], all starts consume the same lazy draws
    and return the same X(0).
    """
    t_coal = path.coalesce_index
    if t_coal is None:
        raise ValueError("path has not coalesced; nothing to reconstruct")
    d_top = path.d_states[t_coal]
    if not 0 <= start <= d_top:
        raise ValueError(
            f"start must lie in [0, D(-T)] = [0, {d_top}], got {start}"
        )
    inv_beta = params.inv_beta
    imputed = path.imputed_u
    x = float(start)
    for s in range(t_coal, 0, -1):
        w1 = imputed[s - 1] ** inv_beta
        if coupler_collapses(x, w1):
            x = stream.next_uniform() ** inv_beta
        else:
            x = w1 * (1.0 + x)
    return x


def sample_many(
    params: VervaatParams, n: int, seed: int, first_index: int = 0
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw ``n`` perfect samples, sample i on substream first_index + i.

    Returns (values, steps, d0) arrays.  Results depend only on
    (seed, substream index), never on batching or worker layout, so any
    partition of the index range reproduces the same rows.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    values = np.empty(n)
    steps = np.empty(n, dtype=np.int64)
    d0s = np.empty(n, dtype=np.int64)
    stream = UniformStream(seed, first_index)
    for i in range(n):
        stream.restart(first_index + i)
        r = run_ciaftp(params, stream)
        values[i] = r.value
        steps[i] = r.steps
        d0s[i] = r.d0
    return values, steps, d0s

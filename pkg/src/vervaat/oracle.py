"""Independent ground truth and the statistical validation harness.

Nothing here touches the coupling machinery: samples come from the
defining series Y = W1 + W1 W2 + W1 W2 W3 + ..., truncated at a depth
whose geometric tail bound makes the bias negligible, and moments come in
closed form from the fixed point Y =d W (1 + Y):

    E W = beta / (beta + 1)          E Y  = beta
    E W^2 = beta / (beta + 2)        E Y^2 = beta (1 + 2 beta) / 2

``validate_run`` draws the same number of samples from the perfect sampler
and from the truncated series and compares them: a two-sample KS test at
the 1% level, z-scores of mean and variance, and for beta = 1 the known
step-count tail percentages and the Dickman mass exp(-gamma) of (0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import sample_many
from .updates import VervaatParams

__all__ = [
    "EULER_GAMMA",
    "truncated_sum_sample",
    "truncated_sum_batch",
    "oracle_depth",
    "truncation_bias",
    "exact_moments",
    "ks_two_sample",
    "ks_critical_value",
    "stationarity_check",
    "Check",
    "TestReport",
    "validate_run",
]

#: Euler's constant, 15 significant digits; exp(-EULER_GAMMA) is the
#: Dickman density on (0, 1] and hence the mass of that interval.
EULER_GAMMA = 0.577215664901533

#: Substream index reserved for oracle draws, far above any per-sample
#: engine index.
_ORACLE_STREAM_INDEX = 1 << 62

_BATCH_ROWS = 65536


def truncated_sum_sample(params: VervaatParams, depth: int, stream) -> float:
    """One draw of the series truncated after ``depth`` products.

    The mean of the discarded tail is (E W)^(depth+1) / (1 - E W); see
    :func:`oracle_depth` for choosing the depth.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    inv_beta = params.inv_beta
    total = 0.0
    prod = 1.0
    for _ in range(depth):
        prod *= stream.next_uniform() ** inv_beta
        total += prod
    return total


def truncated_sum_batch(
    params: VervaatParams, depth: int, n: int, stream
) -> np.ndarray:
    """``n`` independent truncated-series draws (vectorized, chunked)."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    out = np.empty(n)
    done = 0
    while done < n:
        m = min(_BATCH_ROWS, n - done)
        u = stream.uniforms(m * depth).reshape(m, depth)
        np.power(u, params.inv_beta, out=u)
        out[done : done + m] = np.cumprod(u, axis=1).sum(axis=1)
        done += m
    return out


def truncation_bias(beta: float, depth: int) -> float:
    """Expected mass of the discarded tail: (E W)^(depth+1) / (1 - E W)."""
    ew = beta / (beta + 1.0)
    return ew ** (depth + 1) / (1.0 - ew)


def oracle_depth(beta: float, tol: float = 1e-9) -> int:
    """Smallest depth with expected truncation bias at most ``tol``."""
    ew = beta / (beta + 1.0)
    depth = math.ceil(math.log(tol * (1.0 - ew)) / math.log(ew)) - 1
    depth = max(depth, 0)
    while truncation_bias(beta, depth) > tol:
        depth += 1
    return depth


def exact_moments(beta: float) -> tuple[float, float]:
    """(mean, second moment) of the perpetuity: (beta, beta (1 + 2 beta)/2)."""
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    return beta, beta * (1.0 + 2.0 * beta) / 2.0


def ks_two_sample(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    a = np.sort(a)
    b = np.sort(b)
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / a.size
    cdf_b = np.searchsorted(b, grid, side="right") / b.size
    return float(np.abs(cdf_a - cdf_b).max())


def ks_critical_value(m: int, n: int, alpha: float = 0.01) -> float:
    """Asymptotic two-sample KS critical value c(alpha) sqrt((m+n)/(mn)).

    c(0.01) = sqrt(-ln(0.005)/2) ~ 1.628; the asymptotic form is accurate
    at the sample sizes used here (10^4 and up).
    """
    c = math.sqrt(-math.log(alpha / 2.0) / 2.0)
    return c * math.sqrt((m + n) / (m * n))


def stationarity_check(params: VervaatParams, support_size: int) -> float:
    """Residual max |pi P - pi| of the shifted geometric under the walk.

    pi(x0 - 1 + k) = 2^-(k+1) should be invariant for the kernel that moves
    down with probability 2/3 (holding at the floor) and up with 1/3.  On a
    truncated support the result is exact up to rounding at interior states;
    the top state carries a truncation leak of order 2^-support_size, so
    small supports report a visibly nonzero residual.  The kernel does not
    depend on beta, so the residual is parameter-free apart from the floor
    shift.
    """
    if support_size < 2:
        raise ValueError(f"support_size must be >= 2, got {support_size}")
    k = support_size
    pi = 0.5 ** (np.arange(k) + 1.0)
    p = np.zeros((k, k))
    p[0, 0] = 2.0 / 3.0
    p[0, 1] = 1.0 / 3.0
    for j in range(1, k):
        p[j, j - 1] = 2.0 / 3.0
        if j + 1 < k:
            p[j, j + 1] = 1.0 / 3.0
    return float(np.abs(pi @ p - pi).max())


@dataclass(frozen=True, slots=True)
class Check:
    """One named validation check; passes iff statistic <= threshold."""

    name: str
    statistic: float
    threshold: float
    sample_sizes: tuple[int, ...]
    passed: bool


@dataclass(slots=True)
class TestReport:
    """Outcome of the validation suite for one parameter point."""

    beta: float
    n: int
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "n": self.n,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "statistic": c.statistic,
                    "threshold": c.threshold,
                    "sample_sizes": list(c.sample_sizes),
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }


def _check(name, statistic, threshold, sizes) -> Check:
    statistic = float(statistic)
    threshold = float(threshold)
    return Check(name, statistic, threshold, tuple(sizes), statistic <= threshold)


# beta = 1 step-count tail targets with the tolerances used at n = 10^6;
# at smaller n the thresholds widen to 5 standard errors so the harness
# stays usable at its n >= 10^4 minimum.
_DICKMAN_TAILS = (
    ("steps_eq_1", lambda s: s == 1, 0.174, 0.003),
    ("steps_gt_4", lambda s: s > 4, 0.476, 0.004),
    ("steps_gt_8", lambda s: s > 8, 0.234, 0.004),
    ("steps_gt_27", lambda s: s > 27, 0.010, 0.002),
)


def _sample_parallel(params, n, seed, threads):
    """Fan sample_many out over worker threads; sample i is always on
    substream i, so the result is identical for every thread count."""
    if threads <= 1:
        return sample_many(params, n, seed)
    from concurrent.futures import ThreadPoolExecutor

    chunk = math.ceil(n / threads)
    spans = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda span: sample_many(
                    params, span[1] - span[0], seed, first_index=span[0]
                ),
                spans,
            )
        )
    return tuple(np.concatenate([p[k] for p in parts]) for k in range(3))


def validate_run(
    params: VervaatParams,
    n: int,
    seed: int,
    depth: int | None = None,
    threads: int = 1,
) -> TestReport:
    """Run engine and oracle side by side and report the comparison.

    Draws n perfect samples (substreams 0..n-1 of ``seed``) and n
    truncated-series samples (a reserved oracle substream), then checks:
    KS distance below the asymptotic 1% critical value, |z| of the sample
    mean against beta at most 4, |z| of the sample variance against
    beta (1 + 2 beta)/2 - beta^2 at most 5 (variance standard error taken
    from the empirical fourth moment), and for beta = 1 the step-count
    tails and the Dickman unit-interval mass.  ``threads`` only spreads
    the engine phase over workers; it never changes the report.
    """
    if n < 10**4:
        raise ValueError(f"n must be at least 10^4, got {n}")
    from .streams import UniformStream

    values, steps, _ = _sample_parallel(params, n, seed, threads)
    if depth is None:
        depth = oracle_depth(params.beta)
    oracle_values = truncated_sum_batch(
        params, depth, n, UniformStream(seed, _ORACLE_STREAM_INDEX)
    )

    report = TestReport(beta=params.beta, n=n, seed=seed)
    checks = report.checks

    d = ks_two_sample(values, oracle_values)
    checks.append(_check("ks_engine_vs_oracle", d, ks_critical_value(n, n), (n, n)))

    mean, second = exact_moments(params.beta)
    variance = second - mean**2
    se_mean = values.std() / math.sqrt(n)
    checks.append(
        _check("mean_z", abs(values.mean() - mean) / se_mean, 4.0, (n,))
    )
    centered = values - values.mean()
    sample_var = float(np.mean(centered**2))
    m4 = float(np.mean(centered**4))
    se_var = math.sqrt(max(m4 - sample_var**2, 0.0) / n)
    checks.append(
        _check("variance_z", abs(sample_var - variance) / se_var, 5.0, (n,))
    )

    if params.beta == 1.0:
        for name, pred, target, tol in _DICKMAN_TAILS:
            freq = float(pred(steps).mean())
            se = math.sqrt(target * (1.0 - target) / n)
            checks.append(
                _check(name, abs(freq - target), max(tol, 5.0 * se), (n,))
            )
        unit_mass = float(((values > 0.0) & (values <= 1.0)).mean())
        target = math.exp(-EULER_GAMMA)
        se = math.sqrt(target * (1.0 - target) / n)
        checks.append(
            _check(
                "dickman_unit_mass",
                abs(unit_mass - target),
                max(0.005, 5.0 * se),
                (n,),
            )
        )
    return report

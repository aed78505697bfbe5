"""Command-line front end: sample, analyze, validate, trace.

Outputs are machine-readable and reproducible: sample row i is always
drawn on substream i of the given seed, so the same invocation produces
byte-identical output regardless of the thread count.  Exit codes:
0 success (all validation checks passed), 1 validation failure,
2 bad arguments, 3 step-budget abort.
"""

from __future__ import annotations

import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from .engine import StepBudgetError, run_ciaftp
from .oracle import validate_run
from .runtime import absorption_bracket, small_beta_constant, theorem_bounds
from .streams import UniformStream
from .updates import make_params

_BUDGET_EXIT = 3


def _fmt(x: float) -> str:
    """17 significant digits: enough for exact binary64 round-trips."""
    return f"{x:.17g}"


def _open_out(out):
    if out == "-":
        return sys.stdout, False
    return open(out, "w", encoding="utf-8", newline=""), True


def _emit(out, text):
    fh, close = _open_out(out)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def _beta_option(f):
    return click.option(
        "--beta", type=float, required=True, help="Perpetuity exponent (> 0)."
    )(f)


def _seed_option(f):
    return click.option(
        "--seed",
        type=int,
        default=0,
        show_default=True,
        help="Root seed (decimal 64-bit integer).",
    )(f)


def _out_option(f):
    return click.option(
        "--out",
        default="-",
        show_default=True,
        help="Output path, or - for standard output.",
    )(f)


@click.group()
def main():
    """Exact sampling from Vervaat perpetuities, with runtime analysis."""


def _params_or_usage(beta, **kwargs):
    try:
        return make_params(beta, **kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _sample_rows(params, seed, lo, hi):
    stream = UniformStream(seed, lo)
    rows = []
    for i in range(lo, hi):
        stream.restart(i)
        r = run_ciaftp(params, stream)
        rows.append((i, r.value, r.steps, r.d0))
    return rows


def _collect_rows(params, n, seed, threads):
    if threads <= 1:
        return _sample_rows(params, seed, 0, n)
    chunk = math.ceil(n / threads)
    spans = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda span: _sample_rows(params, seed, *span), spans)
        return [row for part in parts for row in part]


@main.command()
@_beta_option
@click.option("--n", type=int, default=10, show_default=True, help="Number of samples.")
@_seed_option
@click.option("--threads", type=int, default=1, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
)
@_out_option
def sample(beta, n, seed, threads, fmt, out):
    """Draw perfect samples; one row per draw (index, y_value, steps, d0)."""
    if n < 1:
        raise click.UsageError(f"--n must be >= 1, got {n}")
    if threads < 1:
        raise click.UsageError(f"--threads must be >= 1, got {threads}")
    params = _params_or_usage(beta)
    try:
        rows = _collect_rows(params, n, seed, threads)
    except StepBudgetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_BUDGET_EXIT)
    if fmt == "csv":
        lines = ["index,y_value,steps,d0"]
        lines += [f"{i},{_fmt(v)},{s},{d}" for i, v, s, d in rows]
        _emit(out, "\n".join(lines) + "\n")
    else:
        payload = [
            {"index": i, "y_value": v, "steps": s, "d0": d} for i, v, s, d in rows
        ]
        _emit(out, json.dumps(payload, indent=2) + "\n")


@main.command()
@_beta_option
@click.option(
    "--truncation",
    type=int,
    default=400,
    show_default=True,
    help="States retained above the floor in the absorbing-chain solve.",
)
@_out_option
def analyze(beta, truncation, out):
    """Report runtime bounds and the exact expected-step bracket."""
    if truncation < 2:
        raise click.UsageError(f"--truncation must be >= 2, got {truncation}")
    params = _params_or_usage(beta)
    bounds = theorem_bounds(params)
    bracket = absorption_bracket(params, truncation)
    payload = {
        "beta": params.beta,
        "x0": params.x0,
        "w_threshold": params.w_threshold,
        "bounds": {"lower": bounds.lower, "upper": bounds.upper},
        "bracket": {
            "lower": bracket.lower,
            "upper": bracket.upper,
            "truncation": bracket.truncation,
        },
        "c": small_beta_constant(1e-9),
    }
    _emit(out, json.dumps(payload, indent=2) + "\n")


@main.command()
@_beta_option
@click.option("--n", type=int, default=100_000, show_default=True)
@_seed_option
@click.option(
    "--depth",
    type=int,
    default=None,
    help="Oracle series depth (default: tail bias below 1e-9).",
)
@click.option("--threads", type=int, default=1, show_default=True)
@_out_option
def validate(beta, n, seed, depth, threads, out):
    """Compare the sampler against the series oracle; exit 1 on failure."""
    if n < 10**4:
        raise click.UsageError(f"--n must be at least 10^4, got {n}")
    if threads < 1:
        raise click.UsageError(f"--threads must be >= 1, got {threads}")
    params = _params_or_usage(beta)
    try:
        report = validate_run(params, n, seed, depth=depth, threads=threads)
    except StepBudgetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_BUDGET_EXIT)
    _emit(out, json.dumps(report.to_dict(), indent=2) + "\n")
    if not report.passed:
        sys.exit(1)


@main.command()
@_beta_option
@_seed_option
@click.option("--n", type=int, default=1, help="Must be 1: trace is a single run.")
@_out_option
def trace(beta, seed, n, out):
    """Render one run: backward walk, imputed uniforms, forward trajectory."""
    if n != 1:
        raise click.UsageError(f"trace runs a single sample; --n must be 1, got {n}")
    params = _params_or_usage(beta)
    stream = UniformStream(seed, 0)  # matches sample row 0 exactly
    try:
        r = run_ciaftp(params, stream, collect_path=True)
    except StepBudgetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_BUDGET_EXIT)
    path = r.path
    t = path.coalesce_index
    lines = [
        f"beta = {_fmt(params.beta)}  x0 = {params.x0}  "
        f"w_threshold = {_fmt(params.w_threshold)}",
        f"D   (time 0 .. -{t}): " + " ".join(str(d) for d in path.d_states),
        f"U   (time -1 .. -{t}): " + " ".join(_fmt(u) for u in path.imputed_u),
        f"T = {t}",
        f"X   (time {-(t - 1)} .. 0): " + " ".join(_fmt(x) for x in r.x_path),
        f"X0 = {_fmt(r.value)}",
    ]
    _emit(out, "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

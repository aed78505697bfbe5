"""How many backward steps does a perfect draw cost?

Three answers, from coarse to exact, all for the same quantity E T:

  1. closed-form bounds      x0^beta <= E T <= 2 (x0+1)^beta + 3
  2. a rigorous numerical bracket from the truncated absorbing chain
  3. a simulation estimate from the sampler itself

The bracket needs no simulation: T is distributed as the absorption time
of the dominating walk run forward from stationarity, absorbing from
state d with probability (d+1)^(-beta), and the expected-hitting-time
system is tridiagonal.

Run:  python demos/02_runtime_analysis.py
"""

import math

from vervaat import absorption_bracket, make_params, sample_many, theorem_bounds

print(f"{'beta':>6} {'x0':>5} {'lower':>10} {'bracket (exact E T)':>28} "
      f"{'upper':>10} {'simulated':>12}")

for beta, n in ((0.1, 100_000), (0.25, 100_000), (0.5, 100_000),
                (1.0, 100_000), (2.0, 20_000)):
    params = make_params(beta)
    bounds = theorem_bounds(params)
    bracket = absorption_bracket(params, truncation=400)
    _, steps, _ = sample_many(params, n, seed=2)
    mean = steps.mean()
    se = steps.std() / math.sqrt(n)
    mid = 0.5 * (bracket.lower + bracket.upper)
    print(f"{beta:>6} {params.x0:>5} {bounds.lower:>10.3f} "
          f"{mid:>28.12f} {bounds.upper:>10.3f} "
          f"{mean:>9.3f}+-{2 * se:.3f}")

print("\nThe Dickman case in full precision:")
bracket = absorption_bracket(make_params(1.0), truncation=400)
print(f"  E T in [{bracket.lower:.15f}, {bracket.upper:.15f}]")
print(f"  bracket width {bracket.width:.3e}")

print("\nBracket tightening with the truncation level (beta = 1):")
for trunc in (2, 5, 10, 20, 50, 100):
    b = absorption_bracket(make_params(1.0), trunc)
    print(f"  truncation {trunc:>4}: width {b.width:.3e}")

"""The statistical validation harness, end to end.

The sampler is checked against machinery that shares none of its code:
samples from the defining series (truncated where the geometric tail bound
is negligible), closed-form moments from the fixed point, and for beta = 1
the known flat-density mass of (0, 1] and step-count tail percentages.

Run:  python demos/04_validation_harness.py
"""

from vervaat import make_params, validate_run

for beta in (0.5, 1.0):
    report = validate_run(make_params(beta), n=50_000, seed=90210)
    print(f"beta = {beta}  (n = {report.n}, seed = {report.seed})")
    for check in report.checks:
        flag = "ok " if check.passed else "FAIL"
        print(f"  [{flag}] {check.name:<22} statistic {check.statistic:10.5f}"
              f"   threshold {check.threshold:10.5f}")
    print(f"  => {'all checks passed' if report.passed else 'FAILURES PRESENT'}\n")

print("The same report is what `vervaat validate` emits as JSON; its exit")
print("code (0 pass / 1 fail) makes the harness scriptable in CI.")

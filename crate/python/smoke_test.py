"""Smoke test for the hypsum_py extension. Build it first:

    pip install --no-build-isolation ./crates/python
"""

import math
import os
import sys
import tempfile

import mpmath

import hypsum_py as h


def close(a, b, tol):
    return abs(a - b) <= tol * max(abs(b), 1e-300)


def main():
    mpmath.mp.dps = 30
    failures = []

    def check(name, ok):
        print(("ok   " if ok else "FAIL ") + name)
        if not ok:
            failures.append(name)

    check("gamma(0.5)", close(h.gamma(0.5), math.sqrt(math.pi), 1e-14))
    check("digamma(1)", close(h.digamma(1).real, -float(mpmath.euler), 1e-14))
    check("zeta(3)", close(h.zeta(3.0), float(mpmath.zeta(3)), 1e-12))
    check("bessel_j(1, 2)", close(h.bessel_j(1.0, 2.0), float(mpmath.besselj(1, 2)), 1e-14))

    for c, d, n in [(0.5, 3.0, 0), (0.4 + 0.3j, 3.1 - 0.2j, 2), (-1.5, 2.25, 5)]:
        ref = complex(mpmath.hyp3f2(1, 1, c, d, n + 2, 1))
        closed = h.theorem1(c, d, n).value
        series = h.sum_3f2([1, 1, c], [d, n + 2]).value
        check(f"theorem1 c={c} d={d} n={n}", close(closed, ref, 1e-12))
        check(f"sum_3f2 c={c} d={d} n={n}", close(series, ref, 1e-9))

    try:
        h.theorem1(1.0, 3.0, 0)
        check("removable point raises", False)
    except ArithmeticError:
        check("removable point raises", True)
    lim = h.theorem1(1.0, 3.0, 0, limit_mode="epsilon").value
    check("epsilon limit at c=1", close(lim, complex(mpmath.hyp3f2(1, 1, 1, 3, 2, 1)), 1e-6))

    mp = h.miller_paris(0.3, 0.7, 2.5, 1, 2)
    check("miller_paris", close(mp, complex(mpmath.hyp3f2(0.3, 0.7, 1, 2.5, 3, 1)), 1e-10))

    s = h.BesselSum(0.5, 0.5, 2.0, 1.0, 1)
    exp = s.expansion_unequal().value
    direct = s.direct(200_000).value
    check("bessel expansion vs direct", abs(exp - direct) < 1e-6)
    mu, nu, n = 0.7, 1.2, 2
    closed = h.BesselSum(mu, nu, 1.0, 1.0, n).hyp3f2_closed()
    check("psi closed form", close(closed, float(mpmath.hyp3f2(1, 1, 1 - mu, n + nu + 2, n + 2, 1)), 1e-10))

    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "r.csv")
        total, failed, path = h.run_verify("theorem1", samples=20, seed=42, out=out)
        with open(out) as f:
            lines = f.read().splitlines()
        check("run_verify", failed == 0 and total == len(lines) - 1 and str(path) == out)

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Scaling derivative of the G-function across random base points.

For the unfolding charts the increment of G along the scaling flow is a
point-independent constant (here it comes out zero: the tau and Jacobian
parts cancel, log tau = (1/24) log J up to a constant on these charts).  The
scan prints the measured per-unit-flow increments and their spread.
"""

import numpy as np

from frobforge import ChartEvaluator, build_an_chart, g_function


def main():
    for n in (2, 3):
        chart = build_an_chart(n)
        ev = ChartEvaluator(chart)
        weights = [float(chart.euler_linear[i][i]) for i in range(n)]
        rng = np.random.default_rng(1)
        lam = 0.25
        vals = []
        tries = 0
        while len(vals) < 8 and tries < 100:
            tries += 1
            base = np.ones(n) * 0.8 + 0.3 * rng.standard_normal(n) + 0.15j * rng.standard_normal(n)
            target = np.array([np.exp(w * lam) for w in weights]) * base
            try:
                gv = g_function(ev, base, target, tol=1e-9)
            except Exception:
                continue
            vals.append(gv.delta_g / lam)
        vals = np.array(vals)
        print(
            f"A{n}: scaling dG/dlambda over {len(vals)} base points: "
            f"mean={np.mean(vals):+.3e}  std={np.std(vals):.3e}"
        )


if __name__ == "__main__":
    main()

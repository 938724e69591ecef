#!/usr/bin/env python3
"""Build the bundled charts and write them as JSON next to a check summary.

Usage: python scripts/build_charts.py [outdir]
"""

import json
import pathlib
import sys
import time

from frobforge import build_an_chart, build_p2_chart, check_axioms, check_wdvv, virasoro_central_charge
from frobforge.serialize import chart_to_json


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "charts_out")
    outdir.mkdir(parents=True, exist_ok=True)
    for n in range(1, 6):
        t0 = time.perf_counter()
        chart = build_an_chart(n)
        wdvv = check_wdvv(chart)
        axioms = check_axioms(chart)
        path = outdir / f"a{n}.json"
        path.write_text(json.dumps(chart_to_json(chart), indent=2) + "\n")
        print(
            f"A{n}: d={chart.charge_d}  wdvv={'ok' if wdvv.passed else 'FAIL'}  "
            f"axioms={'ok' if axioms.passed else 'FAIL'}  "
            f"central charge={virasoro_central_charge(chart) if chart.charge_d != 1 else 'n/a'}  "
            f"[{time.perf_counter() - t0:.2f}s] -> {path}"
        )
    for degree in (3, 5):
        t0 = time.perf_counter()
        chart = build_p2_chart(degree)
        wdvv = check_wdvv(chart)
        path = outdir / f"p2_deg{degree}.json"
        path.write_text(json.dumps(chart_to_json(chart), indent=2) + "\n")
        print(
            f"P2 (degree {degree}): wdvv={'ok' if wdvv.passed else 'FAIL'} "
            f"[{time.perf_counter() - t0:.2f}s] -> {path}"
        )


if __name__ == "__main__":
    main()

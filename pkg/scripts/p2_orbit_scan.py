#!/usr/bin/env python3
"""Growth of the braid orbit of the P^2 Stokes matrix, with invariant checks.

Every class reached must preserve the characteristic polynomial of S^{-T} S;
the scan prints orbit sizes by depth and the largest entry appearing.
"""

from frobforge import braid_orbit, pd_stokes
from frobforge.monodromy import stokes_monodromy_invariant


def main():
    S = pd_stokes(2)
    inv0 = stokes_monodromy_invariant(S)
    print("invariant char poly of S^{-T}S:", [str(c) for c in inv0])
    for depth in range(0, 5):
        orbit = braid_orbit(S, depth=depth, cap=20000)
        biggest = max(
            abs(x) for cls, _ in orbit.classes for row in cls for x in row
        )
        bad = sum(
            1 for cls, _ in orbit.classes if stokes_monodromy_invariant(cls) != inv0
        )
        print(
            f"depth {depth}: classes={orbit.size:6d}  truncated={orbit.truncated}  "
            f"max|entry|={biggest}  invariant violations={bad}"
        )


if __name__ == "__main__":
    main()

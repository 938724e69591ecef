"""Isomonodromy flows on skew matrices, tau quadrature, and the G-function.

The flows del_i V = [V_i, V] (V_i solving [U, V_i] = [E_i, V]) preserve the
spectrum of V and the monodromy of the underlying connection; along a path in
u-space the log tau increment is the quadrature of the closed 1-form

    d log tau = sum_i H_i du_i,     H_i = 1/2 sum_{j != i} V_ij^2 / (u_i - u_j).

Free integration uses an embedded Dormand-Prince 5(4) pair with adaptive
steps on the strict upper triangle of V (skewness is exact by
representation).  Chart-driven evaluation recomputes V from frames instead of
evolving it, which is what the G-function

    G = log tau - (1/24) log J,   J = det(dt^a/du_i)

needs: differences of G between chart points are quadratures of exact frame
data, with no ODE drift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError, SemisimplicityError
from .frames import (
    ChartEvaluator,
    CanonicalFrame,
    canonical_frame,
    match_ordering,
    reorder_frame,
    vi_matrices,
)

DEFAULT_MARGIN = 1e-6


def upper_of(V: np.ndarray) -> np.ndarray:
    n = V.shape[0]
    return np.array([V[i, j] for i in range(n) for j in range(i + 1, n)])


def skew_from_upper(n: int, upper: np.ndarray) -> np.ndarray:
    V = np.zeros((n, n), dtype=complex)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            V[i, j] = upper[k]
            V[j, i] = -upper[k]
            k += 1
    return V


@dataclass(frozen=True)
class IsomonodromyState:
    """A point (u, V): distinct u_i and the strict upper triangle of skew V."""

    u: tuple[complex, ...]
    v_upper: tuple[complex, ...]

    @classmethod
    def from_matrix(cls, u, V) -> "IsomonodromyState":
        u = tuple(complex(x) for x in u)
        V = np.asarray(V, dtype=complex)
        return cls(u, tuple(upper_of(V)))

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def v_matrix(self) -> np.ndarray:
        return skew_from_upper(self.n, np.array(self.v_upper))


def hamiltonians(state: IsomonodromyState) -> np.ndarray:
    """H_i = 1/2 sum_{j != i} V_ij^2 / (u_i - u_j); their sum vanishes."""
    u = np.array(state.u)
    V = state.v_matrix
    n = state.n
    H = np.zeros(n, dtype=complex)
    for i in range(n):
        for j in range(n):
            if j != i:
                H[i] += 0.5 * V[i, j] ** 2 / (u[i] - u[j])
    return H


def _hamiltonians_raw(u: np.ndarray, V: np.ndarray) -> np.ndarray:
    n = len(u)
    H = np.zeros(n, dtype=complex)
    for i in range(n):
        for j in range(n):
            if j != i:
                H[i] += 0.5 * V[i, j] ** 2 / (u[i] - u[j])
    return H


def flow_rhs(i: int, state: IsomonodromyState) -> np.ndarray:
    """del_i V = [V_i, V] for the 1-based direction i."""
    if not 1 <= i <= state.n:
        raise NumericError("direction index out of range")
    V = state.v_matrix
    Vi = vi_matrices(np.array(state.u), V).vs[i - 1]
    return Vi @ V - V @ Vi


# Dormand-Prince 5(4) tableau
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


@dataclass
class TrajectorySample:
    param: float
    u: tuple[complex, ...]
    v_upper: tuple[complex, ...]
    hamiltonian_values: tuple[complex, ...]
    log_tau: complex


@dataclass
class IsomonodromyTrajectory:
    samples: list[TrajectorySample] = field(default_factory=list)
    steps: int = 0
    rejected: int = 0
    tol: float = 0.0

    @property
    def final_state(self) -> IsomonodromyState:
        last = self.samples[-1]
        return IsomonodromyState(last.u, last.v_upper)

    @property
    def log_tau(self) -> complex:
        return self.samples[-1].log_tau


def integrate(
    state0: IsomonodromyState,
    path,
    tol: float = 1e-10,
    margin: float = DEFAULT_MARGIN,
    max_steps: int = 200_000,
) -> IsomonodromyTrajectory:
    """Integrate dV = sum_i [V_i, V] du_i along a piecewise-linear u-path.

    ``path`` is a sequence of u-waypoints starting the continuation from
    state0.u; log tau accumulates through the same error-controlled steps.
    Steps are rejected both on local-error grounds and when the semisimple
    margin min|u_i - u_j| > margin * max|u| would be violated."""
    n = state0.n
    u0 = np.array(state0.u, dtype=complex)
    waypoints = [np.array([complex(x) for x in w], dtype=complex) for w in path]
    if not waypoints or not np.allclose(waypoints[0], u0):
        waypoints = [u0] + waypoints

    traj = IsomonodromyTrajectory(tol=tol)
    y = np.concatenate([np.array(state0.v_upper, dtype=complex), [0j]])
    n_upper = n * (n - 1) // 2

    def check_margin(u: np.ndarray) -> None:
        scale = max(np.max(np.abs(u)), 1e-300)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(u[i] - u[j]) <= margin * scale:
                    raise SemisimplicityError(
                        f"path hits a caustic: |u_{i + 1} - u_{j + 1}| = "
                        f"{abs(u[i] - u[j]):.3e}"
                    )

    def record(param: float, u: np.ndarray, yv: np.ndarray) -> None:
        V = skew_from_upper(n, yv[:n_upper])
        traj.samples.append(
            TrajectorySample(
                param,
                tuple(u),
                tuple(yv[:n_upper]),
                tuple(_hamiltonians_raw(u, V)),
                complex(yv[n_upper]),
            )
        )

    check_margin(u0)
    record(0.0, u0, y)

    for seg in range(len(waypoints) - 1):
        ua, ub = waypoints[seg], waypoints[seg + 1]
        du = ub - ua

        def rhs(s: float, yv: np.ndarray) -> np.ndarray:
            u = ua + s * du
            V = skew_from_upper(n, yv[:n_upper])
            vis = vi_matrices(u, V)
            dV = np.zeros((n, n), dtype=complex)
            for i in range(n):
                if du[i] != 0:
                    Vi = vis.vs[i]
                    dV += (Vi @ V - V @ Vi) * du[i]
            dtau = complex(np.dot(_hamiltonians_raw(u, V), du))
            return np.concatenate([upper_of(dV), [dtau]])

        s = 0.0
        h = 0.1
        while s < 1.0:
            if traj.steps + traj.rejected > max_steps:
                raise NumericError("step limit exceeded")
            h = min(h, 1.0 - s)
            if h < 1e-14:
                raise NumericError("step-size underflow (likely near a caustic)")
            try:
                check_margin(ua + (s + h) * du)
            except SemisimplicityError:
                raise
            k = [rhs(s, y)]
            for stage in range(1, 7):
                ys = y + h * sum(
                    a * k[m] for m, a in enumerate(_DP_A[stage]) if a != 0.0
                )
                k.append(rhs(s + _DP_C[stage] * h, ys))
            y5 = y + h * sum(b * k[m] for m, b in enumerate(_DP_B5) if b != 0.0)
            y4 = y + h * sum(b * k[m] for m, b in enumerate(_DP_B4) if b != 0.0)
            err = float(np.max(np.abs(y5 - y4)))
            scale = max(1.0, float(np.max(np.abs(y5))))
            if err <= tol * scale:
                s += h
                y = y5
                traj.steps += 1
                record(seg + s, ua + s * du, y)
            else:
                traj.rejected += 1
            factor = 0.9 * (tol * scale / err) ** 0.2 if err > 0 else 5.0
            h *= min(5.0, max(0.2, factor))
    return traj


# -- chart-driven G-function ---------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass
class GValue:
    """Difference of the G-function between two chart points."""

    base_point: tuple[complex, ...]
    target_point: tuple[complex, ...]
    d_log_tau: complex
    d_log_j: complex

    @property
    def delta_g(self) -> complex:
        return self.d_log_tau - self.d_log_j / 24


def _segment_frame(ev: ChartEvaluator, t0, t1, margin):
    t0 = np.array([complex(x) for x in t0], dtype=complex)
    t1 = np.array([complex(x) for x in t1], dtype=complex)
    cache: dict[float, CanonicalFrame] = {}

    def frame_at(sig: float) -> CanonicalFrame:
        if sig not in cache:
            cache[sig] = canonical_frame(ev, t0 + sig * (t1 - t0), margin)
        return cache[sig]

    return frame_at, (t1 - t0)


def g_function(
    chart,
    t0,
    t1,
    tol: float = 1e-9,
    margin: float = DEFAULT_MARGIN,
    max_level: int = 12,
) -> GValue:
    """Delta G = Delta log tau - (1/24) Delta log J along the straight t-segment.

    V(u) is read off the chart's own frames at quadrature nodes (no ODE
    drift); log J is accumulated through branch-tracked ratios of Jacobian
    determinants with a continuity-matched labeling of the u's."""
    ev = chart if isinstance(chart, ChartEvaluator) else ChartEvaluator(chart)
    t0 = np.array([complex(x) for x in t0], dtype=complex)
    t1 = np.array([complex(x) for x in t1], dtype=complex)
    frame_at, dt = _segment_frame(ev, t0, t1, margin)

    def integrand(sig: float) -> complex:
        fr = frame_at(sig)
        # du_i/dsig from dt = jacobian^T du
        udot = np.linalg.solve(fr.jacobian.T, dt)
        H = _hamiltonians_raw(fr.u, fr.v)
        return complex(np.dot(H, udot))

    def quad(levels_from: int = 2):
        prev = None
        for level in range(levels_from, max_level + 1):
            panels = 2**level
            total = 0j
            for p in range(panels):
                a, b = p / panels, (p + 1) / panels
                mid, half = (a + b) / 2, (b - a) / 2
                for x, w in zip(_GL_NODES, _GL_WEIGHTS):
                    total += w * integrand(mid + half * x) * half
            if prev is not None and abs(total - prev) <= tol / 4:
                return total, level
            prev = total
        raise NumericError("tau quadrature did not converge at the requested tolerance")

    d_log_tau, level = quad()

    # branch-tracked log J on a dyadic grid at least as fine as the quadrature
    for jlevel in range(max(level, 3), max_level + 1):
        grid = [k / 2**jlevel for k in range(2**jlevel + 1)]
        fr_prev = frame_at(grid[0])
        d_log_j = 0j
        j_prev = fr_prev.J
        ok = True
        for sig in grid[1:]:
            fr = frame_at(sig)
            perm = match_ordering(fr_prev.u, fr.u)
            fr = reorder_frame(fr, perm)
            ratio = fr.J / j_prev
            if abs(ratio - 1.0) > 0.7:
                ok = False
                break
            d_log_j += complex(np.log(ratio))
            fr_prev, j_prev = fr, fr.J
        if ok:
            return GValue(
                tuple(complex(x) for x in t0),
                tuple(complex(x) for x in t1),
                d_log_tau,
                d_log_j,
            )
    raise NumericError("log J branch tracking failed; refine the path")

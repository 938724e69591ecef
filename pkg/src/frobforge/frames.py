"""Canonical coordinates and orthonormal frames at semisimple points.

At a semisimple point the tangent algebra splits into one-dimensional
idempotent directions pi_1..pi_n; their Euler eigenvalues u_i serve as local
coordinates.  The frame data collects

    psi_{i1} = sqrt(<pi_i, pi_i>),   psi_{ia} = psi_{i1}^{-1} (eta pi_i)_a,
    Psi^T Psi = eta,                 V = Psi mu Psi^{-1} = -V^T,

with mu the constant grading matrix of the chart.  All of this is numerical
(complex double precision); points too close to a caustic are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .charts import FMChart, mu_matrix, structure_constants, third_derivatives
from .errors import NumericError, SemisimplicityError
from .poly import MultiPoly
from .series import ExpSeries

DEFAULT_MARGIN = 1e-6


def _compile_value(p):
    """Turn a MultiPoly or ExpSeries into a fast numeric evaluator."""
    if isinstance(p, ExpSeries):
        parts = [(k, _compile_value(q)) for k, q in p.parts.items()]
        marker = p.marker_var

        def ev_series(t: np.ndarray) -> complex:
            return sum(
                (f(t) * np.exp(k * t[marker]) for k, f in parts), start=0j
            )

        return ev_series
    if not p.terms:
        return lambda t: 0j
    exps = np.array(list(p.terms.keys()), dtype=np.int64)
    coeffs = np.array([complex(c) for c in p.terms.values()])

    def ev_poly(t: np.ndarray) -> complex:
        return complex(np.sum(coeffs * np.prod(t[None, :] ** exps, axis=1)))

    return ev_poly


class ChartEvaluator:
    """Precompiled numeric access to a chart's tensors at complex points."""

    def __init__(self, chart: FMChart):
        self.chart = chart
        self.n = chart.n
        self.eta = np.array([[float(x) for x in row] for row in chart.eta])
        self.eta_inv = np.linalg.inv(self.eta)
        self.e_lin = np.array([[float(x) for x in row] for row in chart.euler_linear])
        self.e_const = np.array([float(x) for x in chart.euler_const])
        c = structure_constants(chart)
        self._c = [
            [[_compile_value(c[a][b][g]) for g in range(self.n)] for b in range(self.n)]
            for a in range(self.n)
        ]
        f3 = third_derivatives(chart)
        self._f3 = [
            [[_compile_value(f3[a][b][g]) for g in range(self.n)] for b in range(self.n)]
            for a in range(self.n)
        ]
        mu = mu_matrix(chart)
        self.mu = np.array([[float(x) for x in row] for row in mu])
        self.mu_diag = tuple(mu[i][i] for i in range(self.n))

    def c_tensor(self, t: np.ndarray) -> np.ndarray:
        n = self.n
        out = np.empty((n, n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                for g in range(n):
                    out[a, b, g] = self._c[a][b][g](t)
        return out

    def third(self, t: np.ndarray) -> np.ndarray:
        n = self.n
        out = np.empty((n, n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                for g in range(n):
                    out[a, b, g] = self._f3[a][b][g](t)
        return out

    def euler(self, t: np.ndarray) -> np.ndarray:
        return self.e_lin @ t + self.e_const

    def euler_mult(self, t: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by E(t): rows g, columns b."""
        c = self.c_tensor(t)
        e = self.euler(t)
        return np.einsum("a,abg->gb", e, c)


def _as_evaluator(chart) -> ChartEvaluator:
    return chart if isinstance(chart, ChartEvaluator) else ChartEvaluator(chart)


def _as_point(t) -> np.ndarray:
    return np.array([complex(x) for x in t], dtype=complex)


def canonical_coordinates(chart, t, margin: float = DEFAULT_MARGIN) -> np.ndarray:
    """Eigenvalues of Euler multiplication at t, sorted by (Re, Im).

    Raises SemisimplicityError when two eigenvalues come closer than
    margin * max|u| (the point is outside the semisimple stratum)."""
    ev = _as_evaluator(chart)
    tt = _as_point(t)
    u = np.linalg.eigvals(ev.euler_mult(tt))
    u = u[np.lexsort((u.imag, u.real))]
    _require_separated(u, margin)
    return u


def _require_separated(u: np.ndarray, margin: float) -> None:
    n = len(u)
    scale = max(np.max(np.abs(u)), 1e-300)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(u[i] - u[j]) <= margin * scale:
                raise SemisimplicityError(
                    f"canonical coordinates {i + 1} and {j + 1} collide "
                    f"(separation {abs(u[i] - u[j]):.3e} vs margin {margin * scale:.3e})"
                )


@dataclass
class CanonicalFrame:
    """Frame data (u, Psi, V) of a chart at one semisimple point."""

    point: tuple[complex, ...]
    u: np.ndarray              # canonical coordinates, in frame order
    psi: np.ndarray            # rows i: psi_{ia}
    mu_diag: tuple[Fraction, ...]
    v: np.ndarray              # Psi mu Psi^{-1}
    jacobian: np.ndarray       # rows i: dt^a/du_i (idempotent components)
    idempotents: np.ndarray    # rows i: pi_i in the flat frame
    norms: np.ndarray          # <pi_i, pi_i>
    ordering: tuple[int, ...]  # permutation applied to the raw eigen order
    psi_signs: tuple[int, ...]  # branch choices relative to principal sqrt
    defect: float = 0.0        # max |Psi^T Psi - eta|, the frame quality

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def U(self) -> np.ndarray:
        return np.diag(self.u)

    @property
    def psi1(self) -> np.ndarray:
        """Column psi_{i1}: square roots of the idempotent norms."""
        return np.sqrt(self.norms.astype(complex)) * np.array(self.psi_signs)

    @property
    def J(self) -> complex:
        """det(dt^a/du_i) over the frame's row order."""
        return complex(np.linalg.det(self.jacobian))


def canonical_frame(
    chart, t, margin: float = DEFAULT_MARGIN, frame_tol: float | None = 1e-8
) -> CanonicalFrame:
    """Idempotent frame, Psi matrix and V at a semisimple point.

    Raw eigenvectors of the (generally non-normal) multiplication operator
    can carry errors far above machine precision, so each candidate
    idempotent is purified by the algebra Newton map pi -> 3 pi^2 - 2 pi^3
    and the canonical coordinates are refreshed from the purified frame.

    The residual of Psi^T Psi = eta measures the frame quality; it can only
    be large when the multiplication itself fails to be associative at the
    point (e.g. far outside the reliable domain of a truncated potential),
    and ``frame_tol`` (set None to disable) turns that into a hard error."""
    ev = _as_evaluator(chart)
    n = ev.n
    tt = _as_point(t)
    c = ev.c_tensor(tt)
    e_vec = ev.euler(tt)
    M = np.einsum("a,abg->gb", e_vec, c)
    w, vecs = np.linalg.eig(M)
    _require_separated(w, margin)

    raw = np.empty((n, n), dtype=complex)
    refined_u = np.empty(n, dtype=complex)
    for col in range(n):
        vcol = vecs[:, col]
        sq = np.einsum("abg,a,b->g", c, vcol, vcol)
        j = int(np.argmax(np.abs(vcol)))
        lam = sq[j] / vcol[j]
        if abs(lam) < 1e-13:
            raise SemisimplicityError("nilpotent direction: eigenvector squares to ~0")
        pi = vcol / lam
        for _ in range(8):
            sq = np.einsum("abg,a,b->g", c, pi, pi)
            if np.max(np.abs(sq - pi)) < 1e-14:
                break
            cube = np.einsum("abg,a,b->g", c, sq, pi)
            pi = 3 * sq - 2 * cube
        raw[col] = pi
        ep = M @ pi
        j = int(np.argmax(np.abs(pi)))
        refined_u[col] = ep[j] / pi[j]

    order = np.lexsort((refined_u.imag, refined_u.real))
    u = refined_u[order]
    _require_separated(u, margin)
    idem = raw[order]

    norms = np.einsum("ia,ab,ib->i", idem, ev.eta.astype(complex), idem)
    if np.min(np.abs(norms)) < 1e-13:
        raise NumericError("frame breakdown: an idempotent has ~zero square norm")
    psi1 = np.sqrt(norms)
    psi = (idem @ ev.eta.astype(complex)) / psi1[:, None]

    defect = float(np.max(np.abs(psi.T @ psi - ev.eta)))
    if frame_tol is not None and defect > frame_tol:
        raise NumericError(
            f"frame breakdown: |Psi^T Psi - eta| = {defect:.2e} at this point "
            "(the multiplication is not associative to working accuracy here; "
            "for truncated potentials move to a better-converged region)"
        )

    # V = Psi mu Psi^{-1} with Psi^{-1} = eta^{-1} Psi^T
    v = psi @ ev.mu.astype(complex) @ ev.eta_inv.astype(complex) @ psi.T

    return CanonicalFrame(
        point=tuple(complex(x) for x in tt),
        u=u,
        psi=psi,
        mu_diag=ev.mu_diag,
        v=v,
        jacobian=idem,
        idempotents=idem,
        norms=norms,
        ordering=tuple(int(x) for x in order),
        psi_signs=(1,) * n,
        defect=defect,
    )


@dataclass
class ViSet:
    """The skew matrices V_i solving [U, V_i] = [E_i, V], with the E_i."""

    u: np.ndarray
    vs: list[np.ndarray]
    e_units: list[np.ndarray]

    def total(self) -> np.ndarray:
        return sum(self.vs)


def vi_matrices(u, V=None) -> ViSet:
    """(V_i)_{jk} = (delta_{ij} V_{ik} - delta_{ik} V_{ji}) / (u_j - u_k).

    Accepts either (u, V) arrays or a single CanonicalFrame."""
    if V is None:
        if not isinstance(u, CanonicalFrame):
            raise NumericError("vi_matrices needs (u, V) or a CanonicalFrame")
        u, V = u.u, u.v
    u = np.asarray(u, dtype=complex)
    V = np.asarray(V, dtype=complex)
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] == u[j]:
                raise SemisimplicityError("coincident canonical coordinates")
    vs = []
    for i in range(n):
        Vi = np.zeros((n, n), dtype=complex)
        for j in range(n):
            for k in range(n):
                if j == k:
                    continue
                num = (V[i, k] if j == i else 0) - (V[j, i] if k == i else 0)
                if num != 0:
                    Vi[j, k] = num / (u[j] - u[k])
        vs.append(Vi)
    units = []
    for i in range(n):
        E = np.zeros((n, n))
        E[i, i] = 1.0
        units.append(E)
    return ViSet(u, vs, units)


def match_ordering(u_ref, u_new) -> tuple[int, ...]:
    """Permutation p minimizing sum |u_new[p[i]] - u_ref[i]| (exact for n <= 7)."""
    u_ref = np.asarray(u_ref)
    u_new = np.asarray(u_new)
    n = len(u_ref)
    best, best_cost = None, np.inf
    for p in permutations(range(n)):
        cost = sum(abs(u_new[p[i]] - u_ref[i]) for i in range(n))
        if cost < best_cost:
            best, best_cost = p, cost
    return best


def reorder_frame(frame: CanonicalFrame, perm: tuple[int, ...]) -> CanonicalFrame:
    """Relabel the canonical directions by ``perm`` (new row i = old row perm[i])."""
    p = list(perm)
    return CanonicalFrame(
        point=frame.point,
        u=frame.u[p],
        psi=frame.psi[p],
        mu_diag=frame.mu_diag,
        v=frame.v[np.ix_(p, p)],
        jacobian=frame.jacobian[p],
        idempotents=frame.idempotents[p],
        norms=frame.norms[p],
        ordering=tuple(frame.ordering[i] for i in p),
        psi_signs=tuple(frame.psi_signs[i] for i in p),
    )

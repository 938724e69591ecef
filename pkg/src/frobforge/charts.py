"""Frobenius-manifold charts in flat coordinates and their exact checks.

A chart is the data (eta, F, E, d): a constant symmetric nondegenerate metric,
a potential (polynomial or exponential series) in the flat coordinates
t^1..t^n, a linear-plus-constant Euler field, and the charge.  Structure
constants are read off third derivatives,

    c_{ab}^g = eta^{ge} d_e d_a d_b F,

and associativity of the induced multiplication is an exact polynomial
statement (WDVV).  Everything here is pure and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import AlgebraError, ValidationError
from .linalg import FracMatrix, mat_inverse, poly_mat_det
from .poly import MultiPoly
from .series import ExpSeries

Potential = Union[MultiPoly, ExpSeries]


# -- generic helpers over both coefficient rings -----------------------------

def zero_like(sample: Potential):
    if isinstance(sample, ExpSeries):
        return ExpSeries.zero(sample.arity, sample.marker_var, sample.trunc)
    return MultiPoly.zero(sample.arity)


def const_like(sample: Potential, value):
    if isinstance(sample, ExpSeries):
        return ExpSeries(
            sample.arity, sample.marker_var, sample.trunc,
            {0: MultiPoly.const(sample.arity, value)},
        )
    return MultiPoly.const(sample.arity, value)


def var_like(sample: Potential, index: int):
    if isinstance(sample, ExpSeries):
        return ExpSeries.from_poly(
            MultiPoly.variable(sample.arity, index), sample.marker_var, sample.trunc
        )
    return MultiPoly.variable(sample.arity, index)


def is_at_most_quadratic(p: Potential) -> bool:
    if isinstance(p, ExpSeries):
        if any(k >= 1 for k in p.parts):
            return False
        return p.part(0).total_degree() <= 2
    return p.total_degree() <= 2


# -- the chart -----------------------------------------------------------------

@dataclass(frozen=True)
class FMChart:
    """A Frobenius-manifold chart in flat coordinates.

    ``unity_index`` is 1-based; the default 1 marks the first coordinate
    direction as the unity e.
    """

    n: int
    eta: FracMatrix
    potential: Potential
    euler_linear: FracMatrix
    euler_const: tuple[Fraction, ...]
    charge_d: Fraction
    unity_index: int = 1

    def __post_init__(self):
        if len(self.eta) != self.n or any(len(r) != self.n for r in self.eta):
            raise ValidationError("eta must be n x n")
        for i in range(self.n):
            for j in range(self.n):
                if self.eta[i][j] != self.eta[j][i]:
                    raise ValidationError("eta must be symmetric")
        if self.potential.arity != self.n:
            raise ValidationError("potential arity must equal n")
        if len(self.euler_linear) != self.n or any(
            len(r) != self.n for r in self.euler_linear
        ):
            raise ValidationError("euler linear part must be n x n")
        if len(self.euler_const) != self.n:
            raise ValidationError("euler constant part must have length n")
        if not 1 <= self.unity_index <= self.n:
            raise ValidationError("unity_index out of range")

    @property
    def eta_inv(self) -> FracMatrix:
        return mat_inverse(self.eta)

    def euler_components(self) -> list[Potential]:
        """E^a(t) as ring elements: linear part applied to t plus constants."""
        comps = []
        for a in range(self.n):
            acc = zero_like(self.potential)
            for b in range(self.n):
                coef = self.euler_linear[a][b]
                if coef:
                    acc = acc + var_like(self.potential, b).scale(coef)
            if self.euler_const[a]:
                acc = acc + const_like(self.potential, self.euler_const[a])
            comps.append(acc)
        return comps

    def lie_euler(self, f: Potential) -> Potential:
        """Lie derivative of a function along the Euler field."""
        acc = zero_like(self.potential)
        for a, ea in enumerate(self.euler_components()):
            df = f.diff(a)
            if not (ea.is_zero() or df.is_zero()):
                acc = acc + ea * df
        return acc


def third_derivatives(chart: FMChart) -> list[list[list[Potential]]]:
    """F_{abc} = d_a d_b d_c F, computed once and shared by symmetry."""
    n = chart.n
    F = chart.potential
    first = [F.diff(a) for a in range(n)]
    second = [[first[a].diff(b) if b >= a else None for b in range(n)] for a in range(n)]
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                val = second[a][b].diff(c)
                for i, j, k in {
                    (a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)
                }:
                    out[i][j][k] = val
    return out


def structure_constants(chart: FMChart) -> list[list[list[Potential]]]:
    """c_{ab}^g = eta^{ge} F_{abe}; symmetric in the two lower indices."""
    n = chart.n
    eta_inv = chart.eta_inv
    F3 = third_derivatives(chart)
    c = [[[zero_like(chart.potential) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            for g in range(n):
                acc = zero_like(chart.potential)
                for e in range(n):
                    coef = eta_inv[g][e]
                    if coef:
                        acc = acc + F3[a][b][e].scale(coef)
                c[a][b][g] = acc
                c[b][a][g] = acc
    return c


@dataclass
class WdvvReport:
    passed: bool
    checked: int
    nonzero: list[tuple[tuple[int, int, int, int], Potential]] = field(default_factory=list)

    def __str__(self):
        if self.passed:
            return f"WDVV: all {self.checked} residuals identically zero"
        worst = ", ".join(str(idx) for idx, _ in self.nonzero[:5])
        return f"WDVV: {len(self.nonzero)} nonzero residuals (e.g. at {worst})"


def check_wdvv(chart: FMChart) -> WdvvReport:
    """Associativity residuals c_{ab}^e c_{eg}^d - c_{bg}^e c_{ea}^d.

    A chart passes iff every residual is the zero polynomial (zero through
    the truncation degree for exponential series).
    """
    n = chart.n
    c = structure_constants(chart)
    nonzero = []
    checked = 0
    for a in range(n):
        for g in range(a + 1, n):  # residual is antisymmetric in (a, g)
            for b in range(n):
                for dd in range(n):
                    acc = zero_like(chart.potential)
                    for e in range(n):
                        acc = acc + c[a][b][e] * c[e][g][dd] - c[b][g][e] * c[e][a][dd]
                    checked += 1
                    if not acc.is_zero():
                        nonzero.append(((a + 1, b + 1, g + 1, dd + 1), acc))
    return WdvvReport(passed=not nonzero, checked=checked, nonzero=nonzero)


@dataclass
class AxiomReport:
    unity_ok: bool
    quasihomogeneous: bool
    quadratic_defect: Potential | None
    notes: str

    @property
    def passed(self) -> bool:
        return self.unity_ok and self.quasihomogeneous

    def __str__(self):
        bits = [
            f"unity axiom: {'ok' if self.unity_ok else 'VIOLATED'}",
            f"quasihomogeneity: {'ok' if self.quasihomogeneous else 'VIOLATED'}",
            self.notes,
        ]
        return "; ".join(bits)


def check_axioms(chart: FMChart) -> AxiomReport:
    """Unity axiom d_e d_a d_b F = eta_{ab}, and quasihomogeneity
    Lie_E F = (3-d) F up to at most quadratic terms.

    Symmetry of the covariant derivative of the multiplication tensor holds
    automatically because the tensor is a third derivative of the potential;
    the report records this rather than recomputing it.
    """
    n = chart.n
    u = chart.unity_index - 1
    F3 = third_derivatives(chart)
    unity_ok = True
    for a in range(n):
        for b in range(a, n):
            expect = const_like(chart.potential, chart.eta[a][b])
            if F3[u][a][b] != expect:
                unity_ok = False
    residual = chart.lie_euler(chart.potential) - chart.potential.scale(
        Fraction(3) - chart.charge_d
    )
    quasi = is_at_most_quadratic(residual)
    defect = residual if not residual.is_zero() else None
    notes = (
        "symmetry of (grad c) holds identically since c is a third derivative "
        "of the potential"
    )
    return AxiomReport(unity_ok, quasi, defect, notes)


def virasoro_central_charge(chart: FMChart) -> Fraction:
    """Central charge factor 6 (1-d)^{-2} (n - 4 tr mu^2) with
    mu = (2-d)/2 * Id - (linear part of E).  Rejects d = 1 (pole)."""
    if chart.charge_d == 1:
        raise AlgebraError("central charge formula has a pole at charge 1")
    n = chart.n
    half = (Fraction(2) - chart.charge_d) / 2
    mu = [
        [
            (half if i == j else Fraction(0)) - chart.euler_linear[i][j]
            for j in range(n)
        ]
        for i in range(n)
    ]
    tr_mu2 = sum(mu[i][j] * mu[j][i] for i in range(n) for j in range(n))
    return 6 * (1 - chart.charge_d) ** -2 * (n - 4 * tr_mu2)


def mu_matrix(chart: FMChart) -> FracMatrix:
    """mu = (2-d)/2 * Id - grad E, the grading operator in the flat frame."""
    n = chart.n
    half = (Fraction(2) - chart.charge_d) / 2
    return tuple(
        tuple(
            (half if i == j else Fraction(0)) - chart.euler_linear[i][j]
            for j in range(n)
        )
        for i in range(n)
    )


@dataclass
class IntersectionFormMatrix:
    entries: list[list[Potential]]
    determinant: Potential

    def entry(self, a: int, b: int) -> Potential:
        """1-based upper-index entry g^{ab}(t)."""
        return self.entries[a - 1][b - 1]


def intersection_form(chart: FMChart) -> IntersectionFormMatrix:
    """g^{ab}(t) = E^e(t) c_e^{ab}(t), indices raised with eta.

    At points where E(t) equals the unity vector this reduces to eta^{ab};
    its determinant is the discriminant polynomial.
    """
    n = chart.n
    eta_inv = chart.eta_inv
    F3 = third_derivatives(chart)
    E = chart.euler_components()
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = zero_like(chart.potential)
            for e in range(n):
                # c_e^{ab} = eta^{am} eta^{bn} F_{emn}
                raised = zero_like(chart.potential)
                for m in range(n):
                    am = eta_inv[a][m]
                    if not am:
                        continue
                    for nn in range(n):
                        bn = eta_inv[b][nn]
                        if bn:
                            raised = raised + F3[e][m][nn].scale(am * bn)
                if not E[e].is_zero():
                    acc = acc + E[e] * raised
            row.append(acc)
        rows.append(row)
    if isinstance(chart.potential, MultiPoly):
        det = poly_mat_det(rows)
    else:
        det = _series_det(rows)
    return IntersectionFormMatrix(rows, det)


def _series_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    det = zero_like(rows[0][0])
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _series_det(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det

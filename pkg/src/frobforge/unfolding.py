"""Frobenius charts on the base of the A_n unfolding f_s(x) = x^{n+1} + s_1 x^{n-1} + ... + s_n.

The flat pairing and the multiplication come from residues at infinity,

    <d_i, d_j>      = -(n+1) res  (df/ds_i)(df/ds_j) / f'
    <d_i . d_j, d_k> = -(n+1) res  (df/ds_i)(df/ds_j)(df/ds_k) / f',

which are exact polynomials in s.  Flat coordinates are read off the
expansion x(k) = k - a_1/k - ... solving k^{n+1} = f_s(x): the rescaled
coefficients t = (n+1) a, listed in reverse so the unity direction comes
first, make the pairing the constant antidiagonal matrix.  The potential is
recovered from the structure constants by exact triple integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .charts import FMChart
from .errors import AlgebraError, NumericError
from .laurent import UPoly, puiseux_root_expansion, residue_at_infinity
from .linalg import frac_matrix, poly_mat_det
from .poly import MultiPoly


@dataclass(frozen=True)
class Unfolding:
    """The family x^{n+1} + s_1 x^{n-1} + ... + s_n with its x-derivative."""

    n: int
    f: UPoly
    fprime: UPoly

    @classmethod
    def build(cls, n: int) -> "Unfolding":
        if n < 1:
            raise AlgebraError("need n >= 1")
        coeffs = {n + 1: MultiPoly.const(n, 1)}
        for k in range(1, n + 1):
            coeffs[n - k] = MultiPoly.variable(n, k - 1)
        f = UPoly(n, coeffs)
        return cls(n, f, f.diff_x())

    def ds(self, i: int) -> UPoly:
        """df/ds_i = x^{n-i} (1-based i)."""
        if not 1 <= i <= self.n:
            raise AlgebraError("parameter index out of range")
        return UPoly(self.n, {self.n - i: MultiPoly.const(self.n, 1)})


def residue_pairing(unf: Unfolding) -> list[list[MultiPoly]]:
    """Exact metric entries -(n+1) res (df/ds_i)(df/ds_j)/f' in s-coordinates."""
    n = unf.n
    out = [[None] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            num = unf.ds(i) * unf.ds(j)
            val = residue_at_infinity(num, unf.fprime).scale(-(n + 1))
            out[i - 1][j - 1] = val
            out[j - 1][i - 1] = val
    return out


def residue_triple(unf: Unfolding) -> dict[tuple[int, int, int], MultiPoly]:
    """Fully symmetric tensor -(n+1) res (df/ds_i)(df/ds_j)(df/ds_k)/f'.

    Returned as a map on sorted index triples (1-based)."""
    n = unf.n
    out: dict[tuple[int, int, int], MultiPoly] = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                num = unf.ds(i) * unf.ds(j) * unf.ds(k)
                out[(i, j, k)] = residue_at_infinity(num, unf.fprime).scale(-(n + 1))
    return out


def triple_entry(tensor, i: int, j: int, k: int) -> MultiPoly:
    return tensor[tuple(sorted((i, j, k)))]


@dataclass(frozen=True)
class FlatCoordinateMap:
    """Flat coordinates t(s) and the exact inverse s(t).

    Coordinates are listed so that t^1 is the unity direction (the s_n axis)
    and Lie_E t^b = ((n+2-b)/(n+1)) t^b.  ``eta`` is the constant pairing in
    these coordinates and ``jacobian_det`` the constant det(dt/ds).
    """

    n: int
    t_of_s: tuple[MultiPoly, ...]
    s_of_t: tuple[MultiPoly, ...]
    eta: tuple[tuple[Fraction, ...], ...]
    jacobian_det: Fraction


def flat_coordinates(unf: Unfolding) -> FlatCoordinateMap:
    n = unf.n
    x = puiseux_root_expansion(unf.f, n + 1)
    # x = k + c_0 + c_1/k + ...; flat data sits in a_j = -c_j, j = 1..n
    a = [-x.coefficient(-j) for j in range(1, n + 1)]
    t_old = [aj.scale(n + 1) for aj in a]  # t_old[j-1] corresponds to s_j

    # invert the triangular system t_old_j = s_j + h_j(s_1..s_{j-1});
    # variables of the result are the reversed (unity-first) t coordinates,
    # t_new^b = t_old_{n+1-b}.
    def t_new_var(old_j: int) -> MultiPoly:
        return MultiPoly.variable(n, n - old_j)  # 0-based position of t_new^{n+1-j}

    s_of_t: list[MultiPoly] = []
    for j in range(1, n + 1):
        h = t_old[j - 1] - MultiPoly.variable(n, j - 1)  # h_j(s_1..s_{j-1})
        expr = t_new_var(j) - h.compose(s_of_t + [MultiPoly.zero(n)] * (n - j + 1))
        s_of_t.append(expr)

    t_of_s = tuple(t_old[n - b] for b in range(1, n + 1))  # t_new^b in terms of s

    for b in range(n):
        if t_of_s[b].compose(s_of_t) != MultiPoly.variable(n, b):
            raise AlgebraError("flat coordinate inversion failed")

    pairing_s = residue_pairing(unf)
    jac_s = [[s_of_t[i].diff(al) for al in range(n)] for i in range(n)]  # ds_i/dt^a
    eta_rows = []
    for al in range(n):
        row = []
        for be in range(n):
            acc = MultiPoly.zero(n)
            for i in range(n):
                for j in range(n):
                    gij = pairing_s[i][j]
                    if gij.is_zero():
                        continue
                    acc = acc + jac_s[i][al] * jac_s[j][be] * gij.compose(list(s_of_t))
            if not acc.is_constant():
                raise AlgebraError(
                    f"pairing entry ({al + 1},{be + 1}) did not become constant: {acc}"
                )
            row.append(acc.constant_term())
        eta_rows.append(row)

    jac_t = [[t_of_s[b].diff(i) for i in range(n)] for b in range(n)]
    det = poly_mat_det(jac_t)
    if not det.is_constant() or det.constant_term() == 0:
        raise AlgebraError("Jacobian of t(s) must be a nonzero constant")

    return FlatCoordinateMap(
        n, t_of_s, tuple(s_of_t), frac_matrix(eta_rows), det.constant_term()
    )


def euler_weights(n: int) -> list[Fraction]:
    """Weights of the unity-first flat coordinates: (n+2-b)/(n+1), b=1..n."""
    return [Fraction(n + 2 - b, n + 1) for b in range(1, n + 1)]


def build_an_chart(n: int, verify: bool = True) -> FMChart:
    """Polynomial chart of the A_n unfolding with charge d = (n-1)/(n+1).

    The Euler field is normalized by 1/(n+1) so that its multiplication
    spectrum equals the critical values of f_s; the potential has all terms
    of total degree <= 2 removed."""
    unf = Unfolding.build(n)
    fc = flat_coordinates(unf)
    triple = residue_triple(unf)

    # push the triple tensor through the coordinate change
    B = [[fc.s_of_t[i].diff(al) for al in range(n)] for i in range(n)]  # ds_i/dt^a
    c_sub = {
        key: val.compose(list(fc.s_of_t)) for key, val in triple.items()
    }
    # contract one index at a time: O(n^4) polynomial products
    d1 = {}
    for j in range(1, n + 1):
        for k in range(j, n + 1):
            for al in range(n):
                acc = MultiPoly.zero(n)
                for i in range(1, n + 1):
                    cij = triple_entry(c_sub, i, j, k)
                    if not (cij.is_zero() or B[i - 1][al].is_zero()):
                        acc = acc + B[i - 1][al] * cij
                d1[(al, j, k)] = acc
    d2 = {}
    for k in range(1, n + 1):
        for al in range(n):
            for be in range(n):
                acc = MultiPoly.zero(n)
                for j in range(1, n + 1):
                    key = (al, j, k) if j <= k else (al, k, j)
                    val = d1[key]
                    if not (val.is_zero() or B[j - 1][be].is_zero()):
                        acc = acc + B[j - 1][be] * val
                d2[(al, be, k)] = acc
    c_t = {}
    for al in range(n):
        for be in range(al, n):
            for ga in range(be, n):
                acc = MultiPoly.zero(n)
                for k in range(1, n + 1):
                    val = d2[(al, be, k)]
                    if not (val.is_zero() or B[k - 1][ga].is_zero()):
                        acc = acc + B[k - 1][ga] * val
                c_t[(al, be, ga)] = acc

    def c_entry(al, be, ga):
        return c_t[tuple(sorted((al, be, ga)))]

    # P = sum t^a t^b t^g c_{abg}; every monomial of P has degree >= 3, and
    # F is recovered by dividing each monomial of degree m by m(m-1)(m-2)
    P = MultiPoly.zero(n)
    for al in range(n):
        for be in range(n):
            for ga in range(n):
                cc = c_entry(al, be, ga)
                if cc.is_zero():
                    continue
                mono = [0] * n
                mono[al] += 1
                mono[be] += 1
                mono[ga] += 1
                P = P + MultiPoly.monomial(n, mono, 1) * cc
    F = P.weighted_scale(
        lambda e: Fraction(1, sum(e) * (sum(e) - 1) * (sum(e) - 2))
    )

    if verify:
        for al in range(n):
            da = F.diff(al)
            for be in range(al, n):
                dab = da.diff(be)
                for ga in range(be, n):
                    if dab.diff(ga) != c_entry(al, be, ga):
                        raise AlgebraError(
                            "potential integration failed: the structure tensor "
                            "is not a symmetric third derivative"
                        )

    weights = euler_weights(n)
    euler_linear = tuple(
        tuple(weights[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )
    chart = FMChart(
        n=n,
        eta=fc.eta,
        potential=F,
        euler_linear=euler_linear,
        euler_const=tuple(Fraction(0) for _ in range(n)),
        charge_d=Fraction(n - 1, n + 1),
        unity_index=1,
    )
    if verify:
        # exact quasihomogeneity with no quadratic correction
        lhs = chart.lie_euler(F)
        if lhs != F.scale(Fraction(3) - chart.charge_d):
            raise AlgebraError("quasihomogeneity failed for the unfolding chart")
    return chart


def critical_values(
    unf: Unfolding, s_point, precision: float = 1e-12
) -> list[complex]:
    """Values of f_s at the roots of f'_s for numeric s, multiplicities kept.

    Roots are isolated at working precision derived from ``precision``;
    non-convergence raises NumericError."""
    n = unf.n
    if len(s_point) != n:
        raise AlgebraError("s must have length n")
    point = [Fraction(x) if isinstance(x, int) else x for x in s_point]

    def to_mp(value) -> mp.mpc:
        if isinstance(value, Fraction):
            return mp.mpc(mp.mpf(value.numerator) / mp.mpf(value.denominator))
        return mp.mpc(value)

    digits = max(20, int(-mp.log10(precision)) + 10)
    with mp.workdps(digits):
        exact = all(isinstance(x, (int, Fraction)) for x in point)
        fp_coeffs = {
            d: c.evaluate(point) if exact else complex(c.evaluate(point))
            for d, c in unf.fprime.coeffs.items()
        }
        deg = max(fp_coeffs)
        coeffs = [to_mp(fp_coeffs.get(d, Fraction(0))) for d in range(deg, -1, -1)]
        try:
            roots = mp.polyroots(coeffs, maxsteps=200, extraprec=120)
        except mp.libmp.libhyper.NoConvergence as exc:  # pragma: no cover
            raise NumericError(f"root finding did not converge: {exc}") from exc
        f_at = []
        for r in roots:
            val = mp.mpc(0)
            for d, c in unf.f.coeffs.items():
                val += to_mp(c.evaluate(point) if exact else complex(c.evaluate(point))) * r**d
            f_at.append(complex(val))
    return f_at

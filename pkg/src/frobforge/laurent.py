"""Univariate expansions at infinity with exact polynomial coefficients.

Carries the residue calculus used by the singularity charts: a ``UPoly`` is a
polynomial in one distinguished variable x whose coefficients are MultiPoly
values in auxiliary parameters; a ``LaurentTail`` is its (possibly truncated)
Laurent expansion at x = infinity.

Conventions:
  * res_{x=inf} f := -(coefficient of x^{-1} in the expansion of f at infinity)
  * a LaurentTail is exact for every exponent >= ``min_exp``; terms below are
    unknown.  ``min_exp is None`` means the expansion is exact everywhere
    (finitely many terms, no truncation).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import AlgebraError
from .poly import MultiPoly


class UPoly:
    """Polynomial in x with MultiPoly coefficients in ``arity`` parameters."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Mapping[int, MultiPoly]):
        self.arity = arity
        clean: dict[int, MultiPoly] = {}
        for deg, c in coeffs.items():
            if deg < 0:
                raise AlgebraError("UPoly degrees must be non-negative")
            if isinstance(c, (int, Fraction)):
                c = MultiPoly.const(arity, c)
            if c.arity != arity:
                raise AlgebraError("coefficient arity mismatch")
            if not c.is_zero():
                clean[deg] = c
        self.coeffs = clean

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> MultiPoly:
        if self.is_zero():
            raise AlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[self.degree]

    def diff_x(self) -> "UPoly":
        return UPoly(
            self.arity,
            {d - 1: c.scale(d) for d, c in self.coeffs.items() if d > 0},
        )

    def diff_param(self, var: int) -> "UPoly":
        return UPoly(self.arity, {d: c.diff(var) for d, c in self.coeffs.items()})

    def __add__(self, other: "UPoly") -> "UPoly":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, MultiPoly.zero(self.arity)) + c
        return UPoly(self.arity, out)

    def __mul__(self, other: "UPoly") -> "UPoly":
        out: dict[int, MultiPoly] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                prod = c1 * c2
                out[d] = out.get(d, MultiPoly.zero(self.arity)) + prod
        return UPoly(self.arity, out)

    def scale(self, factor) -> "UPoly":
        return UPoly(self.arity, {d: c.scale(factor) for d, c in self.coeffs.items()})

    def as_tail(self) -> "LaurentTail":
        return LaurentTail(self.arity, dict(self.coeffs), None)

    def evaluate_at_tail(self, x: "LaurentTail", floor: int) -> "LaurentTail":
        """Substitute a Laurent tail for x, keeping exponents >= floor.

        Intermediate products run with extra depth so that the truncation
        stamped on partial powers never eats into the requested window."""
        work_floor = floor - max(self.degree, 0)
        result = LaurentTail(self.arity, {}, None)
        powers: dict[int, LaurentTail] = {0: LaurentTail.one(self.arity)}

        def x_power(k: int) -> LaurentTail:
            if k not in powers:
                kk = max(powers)
                acc = powers[kk]
                while kk < k:
                    acc = acc.mul(x, work_floor)
                    kk += 1
                    powers[kk] = acc
            return powers[k]

        for d, c in sorted(self.coeffs.items()):
            result = result.add(x_power(d).scale_poly(c))
        return result.truncate(floor)


class LaurentTail:
    """Truncated Laurent series at x = infinity.

    ``coeffs`` maps integer exponents (bounded above) to MultiPoly values in
    the parameter ring; ``min_exp`` is the lowest exponent still exact, or
    None when the series is a finite exact expansion.
    """

    __slots__ = ("arity", "coeffs", "min_exp")

    def __init__(self, arity: int, coeffs: Mapping[int, MultiPoly], min_exp: int | None):
        self.arity = arity
        clean: dict[int, MultiPoly] = {}
        for e, c in coeffs.items():
            if isinstance(c, (int, Fraction)):
                c = MultiPoly.const(arity, c)
            if not c.is_zero() and (min_exp is None or e >= min_exp):
                clean[e] = c
        self.coeffs = clean
        self.min_exp = min_exp

    @classmethod
    def one(cls, arity: int) -> "LaurentTail":
        return cls(arity, {0: MultiPoly.const(arity, 1)}, None)

    @classmethod
    def x_power(cls, arity: int, k: int) -> "LaurentTail":
        return cls(arity, {k: MultiPoly.const(arity, 1)}, None)

    @property
    def top(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def coefficient(self, e: int) -> MultiPoly:
        if self.min_exp is not None and e < self.min_exp:
            raise AlgebraError(
                f"coefficient of x^{e} lies below truncation order {self.min_exp}"
            )
        return self.coeffs.get(e, MultiPoly.zero(self.arity))

    def truncate(self, floor: int | None) -> "LaurentTail":
        if floor is None:
            return self
        new_min = floor if self.min_exp is None else max(floor, self.min_exp)
        return LaurentTail(
            self.arity,
            {e: c for e, c in self.coeffs.items() if e >= new_min},
            new_min,
        )

    def add(self, other: "LaurentTail") -> "LaurentTail":
        if self.min_exp is None:
            m = other.min_exp
        elif other.min_exp is None:
            m = self.min_exp
        else:
            m = max(self.min_exp, other.min_exp)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, MultiPoly.zero(self.arity)) + c
        return LaurentTail(self.arity, out, m)

    def scale_poly(self, factor: MultiPoly) -> "LaurentTail":
        return LaurentTail(
            self.arity, {e: c * factor for e, c in self.coeffs.items()}, self.min_exp
        )

    def scale(self, factor) -> "LaurentTail":
        return LaurentTail(
            self.arity, {e: c.scale(factor) for e, c in self.coeffs.items()}, self.min_exp
        )

    def mul(self, other: "LaurentTail", floor: int | None = None) -> "LaurentTail":
        """Product, exact down to the provable truncation order.

        Unknown terms of one factor meet known terms of the other at exponents
        below (min_exp of the one) + (top of the other); the product is exact
        above both such bounds.
        """
        bounds = []
        if self.min_exp is not None:
            t = other.top
            bounds.append(self.min_exp + (t if t is not None else 0))
        if other.min_exp is not None:
            t = self.top
            bounds.append(other.min_exp + (t if t is not None else 0))
        m = max(bounds) if bounds else None
        if floor is not None:
            m = floor if m is None else max(m, floor)
        out: dict[int, MultiPoly] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if m is not None and e < m:
                    continue
                prod = c1 * c2
                out[e] = out.get(e, MultiPoly.zero(self.arity)) + prod
        return LaurentTail(self.arity, out, m)

    def __repr__(self) -> str:
        bits = [f"({c})*x^{e}" for e, c in sorted(self.coeffs.items(), reverse=True)]
        tail = f" + O(x^{self.min_exp - 1})" if self.min_exp is not None else ""
        return (" + ".join(bits) or "0") + tail


def invert_at_infinity(den: UPoly, floor: int) -> LaurentTail:
    """Expand 1/den at x = infinity, exact for exponents >= floor.

    Requires the leading coefficient of ``den`` to be a nonzero constant,
    which holds for every denominator arising here.
    """
    if den.is_zero():
        raise AlgebraError("division by zero polynomial")
    m = den.degree
    lead = den.leading_coefficient()
    if not lead.is_constant():
        raise AlgebraError("leading coefficient must be constant to invert at infinity")
    lead_inv = 1 / lead.constant_term()
    # den = lead * x^m * (1 + u) with u holding only negative powers of x
    u = LaurentTail(
        den.arity,
        {d - m: c.scale(lead_inv) for d, c in den.coeffs.items() if d != m},
        None,
    )
    # geometric series sum (-u)^k; each u factor drops the exponent by >= 1
    inv_floor = floor + m
    series = LaurentTail.one(den.arity)
    term = LaurentTail.one(den.arity)
    while True:
        term = term.mul(u, inv_floor).scale(-1)
        if not term.coeffs:
            break
        series = series.add(term)
    out = LaurentTail(
        den.arity,
        {e - m: c.scale(lead_inv) for e, c in series.coeffs.items()},
        floor,
    )
    return out


def expand_ratio(num: UPoly, den: UPoly, floor: int) -> LaurentTail:
    """Expansion of num/den at x = infinity, exact for exponents >= floor."""
    inv = invert_at_infinity(den, floor - max(num.degree, 0))
    return num.as_tail().mul(inv, floor)


def residue_at_infinity(num: UPoly, den: UPoly, order_hint: int | None = None) -> MultiPoly:
    """res_{x=inf} num/den = -(coefficient of x^{-1}) of the expansion.

    ``order_hint`` bounds how many expansion terms may be used (counted from
    the top exponent down); if it does not reach x^{-1} an AlgebraError is
    raised so the caller can retry with a larger hint.  When omitted the depth
    is chosen automatically.
    """
    if den.is_zero():
        raise AlgebraError("division by zero polynomial")
    top = num.degree - den.degree
    if order_hint is not None:
        reach = top - order_hint + 1
        if reach > -1:
            raise AlgebraError(
                f"order_hint={order_hint} only reaches x^{reach}; "
                "increase it to reach the x^-1 term"
            )
    tail = expand_ratio(num, den, -1)
    return -tail.coefficient(-1)


def sylvester_resultant(f: UPoly, g: UPoly) -> MultiPoly:
    """Resultant of two x-polynomials as a polynomial in the parameters."""
    from .linalg import poly_mat_det

    m, k = f.degree, g.degree
    if m < 0 or k < 0:
        raise AlgebraError("resultant of a zero polynomial")
    size = m + k
    arity = f.arity
    zero = MultiPoly.zero(arity)
    rows = []
    for shift in range(k):
        row = [zero] * size
        for d, c in f.coeffs.items():
            row[shift + (m - d)] = c
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for d, c in g.coeffs.items():
            row[shift + (k - d)] = c
        rows.append(row)
    return poly_mat_det(rows)


def puiseux_root_expansion(f: UPoly, order: int) -> LaurentTail:
    """Solve k^m = f(x) for x as a descending expansion in k.

    For monic f of degree m >= 2 returns
        x(k) = k + c_0 + c_1/k + ... + c_{order-1}/k^{order-1}
    with exact parameter-polynomial coefficients, such that
    f(x(k)) = k^m + O(k^{m-order-1}).
    """
    m = f.degree
    if m < 2:
        raise AlgebraError("need degree >= 2")
    lead = f.leading_coefficient()
    if not (lead.is_constant() and lead.constant_term() == 1):
        raise AlgebraError("puiseux_root_expansion requires a monic polynomial")
    if order < 1:
        raise AlgebraError("order must be >= 1")
    arity = f.arity
    floor = -(order + m)  # working depth with margin
    x = LaurentTail.x_power(arity, 1)
    for j in range(order):
        fx = f.evaluate_at_tail(x, floor)
        residual = fx.coefficient(m - 1 - j)
        cj = residual.scale(Fraction(-1, m))
        if not cj.is_zero():
            x = x.add(LaurentTail(arity, {-j: cj}, None))
    return x.truncate(-(order - 1))

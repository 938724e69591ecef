"""Monodromy data, the braid-group action on (S, C), and P^d connection matrices.

A monodromy tuple is (form <,>, mu, R, e_1, S, C) with S unit upper
triangular and C constrained by the compatibility identity

    a^T S b = (C a)^T  eta  e^{pi i mu} e^{pi i R}  (C b).

Braid generators act by S -> K S K, C -> C K where K differs from the
identity only in the (i, i+1) block

    [[-s_{i,i+1}, 1], [1, 0]],

the unlisted diagonal entry being fixed to zero (validated by the braid
relations); the inverse generator uses the block [[0, 1], [1, -s_{i,i+1}]].
Everything on S is exact rational arithmetic; C and the compatibility check
run at configurable mpmath precision.

For P^d the connection matrix is assembled as C = C' C'': columns of C'' are
the degree components of e^{2 pi i (j-1) h} (h the hyperplane class), and C'
is lower triangular in the Laurent coefficients A_k(d) of
(-1)^{d+1} Gamma^{d+1}(-x) e^{-pi i dbar x} at x -> 0.  The overall scalar of
C' is fixed by requiring the compatibility identity to hold exactly: relative
to the bare Laurent data this multiplies in i * sqrt(2 pi), giving the net
prefactor (-1)^{d+1} i^{1-dbar} (2 pi)^{-d/2}.  With that normalization the
identity reproduces the Euler-pairing Gram matrix binom(d+j-i, d) of the
standard line-bundle collection; for d = 1 this coincides with the
binom(d+1, j-i) Stokes matrix, and for d >= 2 the two lie in one braid orbit
modulo sign diagonals.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath as mp

from .errors import AlgebraError, ValidationError
from .projective import PdClassicalData, pd_classical_data, pd_stokes

Matrix = list[list[Fraction]]


def default_dps() -> int:
    try:
        return max(15, int(os.environ.get("FROBFORGE_PRECISION", "30")))
    except ValueError:
        return 30


def _to_mp_matrix(rows, dps) -> mp.matrix:
    with mp.workdps(dps):
        m = mp.matrix(len(rows), len(rows[0]))
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if isinstance(x, Fraction):
                    m[i, j] = mp.mpf(x.numerator) / mp.mpf(x.denominator)
                else:
                    m[i, j] = mp.mpc(x)
        return m


@dataclass
class MonodromyData:
    """(form, mu, R, e1, S, C) with numeric C at ``dps`` working digits."""

    n: int
    form: Sequence[Sequence]       # the bilinear form <,> on V
    mu: Sequence[Sequence]         # diagonalizable, skew w.r.t. the form
    r: Sequence[Sequence]          # nilpotent part, shifts mu-degrees by +1 per graded piece
    e1: Sequence                   # marked vector
    stokes: Sequence[Sequence]     # unit upper triangular
    connection: mp.matrix | None   # central connection matrix
    dps: int = 30

    def validate(self) -> list[str]:
        problems = []
        n = self.n
        S = self.stokes
        for i in range(n):
            if S[i][i] != 1:
                problems.append("Stokes diagonal must be 1")
            for j in range(i):
                if S[i][j] != 0:
                    problems.append("Stokes matrix must be upper triangular")
        with mp.workdps(self.dps):
            G = _to_mp_matrix(self.form, self.dps)
            M = _to_mp_matrix(self.mu, self.dps)
            skew = G * M + M.T * G
            if max(abs(x) for x in skew) > mp.mpf(10) ** (5 - self.dps):
                problems.append("mu is not skew-symmetric with respect to the form")
        return problems


@dataclass
class CompatibilityReport:
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"compatibility residual {self.residual:.3e} vs tol {self.tol:.1e}: {verdict}"


def check_compatibility(data: MonodromyData, tol: float = 1e-8) -> CompatibilityReport:
    """Max-norm residual of  S = C^T <,> e^{pi i mu} e^{pi i R} C."""
    if data.connection is None:
        raise ValidationError("monodromy data has no connection matrix")
    with mp.workdps(data.dps):
        S = _to_mp_matrix(data.stokes, data.dps)
        G = _to_mp_matrix(data.form, data.dps)
        M = _to_mp_matrix(data.mu, data.dps)
        R = _to_mp_matrix(data.r, data.dps)
        C = data.connection
        rhs = C.T * (G * mp.expm(mp.pi * 1j * M) * mp.expm(mp.pi * 1j * R)) * C
        residual = max(abs(rhs[i, j] - S[i, j]) for i in range(data.n) for j in range(data.n))
    return CompatibilityReport(float(residual), tol)


# -- braid action -----------------------------------------------------------------

def _as_exact(S) -> Matrix:
    return [[Fraction(x) for x in row] for row in S]


def _check_stokes_shape(S: Matrix) -> None:
    n = len(S)
    for i in range(n):
        if len(S[i]) != n:
            raise ValidationError("Stokes matrix must be square")
        if S[i][i] != 1:
            raise ValidationError("Stokes matrix must have unit diagonal")
        for j in range(i):
            if S[i][j] != 0:
                raise ValidationError("Stokes matrix must be upper triangular")


@dataclass
class BraidMove:
    """Generator index i (1-based) and its mutation matrix K = K^(i)(S)."""

    index: int
    k: Matrix


def _braid_k(S: Matrix, i0: int, inverse: bool) -> Matrix:
    n = len(S)
    K = [[Fraction(1) if a == b else Fraction(0) for b in range(n)] for a in range(n)]
    s = S[i0][i0 + 1]
    K[i0][i0 + 1] = Fraction(1)
    K[i0 + 1][i0] = Fraction(1)
    if inverse:
        K[i0][i0] = Fraction(0)
        K[i0 + 1][i0 + 1] = -s
    else:
        K[i0][i0] = -s
        K[i0 + 1][i0 + 1] = Fraction(0)
    return K


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)]
        for i in range(n)
    ]


def braid_move(S, i: int, inverse: bool = False) -> BraidMove:
    """The mutation matrix K^(i)(S) for the generator sigma_i (1-based)."""
    S = _as_exact(S)
    n = len(S)
    if not 1 <= i <= n - 1:
        raise ValidationError(f"generator index {i} out of range 1..{n - 1}")
    _check_stokes_shape(S)
    return BraidMove(i, _braid_k(S, i - 1, inverse))


def braid_act(S, C=None, i: int = 1, inverse: bool = False):
    """Apply the braid generator sigma_i (or its inverse): S -> KSK, C -> CK.

    S is exact; C (optional) may be an mpmath matrix or nested lists.  Returns
    (S', C') with C' None when no C was given."""
    S = _as_exact(S)
    n = len(S)
    if not 1 <= i <= n - 1:
        raise ValidationError(f"generator index {i} out of range 1..{n - 1}")
    _check_stokes_shape(S)
    K = _braid_k(S, i - 1, inverse)
    S2 = _mat_mul(_mat_mul(K, S), K)
    C2 = None
    if C is not None:
        if isinstance(C, mp.matrix):
            Km = _to_mp_matrix(K, mp.mp.dps)
            C2 = C * Km
        elif all(isinstance(x, (int, Fraction, str)) for row in C for x in row):
            C2 = _mat_mul(_as_exact(C), K)
        else:
            rows, cols = len(C), len(C[0])
            C2 = [
                [
                    sum(complex(C[i][k]) * complex(K[k][j]) for k in range(cols))
                    for j in range(cols)
                ]
                for i in range(rows)
            ]
    return S2, C2


def braid_word(S, C=None, word: Sequence[int] = ()):  # e.g. (1, -2, 1)
    """Apply a word of generators; negative entries are inverse generators."""
    for g in word:
        if g == 0:
            raise ValidationError("generator 0 is meaningless")
        S, C = braid_act(S, C, abs(g), inverse=g < 0)
    return S, C


def char_poly(M: Matrix) -> list[Fraction]:
    """Characteristic polynomial coefficients [1, c_1, ..., c_n] of an exact
    matrix, by the Faddeev-LeVerrier recursion."""
    n = len(M)
    coeffs = [Fraction(1)]
    A = [[Fraction(x) for x in row] for row in M]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        Mk[i][i] = Fraction(1)
    for k in range(1, n + 1):
        AM = _mat_mul(A, Mk)
        ck = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(ck)
        Mk = [list(row) for row in AM]
        for i in range(n):
            Mk[i][i] += ck
    return coeffs


def stokes_monodromy_invariant(S) -> list[Fraction]:
    """Characteristic polynomial of S^{-T} S, exact; a braid-move invariant."""
    from .linalg import mat_inverse, mat_mul, mat_transpose

    Sx = tuple(tuple(Fraction(x) for x in row) for row in S)
    M = mat_mul(mat_transpose(mat_inverse(Sx)), Sx)
    return char_poly([list(r) for r in M])


def sign_canonical(S: Matrix, C=None):
    """Canonical representative of the class {D S D, C D : D = diag(+-1)}.

    Signs propagate from the lowest index of each connected component of the
    nonzero off-diagonal pattern, making the first nonzero entry of each
    processed row positive."""
    n = len(S)
    d: list[int | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and d[j] is None:
                    val = S[i][j] if S[i][j] != 0 else S[j][i]
                    if val != 0:
                        d[j] = d[i] if val > 0 else -d[i]
                        stack.append(j)
    signs = [x if x is not None else 1 for x in d]
    S2 = [[S[i][j] * signs[i] * signs[j] for j in range(n)] for i in range(n)]
    C2 = None
    if C is not None:
        if isinstance(C, mp.matrix):
            C2 = C.copy()
            for j in range(n):
                for i in range(C.rows):
                    C2[i, j] = C[i, j] * signs[j]
        else:
            C2 = [[C[i][j] * signs[j] for j in range(n)] for i in range(len(C))]
    return S2, C2


def _orbit_key(S: Matrix, C) -> tuple:
    skey = tuple(tuple(x for x in row) for row in S)
    if C is None:
        return skey
    if isinstance(C, mp.matrix):
        ckey = tuple(
            (mp.nstr(C[i, j], 10)) for i in range(C.rows) for j in range(C.cols)
        )
    else:
        ckey = tuple(repr(x) for row in C for x in row)
    return skey + (ckey,)


@dataclass
class BraidOrbit:
    classes: list[tuple[Matrix, object]]
    truncated: bool
    depth: int

    @property
    def size(self) -> int:
        return len(self.classes)


def braid_orbit(S, C=None, depth: int = 3, cap: int = 1000) -> BraidOrbit:
    """Breadth-first closure under sigma_i^{+-1} up to ``depth``, deduplicated
    modulo sign diagonals; stops (with a flag) once ``cap`` classes are held."""
    if depth < 0:
        raise ValidationError("depth must be >= 0")
    S = _as_exact(S)
    _check_stokes_shape(S)
    n = len(S)
    start = sign_canonical(S, C)
    seen = {_orbit_key(*start)}
    classes = [start]
    frontier = [start]
    truncated = False
    for _ in range(depth):
        if truncated:
            break
        new_frontier = []
        for Scur, Ccur in frontier:
            for i in range(1, n):
                for inv in (False, True):
                    S2, C2 = braid_act(Scur, Ccur, i, inverse=inv)
                    canon = sign_canonical(S2, C2)
                    key = _orbit_key(*canon)
                    if key not in seen:
                        if len(classes) >= cap:
                            truncated = True
                            break
                        seen.add(key)
                        classes.append(canon)
                        new_frontier.append(canon)
                if truncated:
                    break
            if truncated:
                break
        frontier = new_frontier
    return BraidOrbit(classes, truncated, depth)


# -- P^d connection data --------------------------------------------------------------

def gamma_laurent_coefficients(d: int, dps: int) -> list[mp.mpc]:
    """A_k(d), k = 0..d: Laurent coefficients at x -> 0 of
    (-1)^{d+1} Gamma^{d+1}(-x) e^{-pi i dbar x} = x^{-(d+1)} (A_0 + A_1 x + ...),
    computed from log Gamma(1 - x) = euler x + sum_{m>=2} zeta(m) x^m / m."""
    dbar = 1 if d % 2 == 0 else 0
    with mp.workdps(dps):
        order = d + 1
        g = [mp.mpc(0)] * (order + 1)
        if order >= 1:
            g[1] = mp.euler * (d + 1) - mp.pi * 1j * dbar
        for m in range(2, order + 1):
            g[m] = mp.zeta(m) * (d + 1) / m
        a = [mp.mpc(1)] + [mp.mpc(0)] * order
        for k in range(1, order + 1):
            acc = mp.mpc(0)
            for j in range(1, k + 1):
                acc += j * g[j] * a[k - j]
            a[k] = acc / k
        return a[: d + 1]


@dataclass
class PdConnectionData:
    """Central connection data of P^d: C = C' C'' plus the Laurent inputs.

    ``gram`` is the matrix the compatibility identity reproduces exactly,
    binom(d+j-i, d); it equals the binom(d+1, j-i) Stokes matrix for d = 1 and
    is braid-equivalent to it for every d."""

    d: int
    a_coefficients: tuple[mp.mpc, ...]
    c_prime: mp.matrix
    c_double_prime: mp.matrix
    connection: mp.matrix
    dps: int

    @property
    def n(self) -> int:
        return self.d + 1

    def gram(self) -> list[list[int]]:
        n = self.n
        return [
            [comb(self.d + j - i, self.d) if j >= i else 0 for j in range(n)]
            for i in range(n)
        ]

    def monodromy_data(self, classical: PdClassicalData | None = None) -> MonodromyData:
        pd = classical or pd_classical_data(self.d)
        return MonodromyData(
            n=self.n,
            form=pd.eta,
            mu=pd.mu_matrix(),
            r=pd.r,
            e1=tuple(1 if k == 0 else 0 for k in range(self.n)),
            stokes=self.gram(),
            connection=self.connection,
            dps=self.dps,
        )


def pd_connection(d: int, dps: int | None = None) -> PdConnectionData:
    """Assemble C', C'' and C for P^d at ``dps`` working digits."""
    if d < 1:
        raise AlgebraError("need d >= 1")
    dps = dps or default_dps()
    n = d + 1
    dbar = 1 if d % 2 == 0 else 0
    a = gamma_laurent_coefficients(d, dps + 10)
    with mp.workdps(dps + 10):
        pref = (-1) ** (d + 1) * (1j ** (1 - dbar)) * (2 * mp.pi) ** (-mp.mpf(d) / 2)
        cp = mp.matrix(n)
        for al in range(n):
            for be in range(al + 1):
                cp[al, be] = pref * a[al - be]
        cpp = mp.matrix(n)
        for be in range(n):
            for j in range(n):
                cpp[be, j] = (2 * mp.pi * 1j * j) ** be / mp.factorial(be)
        c = cp * cpp
    return PdConnectionData(d, tuple(a), cp, cpp, c, dps)


def pd_monodromy(d: int, dps: int | None = None, use_gram: bool = False) -> MonodromyData:
    """Full monodromy tuple of P^d.  With ``use_gram`` False the Stokes matrix
    is the binomial form binom(d+1, j-i); the assembled C is compatible with
    that matrix exactly when d = 1 (for d >= 2 the two Stokes forms differ by
    a braid and the compatibility partner of C is the Gram form)."""
    conn = pd_connection(d, dps)
    data = conn.monodromy_data()
    if not use_gram:
        data.stokes = pd_stokes(d)
    return data

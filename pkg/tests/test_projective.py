from fractions import Fraction
from math import comb

import pytest

from frobforge.charts import check_axioms, check_wdvv
from frobforge.poly import MultiPoly
from frobforge.projective import (
    build_p2_chart,
    instanton_numbers,
    pd_classical_data,
    pd_stokes,
)


def quadratic_count_oracle(max_degree):
    """Independent check: the classical quadratic recursion for counts of
    rational plane curves, seeded with one line through two points."""
    N = {1: Fraction(1)}
    for d in range(2, max_degree + 1):
        total = Fraction(0)
        for a in range(1, d):
            b = d - a
            total += N[a] * N[b] * (
                a**2 * b**2 * comb(3 * d - 4, 3 * a - 2)
                - a**3 * b * comb(3 * d - 4, 3 * a - 1)
            )
        N[d] = total
    return [N[d] for d in range(1, max_degree + 1)]


def test_counts_match_quadratic_recursion():
    assert instanton_numbers(5) == quadratic_count_oracle(5)


def test_low_degree_counts():
    assert instanton_numbers(2) == [Fraction(1), Fraction(1)]
    assert instanton_numbers(3)[2] == 12


def test_counts_are_positive_integers_in_range():
    for nd in instanton_numbers(5):
        assert nd.denominator == 1 and nd > 0


def test_chart_degree_zero_is_classical_cubic():
    chart = build_p2_chart(0)
    f = chart.potential
    assert f.marker_degrees() == [0]
    expect = MultiPoly(
        3, {(2, 0, 1): Fraction(1, 2), (1, 2, 0): Fraction(1, 2)}
    )
    assert f.part(0) == expect


def test_chart_degree_one_term():
    chart = build_p2_chart(1)
    assert chart.potential.part(1) == MultiPoly(
        3, {(0, 0, 2): Fraction(1, 2)}
    )


@pytest.mark.parametrize("degree", [1, 3, 5])
def test_chart_passes_checks_through_truncation(degree):
    chart = build_p2_chart(degree)
    assert check_wdvv(chart).passed
    report = check_axioms(chart)
    assert report.unity_ok and report.quasihomogeneous


def test_classical_data_d1():
    pd = pd_classical_data(1)
    assert pd.mu == (Fraction(-1, 2), Fraction(1, 2))
    assert pd.r == ((0, 0), (2, 0))


def test_classical_data_d2():
    pd = pd_classical_data(2)
    assert pd.mu == (Fraction(-1), Fraction(0), Fraction(1))
    assert [pd.r[i][j] for i in range(3) for j in range(3) if pd.r[i][j]] == [3, 3]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_mu_trace_identity(d):
    pd = pd_classical_data(d)
    assert sum(m * m for m in pd.mu) == sum(
        (Fraction(k) - Fraction(d, 2)) ** 2 for k in range(d + 1)
    )


@pytest.mark.parametrize("d", [1, 2, 3])
def test_mu_skew_and_r_nilpotent(d):
    pd = pd_classical_data(d)
    n = pd.n
    mu = pd.mu_matrix()
    # <mu a, b> + <a, mu b> = 0 for the antidiagonal pairing
    for a in range(n):
        for b in range(n):
            s = sum(pd.eta[a][k] * mu[k][b] + mu[k][a] * pd.eta[k][b] for k in range(n))
            assert s == 0
    # R shifts the grading by one: R^{d+1} = 0 and mu R - R mu = R
    R = [[Fraction(x) for x in row] for row in pd.r]

    def matmul(A, B):
        return [
            [sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    power = R
    for _ in range(d):
        power = matmul(power, R)
    assert all(x == 0 for row in power for x in row)
    comm = [
        [
            sum(mu[i][k] * R[k][j] - R[i][k] * mu[k][j] for k in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    assert comm == R


def test_chart_euler_data_matches_classical_package():
    # the chart's Euler field encodes the same (mu, R) data as the classical
    # P^2 package: linear weights 1 + mu_1 - mu_a and the constant part equal
    # to the Chern-class column through the unity vector
    chart = build_p2_chart(1)
    pd = pd_classical_data(2)
    n = 3
    for a in range(n):
        assert chart.euler_linear[a][a] == 1 + pd.mu[0] - pd.mu[a]
        assert chart.euler_const[a] == pd.r[a][0]
    assert chart.charge_d == 2
    assert chart.eta == tuple(tuple(Fraction(x) for x in row) for row in pd.eta)


def test_frames_on_series_chart():
    # numeric evaluation of marker series inside the frame builder, at a
    # point where the truncated product is converged far below tolerance
    import numpy as np
    from frobforge.frames import ChartEvaluator, canonical_frame

    chart = build_p2_chart(5)
    ev = ChartEvaluator(chart)
    fr = canonical_frame(ev, [0.1, -1.0, 0.4])
    eta = np.array([[float(x) for x in row] for row in chart.eta])
    assert np.max(np.abs(fr.psi.T @ fr.psi - eta)) < 1e-10
    spec_v = sorted(np.linalg.eigvals(fr.v), key=lambda z: z.real)
    assert max(abs(a - b) for a, b in zip(spec_v, (-1, 0, 1))) < 1e-8
    assert fr.defect < 1e-11


@pytest.mark.parametrize("d", [1, 2, 3])
def test_r_skew_for_twisted_pairing(d):
    # {x, y} = <e^{pi i mu} x, y> satisfies {Rx, y} + {x, Ry} = 0; with
    # half-integer mu the weights are exact powers of i
    pd = pd_classical_data(d)
    n = pd.n
    phase = [1j ** (2 * k - d) for k in range(n)]

    def twisted(x, y):
        return sum(phase[k] * x[k] * pd.eta[k][l] * y[l] for k in range(n) for l in range(n))

    R = pd.r
    for a in range(n):
        for b in range(n):
            x = [1 if k == a else 0 for k in range(n)]
            y = [1 if k == b else 0 for k in range(n)]
            rx = [sum(R[i][k] * x[k] for k in range(n)) for i in range(n)]
            ry = [sum(R[i][k] * y[k] for k in range(n)) for i in range(n)]
            assert twisted(rx, y) + twisted(x, ry) == 0


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_stokes_binomials(d):
    S = pd_stokes(d)
    n = d + 1
    # row sums against the Pascal-triangle partial sums
    for i in range(n):
        assert sum(S[i]) == sum(comb(d + 1, k) for k in range(n - i))
        assert S[i][i] == 1
    assert S[0][1] == d + 1


def test_stokes_d1_and_d2():
    assert pd_stokes(1) == [[1, 2], [0, 1]]
    assert pd_stokes(2) == [[1, 3, 3], [0, 1, 3], [0, 0, 1]]

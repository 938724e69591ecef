from fractions import Fraction

import numpy as np
import pytest

from frobforge.charts import FMChart
from frobforge.errors import SemisimplicityError
from frobforge.frames import (
    ChartEvaluator,
    canonical_coordinates,
    canonical_frame,
    match_ordering,
    vi_matrices,
)
from frobforge.linalg import frac_matrix
from frobforge.poly import MultiPoly
from frobforge.unfolding import Unfolding, build_an_chart, critical_values, flat_coordinates


def mk(arity, terms):
    return MultiPoly(arity, {tuple(e): Fraction(c) for e, c in terms.items()})


def split_cubic():
    return FMChart(
        n=2,
        eta=frac_matrix([[2, 0], [0, 2]]),
        potential=mk(2, {(3, 0): Fraction(1, 3), (1, 2): 1}),
        euler_linear=frac_matrix([[1, 0], [0, 1]]),
        euler_const=(Fraction(0), Fraction(0)),
        charge_d=Fraction(0),
        unity_index=1,
    )


def line_chart():
    return FMChart(
        n=1,
        eta=frac_matrix([[1]]),
        potential=mk(1, {(3,): Fraction(1, 6)}),
        euler_linear=frac_matrix([[1]]),
        euler_const=(Fraction(0),),
        charge_d=Fraction(0),
        unity_index=1,
    )


def test_line_chart_frame():
    fr = canonical_frame(line_chart(), [0.7])
    assert abs(fr.u[0] - 0.7) < 1e-14
    assert abs(fr.psi[0, 0] - 1) < 1e-14
    assert abs(fr.v[0, 0]) < 1e-14


def test_split_cubic_coordinates_linear():
    # idempotent coordinates are t1 + t2 and t1 - t2
    ev = ChartEvaluator(split_cubic())
    u = canonical_coordinates(ev, [0.9, 0.4])
    assert sorted(x.real for x in u) == pytest.approx([0.5, 1.3], abs=1e-12)


def test_split_cubic_frame_hand_oracle():
    fr = canonical_frame(split_cubic(), [0.9, 0.4])
    # Psi rows are (1, +-1) for the two normalized idempotents
    got = sorted(tuple(np.round(row.real, 9)) for row in fr.psi)
    assert got == [(1.0, -1.0), (1.0, 1.0)]
    # charge 0 with grad E = Id makes mu = 0 and hence V = 0
    assert np.max(np.abs(fr.v)) < 1e-13


def test_caustic_detection():
    with pytest.raises(SemisimplicityError):
        canonical_coordinates(split_cubic(), [0.9, 0.0])  # t2 = 0 merges the u's


def test_frame_identities_on_a3():
    chart = build_an_chart(3)
    ev = ChartEvaluator(chart)
    eta = np.array([[float(x) for x in row] for row in chart.eta])
    rng = np.random.default_rng(2)
    for _ in range(5):
        t = rng.normal(size=3) + 1j * rng.normal(size=3) * 0.3
        try:
            fr = canonical_frame(ev, t)
        except SemisimplicityError:
            continue
        assert np.max(np.abs(fr.psi.T @ fr.psi - eta)) < 1e-10
        assert np.max(np.abs(fr.v + fr.v.T)) < 1e-10
        spec_v = sorted(np.linalg.eigvals(fr.v), key=lambda z: z.real)
        spec_mu = sorted(float(m) for m in fr.mu_diag)
        assert max(abs(a - b) for a, b in zip(spec_v, spec_mu)) < 1e-8
        # branch-free determinant identity: det(eta) J^2 = prod <pi_i, pi_i>
        det_eta = np.linalg.det(eta)
        assert abs(det_eta * fr.J**2 - np.prod(fr.norms)) < 1e-10


def test_jacobian_matches_finite_differences():
    # dt^a/du_i from the idempotents agrees with numeric differentiation of
    # the critical values (the inverse map), used here as the oracle
    chart = build_an_chart(2)
    ev = ChartEvaluator(chart)
    t0 = np.array([0.4, -1.1])
    fr = canonical_frame(ev, t0)
    h = 1e-6
    num = np.zeros((2, 2), dtype=complex)  # du_i/dt^a
    for a in range(2):
        tp, tm = t0.astype(complex).copy(), t0.astype(complex).copy()
        tp[a] += h
        tm[a] -= h
        up = canonical_frame(ev, tp).u
        um = canonical_frame(ev, tm).u
        num[:, a] = (up - um) / (2 * h)
    # fr.jacobian rows are dt^a/du_i; its inverse transposed gives du/dt
    inv = np.linalg.inv(fr.jacobian)
    assert np.max(np.abs(inv.T - num)) < 1e-6


def test_a2_spectrum_at_marked_point():
    # the unfolding point s = (-3, 0) maps to t = (0, -3) and has Euler
    # spectrum {-2, 2}, the critical values of x^3 - 3x
    chart = build_an_chart(2)
    u = canonical_coordinates(chart, [0.0, -3.0])
    assert sorted(x.real for x in u) == pytest.approx([-2.0, 2.0], abs=1e-12)


def test_canonical_equals_critical_values():
    chart = build_an_chart(3)
    unf = Unfolding.build(3)
    fc = flat_coordinates(unf)
    ev = ChartEvaluator(chart)
    s = [Fraction(1), Fraction(-2), Fraction(1, 2)]
    t = [complex(p.evaluate(s)) for p in fc.t_of_s]
    u = canonical_coordinates(ev, t)
    cv = critical_values(unf, s)
    key = lambda z: (round(z.real, 8), round(z.imag, 8))
    assert max(
        abs(a - b) for a, b in zip(sorted(u, key=key), sorted(cv, key=key))
    ) < 1e-8


def test_canonical_equals_critical_values_a4():
    chart = build_an_chart(4)
    unf = Unfolding.build(4)
    fc = flat_coordinates(unf)
    ev = ChartEvaluator(chart)
    s = [Fraction(2), Fraction(-1), Fraction(3), Fraction(1, 3)]
    t = [complex(p.evaluate(s)) for p in fc.t_of_s]
    u = canonical_coordinates(ev, t)
    cv = critical_values(unf, s)
    key = lambda z: (round(z.real, 8), round(z.imag, 8))
    assert max(
        abs(a - b) for a, b in zip(sorted(u, key=key), sorted(cv, key=key))
    ) < 1e-8


def test_vi_two_by_two():
    u = [0.0, 1.0]
    v = 0.3 - 0.2j
    V = np.array([[0, v], [-v, 0]])
    vis = vi_matrices(u, V)
    assert abs(vis.vs[0][0, 1] - v / (u[0] - u[1])) < 1e-14
    assert np.max(np.abs(vis.vs[0] + vis.vs[1])) < 1e-14


def test_vi_zero_v():
    vis = vi_matrices([0.0, 1.0, 2.0], np.zeros((3, 3)))
    for Vi in vis.vs:
        assert np.max(np.abs(Vi)) == 0


def test_vi_defining_equations():
    rng = np.random.default_rng(0)
    u = np.array([0.0, 1.0, 2.5 + 0.5j, -1.0 + 1.0j])
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    V = (A - A.T) / 2
    vis = vi_matrices(u, V)
    U = np.diag(u)
    for i, Vi in enumerate(vis.vs):
        lhs = U @ Vi - Vi @ U
        rhs = vis.e_units[i] @ V - V @ vis.e_units[i]
        assert np.max(np.abs(lhs - rhs)) < 1e-12
        assert np.max(np.abs(Vi + Vi.T)) < 1e-12
    assert np.max(np.abs(vis.total())) < 1e-12


def test_vi_rejects_coincident_u():
    with pytest.raises(SemisimplicityError):
        vi_matrices([1.0, 1.0], np.zeros((2, 2)))


def test_match_ordering():
    u_ref = np.array([1.0, 2.0, 3.0])
    u_new = np.array([3.001, 1.002, 1.998])
    assert match_ordering(u_ref, u_new) == (1, 2, 0)

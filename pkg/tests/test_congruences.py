import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extremal.congruences import (
    admissible_k,
    check_congruence,
    modulus_for,
    sturm_bound,
    sturm_witness,
    u_operator,
    verify_theorem3,
)
from extremal.modular import J_series, zk_series
from extremal.series import QSeries, delta_series


def test_moduli_table():
    assert modulus_for(2) == 2048
    assert modulus_for(3) == 243
    assert modulus_for(5) == 25
    assert modulus_for(7) == 7
    assert modulus_for(11) == 11
    with pytest.raises(ValueError):
        modulus_for(13)
    assert admissible_k(2) == [1, 3]
    assert sturm_bound(11, 12) == 1584


def test_u_operator_relabels():
    f = QSeries.from_dict({-2: 1, 2: 1})
    assert u_operator(f, 2).to_dict() == {-1: 1, 1: 1}
    g = QSeries.from_dict({-1: 1, 3: 3}, order=4)
    assert u_operator(g, 2).is_zero()
    assert u_operator(g, 2).order == 2


def test_u2_of_J_mod_2048():
    J = J_series(41)
    assert J[2] == 21493760 == 2**11 * 10495
    u = u_operator(J.reduce(2048), 2)
    assert all(u[n] == 0 for n in range(1, 20))


def test_single_coefficient_examples():
    J = J_series(12)
    assert J[2] % 2048 == 0
    assert J[5] % 25 == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_all_k_at_sturm_bound(p):
    for k in admissible_k(p):
        rep = verify_theorem3(p, k)
        assert rep.ok, (p, k, rep.failures[:3])
        assert rep.bound == k * p * (p + 1)


def test_p11_k1():
    rep = verify_theorem3(11, 1)
    assert rep.ok and rep.bound == 132


def test_negative_multiples_checked():
    rep = verify_theorem3(2, 3)
    # pn in {-2}: one negative multiple inside -3 <= pn <= -1
    assert rep.negative_checked == 1
    rep = verify_theorem3(3, 4)
    assert rep.negative_checked == 1


def test_invalid_pair_rejected():
    with pytest.raises(ValueError):
        verify_theorem3(5, 5)


@pytest.mark.parametrize("p,k,e", [(2, 1, 5), (3, 2, 11), (5, 4, 100), (7, 8, 49)])
def test_negative_control(p, k, e):
    n_max = sturm_bound(p, k)
    z = zk_series(k, p * n_max + 1)
    assert check_congruence(z, p, k, n_max).ok
    coeffs = list(z.coeffs)
    coeffs[p * e + k] += 1
    bad = QSeries(coeffs, z.valuation, z.order)
    rep = verify_theorem3(p, k, z=bad)
    assert rep.failures == [(e, 1)]


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 3), (5, 2)])
def test_sturm_witness_vanishes(p, k):
    w = sturm_witness(p, k)
    count = sturm_bound(p, k) + 1
    assert w.order >= count
    assert all(w[n] == 0 for n in range(count))


def test_sturm_witness_first_terms():
    assert all(c == 0 for c in sturm_witness(2, 1).coefficients(0, 6))
    assert all(c == 0 for c in sturm_witness(3, 1).coefficients(0, 12))


def test_sturm_witness_constant_term_matters():
    # w_k(0) is outside the congruence; left in, it shows up at q^{kp}
    w = sturm_witness(2, 3, subtract_constant=False)
    z0 = zk_series(3, 2)[0] % 2048
    assert z0 != 0
    assert w[6] == z0
    assert all(w[n] == 0 for n in range(6))


def test_delta_power_valuation():
    p, k = 3, 2
    d = (delta_series(40) ** (k * p)).scale(p)
    assert d.valuation == k * p * p


series_st = st.builds(
    lambda v, cs, extra: QSeries(cs, v, v + len(cs) + extra),
    st.integers(-6, 6),
    st.lists(st.integers(-(10**20), 10**20), min_size=1, max_size=40),
    st.integers(0, 4),
)


@settings(max_examples=80, deadline=None)
@given(series_st, series_st, st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([2, 3, 5, 7, 11]))
def test_u_is_linear(f, g, a, b, p):
    lhs = u_operator(a * f + b * g, p)
    rhs = a * u_operator(f, p) + b * u_operator(g, p)
    assert lhs.agrees_with(rhs)


@settings(max_examples=80, deadline=None)
@given(series_st, st.sampled_from([2, 3, 5, 7, 11]), st.integers(2, 5000))
def test_reduce_commutes_with_u(f, p, m):
    assert u_operator(f.reduce(m), p) == u_operator(f, p).reduce(m)

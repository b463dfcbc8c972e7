import mpmath
import pytest
from mpmath import mp, mpf

from extremal.modular import zk_build
from extremal.series import e2_series, partition_numbers
from extremal.singular_moduli import (
    EnumerationIncompleteError,
    HeegnerForm,
    PrecisionInfeasibleError,
    class_number_oracle,
    corollary2_assemble,
    enumerate_forms,
    evaluate_P,
    forms_inequivalent,
    g_series,
    reduce_form,
    trace_P,
)

P = partition_numbers(30)


def brute_reduced_count(D):
    """Reduced forms by an unpruned search over a box."""
    count = 0
    for A in range(1, -D + 1):
        for B in range(-A + 1, A + 1):
            if (B * B - D) % (4 * A):
                continue
            C = (B * B - D) // (4 * A)
            if C > A or (C == A and B >= 0):
                count += 1
    return count


def test_class_number_oracle():
    assert class_number_oracle(-23) == 3
    assert class_number_oracle(-47) == 5
    assert class_number_oracle(-3) == 1
    for n in range(1, 21):
        D = 1 - 24 * n
        assert class_number_oracle(D) == brute_reduced_count(D)
    with pytest.raises(ValueError):
        class_number_oracle(5)


def test_reduce_form_is_reduced_and_equivalent():
    for f in [(6, 1, 1), (12, -11, 3), (18, -11, 2), (30, 13, 11)]:
        a, b, c = reduce_form(*f)
        assert b * b - 4 * a * c == f[1] ** 2 - 4 * f[0] * f[2]
        assert abs(b) <= a <= c


def test_enumerate_forms_small():
    forms = enumerate_forms(1)
    assert len(forms) == 3
    assert all(f.discriminant == -23 and f.is_member(1) for f in forms)
    assert len(enumerate_forms(2)) == 5


def test_enumerate_forms_to_20():
    for n in range(1, 21):
        forms = enumerate_forms(n)
        assert len(forms) == class_number_oracle(1 - 24 * n)
        assert all(f.is_member(n) for f in forms)
        assert forms == sorted(forms)
        assert forms_inequivalent(forms)


def test_enumeration_bound_is_reported():
    with pytest.raises(EnumerationIncompleteError):
        enumerate_forms(20, max_a=6)


def test_inequivalence_detects_duplicates():
    f = HeegnerForm(6, 1, 1)
    # [6,1,1] moved by tau -> tau + 1 is [6, -11, 6]; same class
    g = HeegnerForm(6, -11, 6)
    assert reduce_form(6, 1, 1) == reduce_form(6, -11, 6)
    assert not forms_inequivalent([f, g])


def test_cm_point_is_a_root():
    with mp.workprec(128):
        for f in enumerate_forms(4):
            t = f.cm_point(128).tau
            assert abs(f.a * t * t + f.b * t + f.c) < mpf(2) ** -100
            assert t.imag > 0


def test_g_series():
    g = g_series(200)
    assert g.valuation == -1
    assert g[-1] == 1
    assert all(isinstance(c, int) for c in g.coeffs)
    assert e2_series(3).scale(2)[2] == -24


def test_P_conjugation_symmetry():
    with mp.workprec(96):
        tau = mpmath.mpc("0.137", "0.41")
        a = evaluate_P(tau, 96)
        b = evaluate_P(-mpmath.conj(tau), 96)
        assert abs(a - mpmath.conj(b)) < mpf(2) ** -80


def test_P_large_imaginary_part_follows_leading_term():
    # leading term g_{-1} q^{-1} (1 - 1/(2 pi y)) dominates
    y = mpf(3)
    with mp.workprec(80):
        val = evaluate_P(mpmath.mpc(0, y), 80)
        lead = mpmath.exp(2 * mp.pi * y) * (1 - 1 / (2 * mp.pi * y))
        assert abs(val / lead - 1) < mpf("1e-6")


def test_P_two_precisions_at_cm_points():
    for n in (1, 3, 7):
        for f in enumerate_forms(n):
            lo = evaluate_P(f.cm_point(192).tau, 96)
            hi = evaluate_P(f.cm_point(192).tau, 192)
            assert abs(lo - hi) < mpf(2) ** -48


def test_P_is_invariant_on_the_class():
    f = HeegnerForm(6, 1, 1)
    with mp.workprec(160):
        t = f.cm_point(160).tau
        moved = t / (6 * t + 1)  # an element of Gamma_0(6)
    a = evaluate_P(t, 96)
    b = evaluate_P(moved, 96)
    assert abs(a - b) < mpf(2) ** -80


def test_P_rejects_lower_half_plane_and_tiny_im():
    with pytest.raises(ValueError):
        evaluate_P(mpmath.mpc(0, -1))
    with pytest.raises(PrecisionInfeasibleError):
        evaluate_P(mpmath.mpc(0, "1e-4"), 64)


@pytest.mark.parametrize("n,p", [(1, 1), (5, 7), (20, 627)])
def test_trace_examples(n, p):
    tr = trace_P(n)
    assert tr.p_candidate == p
    assert tr.class_count == class_number_oracle(1 - 24 * n)


def test_trace_of_one_is_23():
    tr = trace_P(1)
    assert abs(tr.trace - 23) < mpf(2) ** -40


def test_trace_to_20_within_tolerance():
    for n in range(1, 21):
        tr = trace_P(n)
        assert tr.p_candidate == P[n]
        assert tr.integer_distance < mpf(2) ** -32
        assert abs(tr.trace.imag) < mpf(2) ** (-tr.prec // 2)


def test_corollary_examples():
    z1 = corollary2_assemble(1, 3)
    assert z1.rounded()[0] == 0
    assert z1.rounded()[1] == 196884
    z2 = corollary2_assemble(2, 2)
    assert z2.rounded()[0] == 1 == P[2] - P[1]
    z3 = corollary2_assemble(3, 5)
    exact = zk_build(3, 6).series
    assert [z3.rounded()[e] for e in range(1, 6)] == [exact[e] for e in range(1, 6)]

"""Acceptance criteria, one test each.

Every test checks the stated tolerance and its wall-clock budget.  A summary
line per criterion is printed at the end of the run by ``conftest.py``.
"""

import random
import time

from mpmath import mpf

from extremal.congruences import admissible_k, check_congruence, u_operator, verify_theorem3
from extremal.modular import (
    J_series,
    extremal_principal_part,
    faber_and_jd,
    omega_identity_check,
    principal_part,
    zk_build,
    zk_route_partitions,
    zk_route_pp,
    zk_series,
)
from extremal.rademacher import jd_coeff_rademacher, p_rademacher
from extremal.series import QSeries, partition_numbers, restricted_partition_series
from extremal.singular_moduli import class_number_oracle, corollary2_assemble, enumerate_forms, evaluate_P, trace_P


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        if exc[0] is None:
            elapsed = time.perf_counter() - self.start
            assert elapsed < self.seconds, f"took {elapsed:.1f} s, budget {self.seconds} s"


def test_criterion_01_small_extremal_functions():
    with Budget(1):
        z1 = zk_build(1, 30)
        assert z1.series == J_series(30)
        assert z1.jpoly_J.coeffs == (0, 1)
        assert zk_build(2, 2).jpoly_J.coeffs == (-393767, 0, 1)
        assert zk_build(3, 2).jpoly_J.coeffs == (-64481279, -590651, 0, 1)


def test_criterion_02_faber_anchors():
    with Budget(1):
        fabers, _ = faber_and_jd(2, 4)
        assert fabers[1].coeffs == (-744, 1)
        assert fabers[2].coeffs == (159768, -1488, 1)


def test_criterion_03_construction_routes_agree():
    with Budget(30):
        N = 201
        _, jds = faber_and_jd(12, N)
        for k in range(1, 13):
            zi = zk_route_partitions(k, jds)
            zii = zk_route_pp(k, jds)
            assert zi == zii
            assert zi.order >= 201
            want = principal_part(restricted_partition_series(k + 1).shift(-k))
            assert principal_part(zi) == want == extremal_principal_part(k)


def test_criterion_04_congruences_full_matrix():
    with Budget(600):
        for p in (2, 3, 5, 7, 11):
            for k in admissible_k(p):
                rep = verify_theorem3(p, k)
                assert rep.bound == k * p * (p + 1)
                assert rep.ok, (p, k, rep.failures[:5])


def test_criterion_05_rademacher_partitions():
    with Budget(120):
        p = partition_numbers(200)
        for n in range(1, 201):
            est = p_rademacher(n)
            assert est.gate_ok
            assert est.nearest == p[n], n


def test_criterion_06_rademacher_jd():
    with Budget(120):
        _, jds = faber_and_jd(8, 9)
        assert jd_coeff_rademacher(1, 1).nearest == 196884
        for d in range(1, 9):
            for n in range(1, 9):
                est = jd_coeff_rademacher(d, n)
                assert est.gate_ok
                assert est.nearest == jds[d][n], (d, n)


def test_criterion_07_traces_give_partitions():
    with Budget(300):
        p = partition_numbers(20)
        assert len(enumerate_forms(1)) == class_number_oracle(-23) == 3
        for n in range(1, 21):
            assert len(enumerate_forms(n)) == class_number_oracle(1 - 24 * n)
            tr = trace_P(n)
            assert tr.distance < 0.25
            assert tr.p_candidate == p[n]
            assert tr.integer_distance < mpf(2) ** -32


def test_criterion_08_corollary_assembly():
    with Budget(300):
        for k in range(1, 6):
            exact = zk_build(k, 11).series
            got = corollary2_assemble(k, 10).rounded()
            assert [got[e] for e in range(-k, 11)] == [exact[e] for e in range(-k, 11)], k


def test_criterion_09_two_variable_identity():
    with Budget(60):
        rep = omega_identity_check(8)
        assert rep.ok, rep.mismatches[:3]


def _random_series(rng, lo=-4, hi=4, length=60):
    v = rng.randint(lo, hi)
    n = rng.randint(1, length)
    cs = [rng.randint(-(10**25), 10**25) for _ in range(n)]
    return QSeries(cs, v, v + n + rng.randint(0, 4))


def test_criterion_10_property_suites():
    rng = random.Random(20240611)
    # ring laws
    for _ in range(150):
        a, b, c = (_random_series(rng) for _ in range(3))
        assert a * b == b * a and a + b == b + a
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * (b + c)).agrees_with(a * b + a * c)
    # U(p) linearity and commutation with reduction
    for _ in range(150):
        f, g = _random_series(rng), _random_series(rng)
        p = rng.choice([2, 3, 5, 7, 11])
        x, y = rng.randint(-99, 99), rng.randint(-99, 99)
        assert u_operator(x * f + y * g, p).agrees_with(x * u_operator(f, p) + y * u_operator(g, p))
        m = rng.randint(2, 10**6)
        assert u_operator(f.reduce(m), p) == u_operator(f, p).reduce(m)
    # negative control: one corrupted coefficient is caught
    for p, k in ((2, 3), (5, 2), (11, 1)):
        n_max = k * p * (p + 1)
        z = zk_series(k, p * n_max + 1)
        assert check_congruence(z, p, k, n_max).ok
        n = rng.randint(1, n_max)
        cs = list(z.coeffs)
        cs[p * n - z.valuation] += 1
        rep = check_congruence(QSeries(cs, z.valuation, z.order), p, k, n_max)
        assert rep.failures == [(n, 1)]
    # two-precision numerical agreement
    for n in (7, 60, 180):
        a = p_rademacher(n, c_max=25, prec=128)
        b = p_rademacher(n, c_max=25, prec=256)
        assert abs(a.value - b.value) < mpf(2) ** -64
    for f in enumerate_forms(6):
        tau = f.cm_point(256).tau
        assert abs(evaluate_P(tau, 100) - evaluate_P(tau, 200)) < mpf(2) ** -50

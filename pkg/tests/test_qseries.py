"""Series arithmetic: windows, ring axioms, Poincare series, involution."""

import random

import pytest

from qdilog.errors import NonUnitLeadingCoefficient
from qdilog.qseries import (
    LaurentPoly,
    QSeries,
    dilog_term_denominator,
    dilog_term_numerator,
    gauss_term_denominator,
    gauss_term_numerator,
    involute,
    poincare_P,
)


def series_from_dict(d, hi):
    """Reference constructor from {texp: coeff}."""
    if not d:
        return QSeries.zero(hi)
    lo = min(d)
    return QSeries(lo, [d.get(e, 0) for e in range(lo, hi + 1)], hi)


def brute_partitions(n, parts):
    """Count multisets from `parts` (with repetition) summing to n."""
    if n == 0:
        return 1
    if not parts:
        return 0
    head, tail = parts[0], parts[1:]
    total = 0
    k = 0
    while k * head <= n:
        total += brute_partitions(n - k * head, tail)
        k += 1
    return total


def test_add_cancellation():
    one_plus_q = series_from_dict({0: 1, 2: 1}, 8)
    minus_one = series_from_dict({0: -1}, 8)
    assert one_plus_q + minus_one == series_from_dict({2: 1}, 8)


def test_add_identity():
    s = series_from_dict({-1: 3, 4: 2}, 6)
    assert QSeries.zero(10) + s == s
    assert s + QSeries.zero(10) == s


def test_add_window_rule():
    # t^-1 known to t^3 plus t known to t^2: sum certified only to t^2.
    a = QSeries(-1, [1, 0, 0, 0, 0], 3)
    b = QSeries(1, [1, 0], 2)
    out = a + b
    # reference: explicit coefficient lists on the common window
    expect = {-1: 1, 1: 1}
    assert out.hi == 2
    assert out.lo == -1
    assert {e: c for e, c in out.support()} == expect


def test_mul_inverse_of_one_minus_q():
    one_minus_q = series_from_dict({0: 1, 2: -1}, 12)
    assert one_minus_q * poincare_P(1, 12) == QSeries.one(12)


def test_mul_t_squared():
    t = QSeries.term(1, 1, 9)
    assert (t * t) == QSeries.term(1, 2, 10)


def test_mul_p1_squared_against_partition_oracle():
    # coefficient of q^m in P_1^2 counts partitions into two labeled copies
    # of the size-1 part, i.e. pairs (a, b) with a + b = m
    oracle = [
        sum(1 for a in range(m + 1) for b in [m - a]) for m in range(4)
    ]
    assert oracle == [1, 2, 3, 4]
    prod = poincare_P(1, 8) * poincare_P(1, 8)
    assert [prod.coeff(2 * m) for m in range(4)] == oracle


def test_mul_window_rule():
    a = QSeries(1, [1, 1], 2)
    b = QSeries(-1, [2, 0, 1], 1)
    out = a * b
    assert out.lo == 0
    assert out.hi == min(a.hi + b.lo, b.hi + a.lo)


def test_shift():
    assert QSeries.one(6).shift(2) == QSeries.term(1, 2, 8)
    assert QSeries.term(1, 2, 8).shift(-2) == QSeries.one(6)
    shifted = poincare_P(1, 8).shift(4)
    assert [shifted.coeff(e) for e in (4, 6, 8, 10, 12)] == [1, 1, 1, 1, 1]


def test_inverse_unit_examples():
    one_minus_q = series_from_dict({0: 1, 2: -1}, 16)
    geom = one_minus_q.inverse_unit()
    assert geom.agrees_with(poincare_P(1, 16))
    assert QSeries.one(9).inverse_unit() == QSeries.one(9)
    minus_t = QSeries.term(-1, 1, 7)
    inv = minus_t.inverse_unit()
    assert inv.coeff(-1) == -1
    assert (minus_t * inv).agrees_with(QSeries.one(5))


def test_inverse_unit_random_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        lo = rng.randint(-3, 3)
        hi = lo + rng.randint(0, 9)
        coeffs = [rng.choice([1, -1])] + [
            rng.randint(-4, 4) for _ in range(hi - lo)
        ]
        a = QSeries(lo, coeffs, hi)
        prod = a * a.inverse_unit()
        assert prod.coeff(0) == 1
        assert all(c == 0 for e, c in prod.support() if e != 0)


def test_inverse_unit_rejects_non_unit():
    with pytest.raises(NonUnitLeadingCoefficient):
        series_from_dict({0: 2}, 4).inverse_unit()
    with pytest.raises(NonUnitLeadingCoefficient):
        QSeries.zero(4).inverse_unit()


def test_poincare_P0_is_one():
    assert poincare_P(0, 10) == QSeries.one(10)


def test_poincare_P1_geometric():
    p1 = poincare_P(1, 6)
    assert [p1.coeff(2 * m) for m in range(4)] == [1, 1, 1, 1]
    assert all(p1.coeff(2 * m + 1) == 0 for m in range(3))


def test_poincare_P2_against_partition_oracle():
    oracle = [brute_partitions(m, [1, 2]) for m in range(5)]
    assert oracle == [1, 1, 2, 2, 3]
    p2 = poincare_P(2, 8)
    assert [p2.coeff(2 * m) for m in range(5)] == oracle


def test_ring_axioms_random():
    rng = random.Random(11)

    def rand_series():
        lo = rng.randint(-4, 4)
        n = rng.randint(0, 6)
        return QSeries(lo, [rng.randint(-5, 5) for _ in range(n + 1)], lo + n)

    for _ in range(60):
        a, b, c = rand_series(), rand_series(), rand_series()
        assert (a * b).agrees_with(b * a)
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * (b + c)).agrees_with(a * b + a * c)
        assert (a + b).agrees_with(b + a)


def test_involute_examples():
    t = LaurentPoly.term(1, 1)
    assert involute(t) == LaurentPoly.term(-1, -1)
    q = LaurentPoly.term(1, 2)
    assert involute(q) == LaurentPoly.term(1, -2)
    one_minus_q = LaurentPoly.one() - q
    assert involute(one_minus_q) == LaurentPoly.one() - LaurentPoly.term(1, -2)


def test_involute_is_an_involution():
    rng = random.Random(3)
    for _ in range(50):
        lo = rng.randint(-5, 5)
        p = LaurentPoly(lo, [rng.randint(-6, 6) for _ in range(rng.randint(1, 8))])
        assert involute(involute(p)) == p


def test_involute_is_multiplicative():
    rng = random.Random(5)
    for _ in range(40):
        p = LaurentPoly(rng.randint(-3, 3), [rng.randint(-4, 4) for _ in range(5)])
        r = LaurentPoly(rng.randint(-3, 3), [rng.randint(-4, 4) for _ in range(4)])
        assert involute(p * r) == involute(p) * involute(r)


@pytest.mark.parametrize("j", range(13))
def test_dilog_term_involution_cross_multiplied(j):
    # involute maps the j-th dilogarithm term to the j-th finite-field term:
    # involute(num_E) * den_K == involute(den_E) * num_K as exact polynomials
    lhs = involute(dilog_term_numerator(j)) * gauss_term_denominator(j)
    rhs = involute(dilog_term_denominator(j)) * gauss_term_numerator(j)
    assert lhs == rhs


def test_truncate_and_agrees():
    p = poincare_P(2, 20)
    assert p.truncate(8) == poincare_P(2, 8)
    assert p.agrees_with(poincare_P(2, 12))


def test_json_round_trip():
    s = QSeries(-2, [1, 0, -3, 5], 1)
    assert QSeries.from_json(s.to_json()) == s
    assert s.to_json() == {"lo": -2, "hi": 1, "coeffs": [1, 0, -3, 5]}


def test_render_half_integer_exponents():
    s = series_from_dict({-1: -1, 0: 2, 3: 1, 4: 5}, 6)
    text = s.to_str()
    assert "q^(-1/2)" in text
    assert "q^(3/2)" in text
    assert "5*q^2" in text


def test_zero_normalization():
    z = QSeries(0, [0, 0, 0], 2)
    assert z.is_zero()
    assert z == QSeries.zero(2)
    assert z != QSeries.zero(3)


def test_coeff_beyond_window_raises():
    s = poincare_P(1, 6)
    with pytest.raises(ValueError):
        s.coeff(7)
    assert s.coeff(-5) == 0


def test_truncate_cannot_extend():
    with pytest.raises(ValueError):
        poincare_P(1, 6).truncate(8)


def test_window_soundness_against_exact_polynomials():
    # every claimed window coefficient must match exact Laurent arithmetic
    rng = random.Random(97)
    for _ in range(80):
        a_exact = LaurentPoly(
            rng.randint(-4, 4), [rng.randint(-6, 6) for _ in range(rng.randint(1, 7))]
        )
        b_exact = LaurentPoly(
            rng.randint(-4, 4), [rng.randint(-6, 6) for _ in range(rng.randint(1, 7))]
        )
        ha = a_exact.hi - rng.randint(0, 3)
        hb = b_exact.hi - rng.randint(0, 3)
        a = a_exact.truncate(ha)
        b = b_exact.truncate(hb)
        total = a + b
        exact_sum = a_exact + b_exact
        for e in range(min(total.lo, exact_sum.lo), total.hi + 1):
            assert total.coeff(e) == exact_sum.coeff(e)
        prod = a * b
        exact_prod = a_exact * b_exact
        for e in range(min(prod.lo, exact_prod.lo), prod.hi + 1):
            assert prod.coeff(e) == exact_prod.coeff(e)
        k = rng.randint(-3, 3)
        shifted = a.shift(k)
        for e in range(shifted.lo, shifted.hi + 1):
            assert shifted.coeff(e) == a_exact.coeff(e - k)


@pytest.mark.parametrize("j", range(7))
def test_poincare_P_matches_inverse_unit_route(j):
    # P_j can also be assembled from the declared inverses of (1 - q^r)
    hi = 20
    via_inverse = QSeries.one(hi)
    for r in range(1, j + 1):
        factor = QSeries(0, [1] + [0] * (2 * r - 1) + [-1] + [0] * (hi - 2 * r), hi)
        via_inverse = via_inverse * factor.inverse_unit()
    assert via_inverse.agrees_with(poincare_P(j, hi))

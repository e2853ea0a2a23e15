"""Kostant partitions, normal forms, Hom/Ext dimensions, stratum data."""

import itertools
import random

import pytest

from qdilog.errors import AxisMismatch
from qdilog.qseries import QSeries, poincare_P
from qdilog.quiver import HORIZONTAL, VERTICAL, euler_form, square_product
from qdilog.strata import (
    KostantPartition,
    LineQuiver,
    Stratum,
    c_eta,
    codim_orbit,
    codim_stratum,
    dext,
    dhom,
    enumerate_kostant,
    enumerate_strata,
    geometric_sum,
    intertwiner_dim,
    interval_rep,
    line_quiver,
    normal_form,
    partition_rep,
    poincare_stratum,
    strata_table,
    w_shift,
)

A2_LINE = LineQuiver.from_string("r")  # 1 -> 2


def brute_kostant_count(line, gamma):
    """Count multiplicity vectors over all intervals summing to gamma."""
    intervals = line.intervals()
    caps = [min(gamma[k - 1 : l]) if min(gamma[k - 1 : l]) > 0 else 0
            for (k, l) in intervals]
    count = 0
    for mult in itertools.product(*[range(c + 1) for c in caps]):
        total = [0] * line.length
        for (k, l), m in zip(intervals, mult):
            for c in range(k - 1, l):
                total[c] += m
        if tuple(total) == tuple(gamma):
            count += 1
    return count


def test_enumerate_kostant_a2():
    out = enumerate_kostant(A2_LINE, (1, 1))
    assert len(out) == 2
    assert out[0].multiplicity(1, 2) == 1  # most generic first
    assert out[1].items() == (((1, 1), 1), ((2, 2), 1))

    out = enumerate_kostant(A2_LINE, (2, 2))
    assert [kp.multiplicity(1, 2) for kp in out] == [2, 1, 0]
    assert len(out) == brute_kostant_count(A2_LINE, (2, 2))


@pytest.mark.parametrize("pattern", ["rl", "lr", "rr", "rlr"])
def test_enumerate_kostant_against_brute_force(pattern):
    line = LineQuiver.from_string(pattern)
    rng = random.Random(13)
    for _ in range(10):
        gamma = tuple(rng.randint(0, 3) for _ in range(line.length))
        out = enumerate_kostant(line, gamma)
        assert len(out) == brute_kostant_count(line, gamma)
        assert len(set(out)) == len(out)
        for kp in out:
            assert kp.gamma() == gamma


def test_strata_counts_2x2():
    gq = square_product(2, 2)
    gamma = (2, 2, 1, 1)
    assert len(enumerate_strata(gq, gamma, HORIZONTAL)) == 6
    assert len(enumerate_strata(gq, gamma, VERTICAL)) == 4
    for s in enumerate_strata(gq, gamma, HORIZONTAL):
        assert s.gamma(gq) == gamma


def test_normal_form_reference_matrices():
    line = LineQuiver.from_string("rrl")  # 1 -> 2 -> 3 <- 4
    kp = KostantPartition(
        line,
        (((1, 4), 2), ((1, 2), 1), ((1, 3), 1), ((2, 4), 1),
         ((1, 1), 1), ((3, 3), 1), ((4, 4), 1)),
    )
    assert kp.gamma() == (5, 5, 5, 4)
    nf = normal_form(line, kp)
    assert nf.matrices[0] == (
        (1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0),
    )
    assert nf.matrices[1] == (
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 0, 0, 1),
        (0, 0, 0, 0, 0),
    )
    assert nf.matrices[2] == (
        (0, 0, 0, 0),
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 0),
    )


def test_normal_form_simple_roots_only():
    line = LineQuiver.from_string("rl")
    kp = KostantPartition(line, (((1, 1), 2), ((2, 2), 1), ((3, 3), 1)))
    nf = normal_form(line, kp)
    for mat in nf.matrices:
        assert all(all(x == 0 for x in row) for row in mat)


def test_normal_form_single_long_root():
    line = LineQuiver.from_string("rrr")
    kp = KostantPartition(line, (((1, 4), 1),))
    nf = normal_form(line, kp)
    assert nf.matrices == (((1,),), ((1,),), ((1,),))


def test_dhom_basics():
    for pattern in ["r", "l", "rl", "rr", "lrl"]:
        line = LineQuiver.from_string(pattern)
        for r in line.intervals():
            assert dhom(line, r, r) >= 1
    assert dhom(LineQuiver.from_string("rrrr"), (1, 2), (4, 5)) == 0


@pytest.mark.parametrize("pattern", ["rr", "rl", "lr", "ll"])
def test_chi_triangle_a3(pattern):
    line = LineQuiver.from_string(pattern)
    for r1 in line.intervals():
        for r2 in line.intervals():
            chi = euler_form(
                line.to_quiver(),
                interval_rep(line, *r1)[0],
                interval_rep(line, *r2)[0],
            )
            assert dhom(line, r1, r2) - dext(line, r1, r2) == chi


def test_codim_orbit_table1_values():
    # a row line of the 2x2 grid: gamma (2,2) on an A2 line
    line = LineQuiver.from_string("l")  # row 1 of the grid: (1,1) <- (1,2)
    dense = KostantPartition(line, (((1, 2), 2),))
    mid = KostantPartition(line, (((1, 2), 1), ((1, 1), 1), ((2, 2), 1)))
    zero = KostantPartition(line, (((1, 1), 2), ((2, 2), 2)))
    assert codim_orbit(line, dense) == 0
    assert codim_orbit(line, mid) == 1
    assert codim_orbit(line, zero) == 4


def rank_based_codim(line, kp):
    """Independent oracle: codim = dim Rep - (dim G - dim Stab(normal form))."""
    gamma = kp.gamma()
    rep = partition_rep(line, kp)
    dim_rep = sum(
        gamma[t - 1] * gamma[h - 1] for t, h in line.arrows()
    )
    dim_g = sum(g * g for g in gamma)
    stab = intertwiner_dim(line, rep, rep)
    return dim_rep - (dim_g - stab)


@pytest.mark.parametrize("pattern", ["r", "l", "rr", "rl", "lr", "ll"])
def test_codim_orbit_matches_rank_oracle(pattern):
    line = LineQuiver.from_string(pattern)
    for gamma in itertools.product(range(3), repeat=line.length):
        for kp in enumerate_kostant(line, gamma):
            assert codim_orbit(line, kp) == rank_based_codim(line, kp)


def test_codim_orbit_bilinear_in_dext():
    line = LineQuiver.from_string("rl")
    for gamma in itertools.product(range(3), repeat=3):
        for kp in enumerate_kostant(line, gamma):
            total = sum(
                m1 * m2 * dext(line, r1, r2)
                for r1, m1 in kp.items()
                for r2, m2 in kp.items()
            )
            assert codim_orbit(line, kp) == total


def test_table1_and_table2_data():
    gq = square_product(2, 2)
    gamma = (2, 2, 1, 1)
    hor = strata_table(gq, gamma, HORIZONTAL)
    assert [r.codim for r in hor] == [0, 1, 1, 2, 4, 5]
    assert [r.w for r in hor] == [2, 1, 0, 0, 0, 0]
    assert [r.poincare for r in hor] == [
        "P2*P1", "P1^4", "P2*P1^2", "P1^5", "P2^2*P1", "P2^2*P1^2",
    ]
    ver = strata_table(gq, gamma, VERTICAL)
    assert [r.codim for r in ver] == [0, 2, 2, 4]
    assert [r.w for r in ver] == [1, 0, 0, 0]
    assert [r.poincare for r in ver] == ["P1^4", "P2*P1^3", "P2*P1^3", "P2^2*P1^2"]


def test_codim_stratum_all_simple():
    gq = square_product(2, 3)
    gamma = (1, 2, 1, 2, 1, 2)
    strata = enumerate_strata(gq, gamma, HORIZONTAL)
    all_simple = [
        s
        for s in strata
        if all(k == l for kp in s.parts for (k, l), _ in kp.items())
    ]
    assert len(all_simple) == 1
    expected = sum(
        sum(
            g[t - 1] * g[h - 1]
            for t, h in line_quiver(gq, HORIZONTAL, i + 1).arrows()
        )
        for i, g in enumerate(
            [(1, 2, 1), (2, 1, 2)]
        )
    )
    assert codim_stratum(gq, all_simple[0]) == expected


def test_poincare_stratum():
    gq = square_product(2, 2)
    strata = strata_table(gq, (2, 2, 1, 1), HORIZONTAL)
    open_stratum = strata[0].stratum
    p = poincare_stratum(open_stratum, 12)
    expect = poincare_P(2, 12) * poincare_P(1, 12)
    assert p == expect.truncate(p.hi)
    empty = Stratum(HORIZONTAL, ())
    assert poincare_stratum(empty, 8) == QSeries.one(8)


def test_w_shift_one_row_grid():
    gq = square_product(1, 3)
    for s in enumerate_strata(gq, (2, 1, 2), HORIZONTAL):
        assert w_shift(gq, s) == 0
        assert c_eta(gq, s) == 0


def test_c_eta_matches_w_and_examples():
    gq = square_product(2, 2)
    strata = strata_table(gq, (2, 2, 1, 1), HORIZONTAL)
    assert c_eta(gq, strata[0].stratum) == 2  # the open stratum
    for row in strata:
        assert c_eta(gq, row.stratum) == row.w
    with pytest.raises(AxisMismatch):
        c_eta(gq, enumerate_strata(gq, (1, 1, 1, 1), VERTICAL)[0])


def test_w_equals_c_random():
    rng = random.Random(17)
    for n, nprime in [(2, 4), (3, 3)]:
        gq = square_product(n, nprime)
        for _ in range(5):
            gamma = tuple(
                rng.randint(0, 3) for _ in range(gq.base.vertex_count)
            )
            for s in enumerate_strata(gq, gamma, HORIZONTAL):
                assert w_shift(gq, s) == c_eta(gq, s)


def test_geometric_sum_2x2():
    gq = square_product(2, 2)
    series = geometric_sum(gq, (2, 2, 1, 1), HORIZONTAL, 12)
    assert [series.coeff(2 * d) for d in range(7)] == [0, 1, 6, 18, 43, 87, 160]
    assert geometric_sum(gq, (2, 2, 1, 1), VERTICAL, 12) == series


def test_geometric_sum_empty_gamma():
    gq = square_product(2, 3)
    assert geometric_sum(gq, (0,) * 6, HORIZONTAL, 8) == QSeries.one(8)


def test_geometric_sum_axes_agree_exhaustive_2x2():
    gq = square_product(2, 2)
    for gamma in itertools.product(range(3), repeat=4):
        hor = geometric_sum(gq, gamma, HORIZONTAL, 10)
        ver = geometric_sum(gq, gamma, VERTICAL, 10)
        assert hor == ver, gamma


def test_geometric_sum_axes_agree_exhaustive_2x3():
    gq = square_product(2, 3)
    for gamma in itertools.product(range(3), repeat=6):
        hor = geometric_sum(gq, gamma, HORIZONTAL, 10)
        ver = geometric_sum(gq, gamma, VERTICAL, 10)
        assert hor == ver, gamma


def test_geometric_sum_axes_agree_sampled_3x3():
    # the full entries <= 2 sweep of the 3x3 grid is covered indirectly by
    # the box-2 product identity; sample it directly here
    gq = square_product(3, 3)
    rng = random.Random(303)
    for _ in range(60):
        gamma = tuple(rng.randint(0, 2) for _ in range(9))
        hor = geometric_sum(gq, gamma, HORIZONTAL, 10)
        ver = geometric_sum(gq, gamma, VERTICAL, 10)
        assert hor == ver, gamma


def test_threads_do_not_change_results(monkeypatch):
    gq = square_product(2, 2)
    base = geometric_sum(gq, (2, 2, 1, 1), HORIZONTAL, 12)
    monkeypatch.setenv("QDILOG_THREADS", "4")
    assert geometric_sum(gq, (2, 2, 1, 1), HORIZONTAL, 12) == base


def test_line_quiver_round_trip():
    line = LineQuiver.from_string("rlr")
    assert line.arrows() == [(1, 2), (3, 2), (3, 4)]
    gq = square_product(3, 4)
    assert line_quiver(gq, HORIZONTAL, 1).orientation == ("l", "r", "l")
    assert line_quiver(gq, VERTICAL, 2).orientation == ("l", "r")


def test_rational_rank_matches_numpy():
    import numpy as np

    from qdilog.strata import _rank

    rng = random.Random(53)
    for _ in range(60):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        mat = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        expected = np.linalg.matrix_rank(np.array(mat, dtype=float))
        assert _rank(mat) == expected

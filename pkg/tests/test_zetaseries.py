from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dworkzeta.counting import count_dwork
from dworkzeta.errors import NonIntegral
from dworkzeta.zetaseries import (
    ZetaSeries,
    counts_from_series,
    r_degree,
    restore_trivial,
    strip_trivial,
    trivial_factor,
    zeta_from_counts,
)


def test_point():
    assert zeta_from_counts(11, [1, 1, 1]).int_coeffs() == [1, 1, 1, 1]


def test_affine_line():
    q = 7
    assert zeta_from_counts(q, [q ** r for r in range(1, 6)]).int_coeffs() == [q ** k for k in range(6)]


def test_projective_space_strips_to_one():
    q, n = 11, 5
    counts = [sum(q ** (i * r) for i in range(n - 1)) for r in range(1, 5)]
    zs = zeta_from_counts(q, counts)
    # 1 / prod (1 - q^i t), computed by convolving geometric series
    series = [Fraction(1)] + [Fraction(0)] * 4
    for i in range(n - 1):
        series = [sum(series[j] * q ** (i * (k - j)) for j in range(k + 1)) for k in range(5)]
    assert list(zs.coeffs) == series
    assert strip_trivial(zs, n).int_coeffs() == [1, 0, 0, 0, 0]


def test_trivial_factor():
    assert trivial_factor(2, 3) == [1, -3, 2]


def test_dwork_n5_q11_strip(F11, F121):
    counts = [count_dwork(F11, 5, 2).projective, count_dwork(F121, 5, 2, base=F11).projective]
    zs = zeta_from_counts(11, counts)
    st_ = strip_trivial(zs, 5)
    assert zs.is_integral and st_.is_integral
    assert st_.int_coeffs() == [1, 1086, 681186]
    back = restore_trivial(st_, 5)
    assert back.coeffs == zs.coeffs and back.counts == zs.counts


def test_r_degree():
    assert r_degree(3) == 0
    assert r_degree(5) == 200
    assert r_degree(7) == 39984
    assert r_degree(5) == (4 ** 5 - 4) // 5 - 4
    with pytest.raises(ValueError):
        r_degree(2)


def test_non_integral():
    zs = zeta_from_counts(2, [2])
    assert zs.is_integral
    zs = ZetaSeries(2, (1,), (Fraction(1), Fraction(1, 2)))
    with pytest.raises(NonIntegral):
        zs.int_coeffs()


def test_bad_input():
    with pytest.raises(ValueError):
        zeta_from_counts(11, [])
    with pytest.raises(ValueError):
        zeta_from_counts(11, [-1])


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 50), st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=8))
def test_round_trip(q, counts):
    zs = zeta_from_counts(q, counts)
    assert counts_from_series(zs.coeffs) == counts
    for n in (3, 5, 7):
        assert restore_trivial(strip_trivial(zs, n), n).coeffs == zs.coeffs

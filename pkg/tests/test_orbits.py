import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dworkzeta.errors import NotPrime, NTooLarge
from dworkzeta.orbits import (
    K_of,
    canonical,
    enumerate_classes,
    gamma_of,
    hyper_from_pairing,
    max_pairing,
    partition_total,
    profile_of,
    random_pairing,
)
from dworkzeta.reference import CLASS_TABLE

from oracles import perm_count_of_shift_class, units_fixing, znz_classes


def _by_rep(n):
    return {r.rep: r for r in enumerate_classes(n)}


def test_n5_table():
    recs = enumerate_classes(5)
    assert len(recs) == 4
    assert [r.special for r in recs[:2]] == ["zero", "full"]
    a, b = recs[2], recs[3]
    assert (a.rep, a.gamma, a.K, a.m, a.mprime, a.d) == ((0, 0, 0, 1, 4), 20, 2, 2, 0, 1)
    assert (b.rep, b.gamma, b.K, b.m, b.mprime, b.d) == ((0, 0, 1, 1, 3), 30, 2, 2, 0, 1)


@pytest.mark.parametrize("n", [5, 7])
def test_published_rows(n):
    recs = _by_rep(n)
    ordinary = [r for r in recs.values() if not r.is_special]
    assert len(ordinary) == len(CLASS_TABLE[n])
    for rep, gamma, K, m, mp, d in CLASS_TABLE[n]:
        r = recs[canonical(rep, n)]
        assert (r.gamma, r.K, r.m, r.mprime, r.d) == (gamma, K, m, mp, d)


def test_n7_examples():
    recs = _by_rep(7)
    r = recs[(0, 0, 0, 1, 2, 5, 6)]
    assert (r.gamma, r.K, r.m, r.mprime, r.d) == (840, 2, 2, 0, 1)
    r = recs[canonical((0, 0, 0, 1, 1, 2, 3), 7)]
    assert (r.gamma, r.K, r.m, r.mprime, r.d) == (420, 1, 3, 0, 3)


@pytest.mark.parametrize("n", [5, 7])
def test_partition_identity_against_brute_force_grouping(n):
    recs = enumerate_classes(n)
    assert partition_total(recs) == n ** (n - 2)
    groups = znz_classes(n)
    assert len(groups) == len(recs)
    assert sum(len(v) for v in groups.values()) == n ** (n - 2)
    for rec in recs:
        key = min(tuple(sorted((k * x + j) % n for x in rec.rep)) for k in range(1, n) for j in range(n))
        assert len(groups[key]) == rec.znz_classes


@pytest.mark.parametrize("n", [5, 7])
def test_gamma_equals_permutation_count_of_shift_class(n):
    for rec in enumerate_classes(n):
        count = perm_count_of_shift_class(rec.rep, n)
        if rec.special == "full":
            assert count == factorial(n - 1)
        else:
            assert rec.gamma == count


def test_gamma_examples():
    assert gamma_of(profile_of((0,) * 7, 7)) == 1
    assert gamma_of(profile_of(tuple(range(7)), 7)) == factorial(7)
    assert perm_count_of_shift_class(tuple(range(5)), 5) == factorial(4)
    assert gamma_of({0: 3, 1: 1, 4: 1}) == 20


def test_K_examples():
    assert K_of((0,) * 5) == 4
    assert K_of((0, 0, 0, 1, 4)) == 2
    assert K_of((0, 0, 0, 1, 1, 2, 3)) == 1


@pytest.mark.parametrize("n", [5, 7, 11])
def test_class_invariants(n):
    for r in enumerate_classes(n):
        assert sum(r.kprofile) == n
        assert sum(b * c for b, c in enumerate(r.kprofile)) % n == 0
        assert r.K == units_fixing(r.rep, n)
        assert r.rep == canonical(r.rep, n)
        if r.is_special:
            continue
        assert r.gamma % r.K == 0
        assert len(r.v) == len(r.w) == r.m
        assert (sum(r.v) - sum(r.w)) % n == 0
        assert r.nprime not in (2, n - 1) and 2 <= r.m <= n - 3
        assert r.mprime % 2 == 0 and 2 * r.m - n + 1 <= r.mprime <= r.m - 2
        assert r.d % 2 == 1 and 1 <= r.d <= n - 4
        diffs = [(a - b) % n for a, b in zip(r.v, r.w)]
        assert all(diffs)
        for i in range(0, r.mprime, 2):
            assert (r.w[i] - r.v[i] + r.w[i + 1] - r.v[i + 1]) % n == 0
        H = r.hyper
        assert (H.l, H.k) == (r.m, 2 * r.m - r.mprime - 2)
        assert H.complete_pairing


def test_n11_and_n13_counts():
    assert partition_total(enumerate_classes(11)) == 11 ** 9
    assert len(enumerate_classes(11)) == 320


@pytest.mark.slow
def test_n13_partition():
    recs = enumerate_classes(13)
    assert partition_total(recs) == 13 ** 11
    assert all(r.gamma % r.K == 0 for r in recs if not r.is_special)


def test_worked_pairing_example():
    # v = {2,3,4,5}, w = (0,0,0,0): pair 2 with 5 first, then 3, 4
    p = max_pairing((2, 3, 4, 5), (0, 0, 0, 0), 7)
    assert p.v == (2, 5, 3, 4) and p.mprime == 2
    assert 2 * 4 - p.mprime - 3 == 3


def test_m2_pairing():
    p = max_pairing((2, 3), (0, 0), 5)
    assert p.mprime == 0


def test_sort_order():
    recs = enumerate_classes(7)
    assert [r.special for r in recs[:2]] == ["zero", "full"]
    keys = [(r.d, r.gamma) for r in recs[2:]]
    assert [d for d, _ in keys] == sorted(d for d, _ in keys)


def test_errors():
    with pytest.raises(NotPrime):
        enumerate_classes(9)
    with pytest.raises(NotPrime):
        enumerate_classes(3)
    with pytest.raises(NTooLarge):
        enumerate_classes(17)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.data())
def test_canonical_is_class_invariant(n, data):
    head = data.draw(st.lists(st.integers(0, n - 1), min_size=n - 1, max_size=n - 1))
    s = tuple(head) + ((-sum(head)) % n,)
    k = data.draw(st.integers(1, n - 1))
    j = data.draw(st.integers(0, n - 1))
    perm = data.draw(st.permutations(s))
    moved = tuple((k * x + j) % n for x in perm)
    assert canonical(moved, n) == canonical(s, n)
    assert K_of(moved, n) == K_of(s, n)
    assert gamma_of(profile_of(moved, n)) == gamma_of(profile_of(s, n))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([7, 11]), st.integers(0, 10 ** 6))
def test_random_pairing_is_valid(n, seed):
    rng = random.Random(seed)
    rec = rng.choice([r for r in enumerate_classes(n) if not r.is_special])
    alt = random_pairing(rec.v, rec.w, n, rec.mprime, rng)
    assert sorted(alt.v) == sorted(rec.v) and sorted(alt.w) == sorted(rec.w)
    for i in range(0, alt.mprime, 2):
        assert (alt.w[i] - alt.v[i] + alt.w[i + 1] - alt.v[i + 1]) % n == 0
    H = hyper_from_pairing(n, alt.v, alt.w, alt.mprime)
    assert H.l == rec.m and H.k == rec.hyper.k

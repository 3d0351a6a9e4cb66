"""Classes of zero-sum n-tuples under shifts, permutations and unit scalings.

A class is stored through its profile ``k(b) = #{i : s_i = b}``.  Shifting
the tuple rotates the profile and scaling by a unit permutes it, so the
orbit of a profile under the affine maps ``b -> k*b + j`` is the class.
The canonical representative is the lex-smallest sorted tuple, which is the
lex-largest profile in the orbit.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import factorial, prod
from typing import Mapping, NamedTuple, Sequence

from .errors import NotPrime, NTooLarge, PairingBoundViolated
from .ffield import is_prime
from .varieties import HyperVariety, lift

N_MAX = 13


def _check_n(n: int) -> None:
    if n < 5 or not is_prime(n):
        raise NotPrime(f"n must be a prime >= 5, got {n}")
    if n > N_MAX:
        raise NTooLarge(f"n={n} exceeds the enumeration cap {N_MAX}")


def profile_of(s: Sequence[int], n: int) -> tuple:
    prof = [0] * n
    for x in s:
        prof[x % n] += 1
    return tuple(prof)


def tuple_of(prof: Sequence[int]) -> tuple:
    return tuple(b for b, c in enumerate(prof) for _ in range(c))


def _affine(prof: Sequence[int], k: int, j: int) -> tuple:
    n = len(prof)
    out = [0] * n
    for b, c in enumerate(prof):
        out[(k * b + j) % n] = c
    return tuple(out)


def orbit_profiles(prof: Sequence[int]) -> set:
    n = len(prof)
    return {_affine(prof, k, j) for k in range(1, n) for j in range(n)}


def canonical(s: Sequence[int], n: int) -> tuple:
    """Lex-smallest sorted tuple in the class of ``s``."""
    return tuple_of(max(orbit_profiles(profile_of(s, n))))


def gamma_of(kprofile: Mapping[int, int] | Sequence[int]) -> int:
    """Number of distinct orderings: n! / prod k(b)!."""
    counts = list(kprofile.values()) if isinstance(kprofile, Mapping) else list(kprofile)
    return factorial(sum(counts)) // prod(factorial(c) for c in counts)


def K_of(s: Sequence[int], n: int | None = None) -> int:
    """Number of units k with k*s equal to a shift of s up to permutation."""
    n = len(s) if n is None else n
    prof = profile_of(s, n)
    return sum(
        any(_affine(prof, k, j) == prof for j in range(n)) for k in range(1, n)
    )


class Pairing(NamedTuple):
    v: tuple
    w: tuple
    mprime: int


def _remove(t: tuple, x: int) -> tuple:
    i = t.index(x)
    return t[:i] + t[i + 1:]


@lru_cache(maxsize=None)
def _feasible(vrem: tuple, wrem: tuple, pairs: int, n: int) -> bool:
    """Can ``pairs`` disjoint opposite-difference pairs be formed?"""
    if pairs == 0:
        return True
    if 2 * pairs > len(vrem):
        return False
    v0, vrest = vrem[0], vrem[1:]
    for w0 in sorted(set(wrem)):
        wrest = _remove(wrem, w0)
        if _feasible(vrest, wrest, pairs, n):
            return True
        need = (w0 - v0) % n
        for v1 in vrest:
            w1 = (v1 - need) % n
            if w1 in wrest and _feasible(_remove(vrest, v1), _remove(wrest, w1), pairs - 1, n):
                return True
    return False


def _max_pairs(v: tuple, w: tuple, n: int) -> int:
    m = len(v)
    hi = m // 2
    while hi > 0 and not _feasible(v, w, hi, n):
        hi -= 1
    return hi


def max_pairing(v: Sequence[int], w: Sequence[int], n: int) -> Pairing:
    """Order (v, w) so that the first m' positions form opposite pairs.

    m' is the largest even count of paired positions, capped at m - 2.  The
    paired block is the lex-smallest run of (w_i, v_i); the remaining
    positions take w descending and v ascending, except that a zero w is
    moved to position m-1 when m' < m-2.
    """
    v = tuple(sorted(x % n for x in v))
    w = tuple(sorted(x % n for x in w))
    m = len(v)
    if m != len(w) or m < 2:
        raise ValueError("need |v| = |w| >= 2")
    if (sum(v) - sum(w)) % n:
        raise ValueError("sum(v) and sum(w) differ mod n")
    if set(v) & set(w):
        raise ValueError("v and w must be disjoint")
    pairs = min(_max_pairs(v, w, n), (m - 2) // 2)
    mprime = 2 * pairs

    out_v: list[int] = []
    out_w: list[int] = []
    vrem, wrem = v, w
    for left in range(pairs, 0, -1):
        done = False
        for w0 in sorted(set(wrem)):
            for v0 in vrem:
                need = (w0 - v0) % n
                wr, vr = _remove(wrem, w0), _remove(vrem, v0)
                for w1 in sorted(set(wr)):
                    for v1 in vr:
                        if (w1 - v1 + need) % n:
                            continue
                        if _feasible(_remove(vr, v1), _remove(wr, w1), left - 1, n):
                            out_v += [v0, v1]
                            out_w += [w0, w1]
                            vrem, wrem = _remove(vr, v1), _remove(wr, w1)
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
        assert done
    tail_w = sorted(wrem, reverse=True)
    if mprime < m - 2 and 0 in tail_w:
        # w = 0 at position m-1 lets the display eliminate x_{m-1}
        tail_w.remove(0)
        tail_w.insert(len(tail_w) - 1, 0)
    out_v += sorted(vrem)
    out_w += tail_w

    if mprime < 2 * m - n + 1:
        raise PairingBoundViolated(
            f"m'={mprime} below 2m-n+1={2 * m - n + 1} for v={v}, w={w}"
        )
    return Pairing(tuple(out_v), tuple(out_w), mprime)


def random_pairing(v: Sequence[int], w: Sequence[int], n: int, mprime: int, rng) -> Pairing:
    """A uniformly shuffled arrangement with ``mprime`` leading paired positions.

    ``rng`` is a ``random.Random``.  Used to check that N_lam does not depend
    on which maximal pairing is chosen.
    """
    vrem = tuple(sorted(x % n for x in v))
    wrem = tuple(sorted(x % n for x in w))
    out_v: list[int] = []
    out_w: list[int] = []
    for left in range(mprime // 2, 0, -1):
        options = []
        for i0, v0 in enumerate(vrem):
            for w0 in set(wrem):
                need = (w0 - v0) % n
                vr, wr = _remove(vrem, v0), _remove(wrem, w0)
                for v1 in vr:
                    w1 = (v1 - need) % n
                    if w1 in wr and _feasible(_remove(vr, v1), _remove(wr, w1), left - 1, n):
                        options.append((v0, w0, v1, w1))
        if not options:
            raise PairingBoundViolated(f"no pairing with m'={mprime} for v={v}, w={w}")
        v0, w0, v1, w1 = rng.choice(options)
        out_v += [v0, v1]
        out_w += [w0, w1]
        vrem = _remove(_remove(vrem, v0), v1)
        wrem = _remove(_remove(wrem, w0), w1)
    tv, tw = list(vrem), list(wrem)
    rng.shuffle(tv)
    rng.shuffle(tw)
    return Pairing(tuple(out_v + tv), tuple(out_w + tw), mprime)


def hyper_from_pairing(n: int, v: Sequence[int], w: Sequence[int], mprime: int) -> HyperVariety:
    """Exponent data of the hypergeometric variety attached to a paired class."""
    m = len(v)
    alphas = list(v) + [v[i] - w[i] for i in range(mprime, m - 2)]
    betas = [w[i] - v[i] for i in range(m - 1)] + [v[m - 2] - w[m - 2]]
    return HyperVariety(
        n=n, l=m, k=2 * m - mprime - 2,
        alphas=tuple(lift(a, n) for a in alphas),
        betas=tuple(lift(b, n) for b in betas),
    )


@dataclass(frozen=True)
class ClassRecord:
    n: int
    rep: tuple
    kprofile: tuple
    gamma: int
    K: int
    v: tuple
    w: tuple
    mprime: int | None
    special: str | None = None
    hyper: HyperVariety | None = field(default=None, compare=False)

    @property
    def nprime(self) -> int:
        return sum(1 for c in self.kprofile if c)

    @property
    def m(self) -> int:
        return self.n - self.nprime

    @property
    def d(self) -> int | None:
        return None if self.mprime is None else 2 * self.m - self.mprime - 3

    @property
    def is_special(self) -> bool:
        return self.special is not None

    @property
    def weight(self) -> int:
        """gamma/K for ordinary classes: the coefficient of N_lam in the count."""
        return self.gamma // self.K

    @property
    def znz_classes(self) -> int:
        """Number of shift classes of ordered tuples inside this class."""
        if self.special == "zero":
            return 1
        if self.special == "full":
            return factorial(self.n - 1)
        return (self.n - 1) * self.gamma // self.K

    def sort_key(self) -> tuple:
        rank = {"zero": 0, "full": 1}.get(self.special, 2)
        return (rank, self.d or 0, self.m, self.gamma, self.rep)

    def to_dict(self) -> dict:
        out = {
            "rep": list(self.rep), "gamma": self.gamma, "K": self.K,
            "nprime": self.nprime, "m": self.m, "mprime": self.mprime, "d": self.d,
            "v": list(self.v), "w": list(self.w), "special": self.special,
        }
        if self.hyper is not None:
            h = self.hyper
            out["hyper"] = {"l": h.l, "k": h.k, "alphas": list(h.alphas), "betas": list(h.betas)}
            surf = h.hypersurface()
            out["equation"] = surf.equation("L") if surf is not None else h.equation()
        return out


def class_record(prof: Sequence[int], n: int) -> ClassRecord:
    prof = tuple(prof)
    rep = tuple_of(prof)
    gamma = gamma_of(prof)
    K = K_of(rep, n)
    v = tuple(b for b in range(n) if prof[b] == 0)
    w = tuple(b for b in range(n) for _ in range(max(prof[b] - 1, 0)))
    if prof[0] == n:
        return ClassRecord(n, rep, prof, gamma, K, v, w, None, "zero")
    if all(c == 1 for c in prof):
        return ClassRecord(n, rep, prof, gamma, K, v, w, None, "full")
    pv, pw, mprime = max_pairing(v, w, n)
    hyper = hyper_from_pairing(n, pv, pw, mprime)
    return ClassRecord(n, rep, prof, gamma, K, pv, pw, mprime, None,
                       replace(hyper, source_class=rep))


def _profiles_with_max_at_zero(n: int):
    """Zero-sum profiles with k(0) the largest entry."""
    for top in range(n, 0, -1):
        buf = [top] + [0] * (n - 1)

        def rec(b: int, left: int, acc: int):
            if b == n:
                if left == 0 and acc % n == 0:
                    yield tuple(buf)
                return
            if left > top * (n - b):
                return
            for c in range(min(top, left), -1, -1):
                buf[b] = c
                yield from rec(b + 1, left - c, acc + b * c)
            buf[b] = 0

        yield from rec(1, n - top, 0)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple:
    seen: set = set()
    reps = []
    for prof in _profiles_with_max_at_zero(n):
        if prof in seen:
            continue
        orb = orbit_profiles(prof)
        seen |= orb
        reps.append(max(orb))
    records = [class_record(p, n) for p in reps]
    records.sort(key=ClassRecord.sort_key)
    return tuple(records)


def enumerate_classes(n: int) -> list[ClassRecord]:
    """All classes for prime n in [5, 13], specials first, then by (d, m, gamma)."""
    _check_n(n)
    return list(_enumerate(n))


def partition_total(records: Sequence[ClassRecord]) -> int:
    """Total number of shift classes covered; equals n^(n-2) when complete."""
    return sum(r.znz_classes for r in records)

"""Slow, independent reference implementations used only by the tests.

Prime-field oracles use plain modular arithmetic and never touch the
package's tables.  Extension-field oracles go through FieldCtx scalar
methods, which are themselves checked against polynomial arithmetic.
"""
from __future__ import annotations

import cmath
import itertools
from collections import defaultdict
from math import gcd

import numpy as np


def order_mod(g: int, p: int) -> int:
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


def primitive_root(p: int) -> int:
    return next(g for g in range(1, p) if order_mod(g, p) == p - 1)


def dlog_table(p: int) -> dict:
    g = primitive_root(p)
    return {pow(g, k, p): k for k in range(p - 1)}


def gauss_direct(p: int, a: int) -> complex:
    """g(chi) over F_p with chi(g^k) = exp(2 pi i a k / (p-1)), g the least primitive root."""
    lg = dlog_table(p)
    return sum(cmath.exp(2j * cmath.pi * x / p) * cmath.exp(2j * cmath.pi * a * lg[x] / (p - 1))
               for x in range(1, p))


def jacobi_direct(p: int, exps) -> complex:
    """J(chi_1, ..., chi_r) over F_p by summing over x_1 + ... + x_r = 1, x_i != 0."""
    lg = dlog_table(p)
    r = len(exps)
    total = 0j
    for xs in itertools.product(range(1, p), repeat=r - 1):
        last = (1 - sum(xs)) % p
        if last == 0:
            continue
        k = sum(a * lg[x] for a, x in zip(exps, xs + (last,)))
        total += cmath.exp(2j * cmath.pi * k / (p - 1))
    return total


def _grid(p: int, dims: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=dims)), dtype=np.int64)


def dwork_affine_prime(p: int, n: int, psi: int) -> int:
    """#{x in F_p^n : sum x_i^n = n psi prod x_i}, vectorised over all points."""
    X = _grid(p, n)
    lhs = np.zeros(len(X), dtype=np.int64)
    rhs = np.full(len(X), n * psi % p, dtype=np.int64)
    for i in range(n):
        xi = X[:, i]
        pw = np.ones_like(xi)
        for _ in range(n):
            pw = pw * xi % p
        lhs = (lhs + pw) % p
        rhs = rhs * xi % p
    return int(np.count_nonzero(lhs == rhs))


def mirror_affine_prime(p: int, n: int, psi: int) -> int:
    """#{y in F_p^n : (sum y_i)^n = (n psi)^n prod y_i}."""
    X = _grid(p, n)
    s = X.sum(axis=1) % p
    lhs = np.ones_like(s)
    for _ in range(n):
        lhs = lhs * s % p
    rhs = np.full(len(X), pow(n * psi, n, p), dtype=np.int64)
    for i in range(n):
        rhs = rhs * X[:, i] % p
    return int(np.count_nonzero(lhs == rhs))


def dwork_affine_ctx(ctx, n: int, psi: int, mirror: bool = False) -> int:
    """Naive count with FieldCtx scalar arithmetic; fine for q^n up to ~10^5."""
    c = 0
    npsi = ctx.mul(ctx.from_int(n), psi)
    for xs in itertools.product(range(ctx.q), repeat=n):
        if mirror:
            s = 0
            for x in xs:
                s = ctx.add(s, x)
            pr = ctx.pow(npsi, n)
            for x in xs:
                pr = ctx.mul(pr, x)
            c += ctx.pow(s, n) == pr
        else:
            s, pr = 0, npsi
            for x in xs:
                s = ctx.add(s, ctx.pow(x, n))
                pr = ctx.mul(pr, x)
            c += s == pr
    return c


def nth_power_count_prime(p: int, n: int):
    """table[z] = #{y in F_p : y^n = z}."""
    t = [0] * p
    for y in range(p):
        t[pow(y, n, p)] += 1
    return t


def hyper_affine_prime(p: int, n: int, l: int, k: int, alphas, betas, lam: int) -> int:
    """Affine count of y^n = prod x^alpha (1-x_j)^beta_j (1-x_l-...-x_k)^beta_l, lam x_1..x_l = 1."""
    roots = nth_power_count_prime(p, n)
    c = 0
    for xs in itertools.product(range(p), repeat=k):
        pr = lam
        for x in xs[:l]:
            pr = pr * x % p
        if pr != 1:
            continue
        Q = 1
        for x, a in zip(xs, alphas):
            Q = Q * pow(x, a, p) % p
        for x, b in zip(xs[: l - 1], betas):
            Q = Q * pow(1 - x, b, p) % p
        Q = Q * pow(1 - sum(xs[l - 1:]), betas[-1], p) % p
        c += roots[Q]
    return c


def surface_affine_prime(p: int, S, lam: int) -> int:
    """Affine count of a one-equation form (see HyperSurface) over F_p."""
    roots = nth_power_count_prime(p, S.n)
    c = 0
    L = S.lam_vars
    for xs in itertools.product(range(p), repeat=S.nvars):
        Q = 1
        for x, a in zip(xs, S.x_exps):
            Q = Q * pow(x, a, p) % p
        for x, b in zip(xs[: L - 1], S.one_minus_exps):
            Q = Q * pow(1 - x, b, p) % p
        Q = Q * pow(1 - sum(xs[L - 1:]), S.tail_exp, p) % p
        mono = lam
        for x in xs[:L]:
            mono = mono * x % p
        Q = Q * pow(1 - mono, S.lam_exp, p) % p
        c += roots[Q]
    return c


def znz_classes(n: int) -> dict:
    """Group all zero-sum n-tuples into classes mod shift, then by the full group.

    Returns {sorted-multiset-class key: set of shift classes}, where the key
    is the minimal sorted tuple over shifts and unit multiples.
    """
    groups: dict = defaultdict(set)
    for head in itertools.product(range(n), repeat=n - 1):
        s = head + ((-sum(head)) % n,)
        shift_class = min(tuple((x + j) % n for x in s) for j in range(n))
        key = min(tuple(sorted((k * x + j) % n for x in s))
                  for k in range(1, n) for j in range(n))
        groups[key].add(shift_class)
    return groups


def perm_count_of_shift_class(s, n: int) -> int:
    """Number of distinct shift classes among the permutations of s."""
    seen = set()
    for perm in set(itertools.permutations(s)):
        seen.add(min(tuple((x + j) % n for x in perm) for j in range(n)))
    return len(seen)


def units_fixing(s, n: int) -> int:
    base = sorted(s)
    return sum(
        any(sorted((k * x + j) % n for x in s) == base for j in range(n))
        for k in range(1, n) if gcd(k, n) == 1
    )

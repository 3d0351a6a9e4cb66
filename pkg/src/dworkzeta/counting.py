"""Brute-force point counts over finite fields.

Field elements are the integer codes of ``FieldCtx``.  Products go through
the log/exp tables and sums through the dense addition table, so every
kernel is a plain integer loop compiled with numba (``nogil``), and the
outer coordinate range is split across a thread pool.

The projective counts fibre over the last coordinate: for the Dwork
hypersurface and its mirror, once all but one coordinate is fixed the
remaining equation has the shape ``F(x; b, c) = 0`` with ``b`` a multiple of
the product and ``c`` a sum of the fixed coordinates, and a precomputed table
gives the number of roots.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from numba import njit

from .errors import CountingBug, LambdaZero, OrderUnavailable, PDividesN, PsiZero
from .ffield import FieldCtx, subfield_embed
from .varieties import HyperSurface, HyperVariety


def default_threads() -> int:
    env = os.environ.get("DWORKZETA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class CountResult:
    variety: str
    n: int
    p: int
    f: int
    r: int
    q: int
    affine: int
    projective: int | None
    wall_time: float
    params: dict

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

@njit(nogil=True, cache=True)
def _root_table_dwork(q, n, expt, logt, addt, negt, powt):
    """T[b, c] = #{x : x^n + b*x + c = 0}."""
    T = np.zeros((q, q), dtype=np.int32)
    qm1 = q - 1
    for b in range(q):
        for x in range(q):
            bx = 0
            if b != 0 and x != 0:
                bx = expt[(logt[b] + logt[x]) % qm1]
            T[b, negt[addt[powt[x], bx]]] += 1
    return T


@njit(nogil=True, cache=True)
def _root_table_mirror(q, n, expt, logt, addt, negt, powt):
    """U[d, c] = #{y : (y + c)^n = d*y}, by a sweep over (y, t = y + c)."""
    U = np.zeros((q, q), dtype=np.int32)
    qm1 = q - 1
    for d in range(q):
        U[d, 0] += 1  # y = 0 forces c = 0
    for y in range(1, q):
        ny = negt[y]
        ly = logt[y]
        for t in range(q):
            d = 0
            if t != 0:
                d = expt[(logt[powt[t]] - ly) % qm1]
            U[d, addt[t, ny]] += 1
    return U


@njit(nogil=True, cache=True)
def _fiber_chunk(lo, hi, dims, q, expt, logt, addt, gtab, coef, T):
    """Sum of T[coef * prod(x), sum(gtab[x])] over x[0] in [lo, hi), rest in F_q."""
    qm1 = q - 1
    total = 0
    S = np.zeros(dims + 1, dtype=np.int64)
    L = np.zeros(dims + 1, dtype=np.int64)
    xs = np.zeros(dims, dtype=np.int64)
    L[0] = logt[coef] if coef != 0 else -1
    if dims == 1:
        for x in range(lo, hi):
            b = 0
            if L[0] >= 0 and x != 0:
                b = expt[(L[0] + logt[x]) % qm1]
            total += T[b, gtab[x]]
        return total
    xs[0] = lo
    lvl = 0
    last = dims - 1
    while lvl >= 0:
        limit = hi if lvl == 0 else q
        if xs[lvl] >= limit:
            lvl -= 1
            if lvl >= 0:
                xs[lvl] += 1
            continue
        x = xs[lvl]
        S[lvl + 1] = addt[S[lvl], gtab[x]]
        if L[lvl] < 0 or x == 0:
            L[lvl + 1] = -1
        else:
            L[lvl + 1] = (L[lvl] + logt[x]) % qm1
        if lvl + 1 == last:
            s, lp = S[last], L[last]
            row = addt[s]
            if lp < 0:
                for y in range(q):
                    total += T[0, row[gtab[y]]]
            else:
                total += T[0, row[gtab[0]]]
                for y in range(1, q):
                    total += T[expt[(lp + logt[y]) % qm1], row[gtab[y]]]
            xs[lvl] += 1
        else:
            lvl += 1
            xs[lvl] = 0
    return total


@njit(nogil=True, cache=True)
def _hyper_chunk(lo, hi, q, n, l, k, alphas, betas, lam, expt, logt, addt, negt):
    """Affine count of {y^n = Q(x), lam*x_1...x_l = 1}, x_1 in [lo, hi)."""
    qm1 = q - 1
    dims = k - 1  # x_1..x_{l-1} then x_{l+1}..x_k
    xs = np.zeros(dims, dtype=np.int64)
    for i in range(l - 1):
        xs[i] = 1
    xs[0] = lo
    total = 0
    loglam = logt[lam]
    while True:
        # evaluate the point
        lp = loglam
        for i in range(l - 1):
            lp += logt[xs[i]]
        lxl = (-lp) % qm1  # log of x_l
        xl = expt[lxl]
        acc = 0
        zero = False
        for i in range(l - 1):
            acc += alphas[i] * logt[xs[i]]
            om = addt[1, negt[xs[i]]]
            if om == 0:
                zero = True
            else:
                acc += betas[i] * logt[om]
        acc += alphas[l - 1] * lxl
        tail = addt[1, negt[xl]]
        for i in range(l, k):
            x = xs[i - 1]
            tail = addt[tail, negt[x]]
            if x == 0:
                zero = True
            else:
                acc += alphas[i] * logt[x]
        if tail == 0:
            zero = True
        else:
            acc += betas[l - 1] * logt[tail]
        if zero:
            total += 1
        elif acc % n == 0:
            total += n
        # advance odometer
        j = dims - 1
        while j >= 0:
            xs[j] += 1
            limit = q
            if j == 0:
                limit = hi
            if xs[j] < limit:
                break
            if j == 0:
                return total
            xs[j] = 1 if j < l - 1 else 0
            j -= 1
    return total


@njit(nogil=True, cache=True)
def _surface_chunk(lo, hi, q, n, lam_vars, a, b, tail_exp, lam_exp, lam, expt, logt, addt, negt):
    """Affine count of the one-equation form, x_1 in [lo, hi)."""
    qm1 = q - 1
    nv = a.shape[0]
    xs = np.zeros(nv, dtype=np.int64)
    xs[0] = lo
    total = 0
    loglam = logt[lam]
    while True:
        acc = 0
        zero = False
        prodzero = False
        lp = loglam
        for i in range(nv):
            x = xs[i]
            if x == 0:
                zero = True
                if i < lam_vars:
                    prodzero = True
            else:
                acc += a[i] * logt[x]
                if i < lam_vars:
                    lp += logt[x]
        for j in range(lam_vars - 1):
            om = addt[1, negt[xs[j]]]
            if om == 0:
                zero = True
            else:
                acc += b[j] * logt[om]
        tail = 1
        for i in range(lam_vars - 1, nv):
            tail = addt[tail, negt[xs[i]]]
        if tail == 0:
            zero = True
        else:
            acc += tail_exp * logt[tail]
        lf = 1
        if not prodzero:
            lf = addt[1, negt[expt[lp % qm1]]]
        if lf == 0:
            zero = True
        else:
            acc += lam_exp * logt[lf]
        if zero:
            total += 1
        elif acc % n == 0:
            total += n
        j = nv - 1
        while j >= 0:
            xs[j] += 1
            limit = q
            if j == 0:
                limit = hi
            if xs[j] < limit:
                break
            if j == 0:
                return total
            xs[j] = 0
            j -= 1
    return total


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

def _split(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, hi - lo))
    edges = np.linspace(lo, hi, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_chunks(fn, lo: int, hi: int, threads: int, parts: int | None) -> int:
    chunks = _split(lo, hi, parts or 4 * threads)
    if threads <= 1:
        return sum(int(fn(a, b)) for a, b in chunks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(int(v) for v in pool.map(lambda c: fn(*c), chunks))


def _tables(ctx: FieldCtx):
    return (
        np.asarray(ctx.exp, dtype=np.int64),
        np.asarray(ctx.log, dtype=np.int64),
        np.asarray(ctx.add_table),
        np.asarray(ctx.neg_table, dtype=np.int64),
    )


def _base_of(ctx: FieldCtx, base: FieldCtx | None) -> FieldCtx:
    if base is not None:
        return base
    return ctx.subfield if ctx.subfield is not None else ctx


def _embed(ctx: FieldCtx, base: FieldCtx | None, a: int) -> tuple[int, int]:
    b = _base_of(ctx, base)
    return subfield_embed(b, ctx, a), ctx.f // b.f


def _power_table(ctx: FieldCtx, e: int) -> np.ndarray:
    out = np.zeros(ctx.q, dtype=np.int64)
    out[1:] = ctx.exp[(ctx.log[1:].astype(np.int64) * e) % (ctx.q - 1)]
    return out


def _projective(tag, ctx, n, affine, r, elapsed, params) -> CountResult:
    if (affine - 1) % (ctx.q - 1):
        raise CountingBug(f"{tag}: affine count {affine} - 1 not divisible by q - 1 = {ctx.q - 1}")
    return CountResult(tag, n, ctx.p, ctx.f // r, r, ctx.q, affine,
                       (affine - 1) // (ctx.q - 1), elapsed, params)


def _check_dwork_args(ctx: FieldCtx, n: int, psi: int) -> None:
    if n % ctx.p == 0:
        raise PDividesN(f"p={ctx.p} divides n={n}")
    if psi == 0:
        raise PsiZero("psi = 0 is the diagonal case and is not supported")


def count_dwork(ctx: FieldCtx, n: int, psi: int, *, base: FieldCtx | None = None,
                threads: int | None = None, parts: int | None = None) -> CountResult:
    """Projective count of x_1^n + ... + x_n^n - n*psi*x_1...x_n = 0.

    ``psi`` is an element of ``base`` (default: the subfield ``ctx`` was built
    over, or ``ctx`` itself) and is embedded into ``ctx``.
    """
    _check_dwork_args(ctx, n, psi)
    t0 = time.perf_counter()
    psi_e, r = _embed(ctx, base, psi)
    expt, logt, addt, negt = _tables(ctx)
    powt = _power_table(ctx, n)
    T = _root_table_dwork(ctx.q, n, expt, logt, addt, negt, powt)
    coef = ctx.neg(ctx.mul(ctx.from_int(n), psi_e))
    threads = threads or default_threads()
    affine = _run_chunks(
        lambda a, b: _fiber_chunk(a, b, n - 1, ctx.q, expt, logt, addt, powt, coef, T),
        0, ctx.q, threads, parts)
    return _projective("dwork", ctx, n, affine, r, time.perf_counter() - t0,
                       {"psi": psi, "threads": threads})


def count_mirror(ctx: FieldCtx, n: int, psi: int, *, base: FieldCtx | None = None,
                 threads: int | None = None, parts: int | None = None) -> CountResult:
    """Projective count of (y_1 + ... + y_n)^n = (n*psi)^n * y_1...y_n."""
    _check_dwork_args(ctx, n, psi)
    t0 = time.perf_counter()
    psi_e, r = _embed(ctx, base, psi)
    expt, logt, addt, negt = _tables(ctx)
    U = _root_table_mirror(ctx.q, n, expt, logt, addt, negt, _power_table(ctx, n))
    coef = ctx.pow(ctx.mul(ctx.from_int(n), psi_e), n)
    ident = np.arange(ctx.q, dtype=np.int64)
    threads = threads or default_threads()
    affine = _run_chunks(
        lambda a, b: _fiber_chunk(a, b, n - 1, ctx.q, expt, logt, addt, ident, coef, U),
        0, ctx.q, threads, parts)
    return _projective("mirror", ctx, n, affine, r, time.perf_counter() - t0,
                       {"psi": psi, "threads": threads})


def _check_hyper_args(ctx: FieldCtx, n: int, lam: int | None) -> None:
    if lam is None or lam == 0:
        raise LambdaZero("lambda must be a nonzero field element")
    if (ctx.q - 1) % n:
        raise OrderUnavailable(f"n={n} does not divide q-1={ctx.q - 1}")


def count_hyper(ctx: FieldCtx, H: HyperVariety, *, base: FieldCtx | None = None,
                threads: int | None = None, parts: int | None = None) -> CountResult:
    """Affine count of the system H in A^{k+1}; ``H.lam`` lies in ``base``."""
    _check_hyper_args(ctx, H.n, H.lam)
    t0 = time.perf_counter()
    lam, r = _embed(ctx, base, H.lam)
    expt, logt, addt, negt = _tables(ctx)
    al = np.asarray(H.alphas, dtype=np.int64)
    be = np.asarray(H.betas, dtype=np.int64)
    threads = threads or default_threads()
    if H.l == 1:
        raise ValueError("l must be at least 2")
    affine = _run_chunks(
        lambda a, b: _hyper_chunk(a, b, ctx.q, H.n, H.l, H.k, al, be, lam, expt, logt, addt, negt),
        1, ctx.q, threads, parts)
    return CountResult("hyper", H.n, ctx.p, ctx.f // r, r, ctx.q, affine, None,
                       time.perf_counter() - t0,
                       {"l": H.l, "k": H.k, "alphas": list(H.alphas), "betas": list(H.betas),
                        "lam": H.lam, "threads": threads})


def count_hypersurface(ctx: FieldCtx, S: HyperSurface, *, base: FieldCtx | None = None,
                       threads: int | None = None, parts: int | None = None) -> CountResult:
    """Affine count of the one-equation form S in A^{nvars+1}."""
    _check_hyper_args(ctx, S.n, S.lam)
    t0 = time.perf_counter()
    lam, r = _embed(ctx, base, S.lam)
    expt, logt, addt, negt = _tables(ctx)
    a = np.asarray(S.x_exps, dtype=np.int64)
    b = np.asarray(S.one_minus_exps + (0,), dtype=np.int64)
    threads = threads or default_threads()
    affine = _run_chunks(
        lambda lo, hi: _surface_chunk(lo, hi, ctx.q, S.n, S.lam_vars, a, b, S.tail_exp,
                                      S.lam_exp, lam, expt, logt, addt, negt),
        0, ctx.q, threads, parts)
    return CountResult("hypersurface", S.n, ctx.p, ctx.f // r, r, ctx.q, affine, None,
                       time.perf_counter() - t0,
                       {"equation": S.equation(), "lam": S.lam, "threads": threads})

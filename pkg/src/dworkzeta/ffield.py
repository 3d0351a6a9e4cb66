"""Finite fields F_{p^f} with dense discrete-log tables.

Elements are the integers ``0 .. q-1``.  For ``f > 1`` an integer is read
base ``p`` as the coefficient vector (constant term first) of a polynomial
reduced modulo the field's monic irreducible ``modulus``.  Multiplication,
division and powers go through the ``exp``/``log`` tables; addition is
digit-wise modulo ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DivisionByZero,
    IncompatibleFields,
    NonPrimeP,
    ReducibleModulus,
    TableCapExceeded,
)

DEFAULT_TABLE_CAP = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p: lists of coefficients, constant term first
# ---------------------------------------------------------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_divmod_rem(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_divmod_rem(prod, m, p)


def _poly_powmod(a, e, m, p):
    result = [1]
    base = _poly_divmod_rem(a, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_divmod_rem(a, b, p)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Ben-Or test: ``gcd(M, x^(p^i) - x) == 1`` for ``1 <= i <= deg(M)/2``."""
    m = _trim(modulus)
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(deg // 2):
        h = _poly_powmod(h, p, m, p)
        g = _poly_gcd(m, _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``f``, ordered by the base-``p``
    encoding of its non-leading coefficients."""
    for code in range(1, p ** f):
        coeffs = [(code // p ** i) % p for i in range(f)]
        if coeffs[0] == 0:
            continue
        cand = coeffs + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible polynomial of degree {f} over F_{p}")


def _int_to_poly(a, p, f):
    return _trim([(a // p ** i) % p for i in range(f)])


def _poly_to_int(c, p):
    return sum(ci * p ** i for i, ci in enumerate(c))


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    f: int
    q: int
    modulus: tuple
    generator: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    subfield: "FieldCtx | None" = field(default=None, repr=False)
    embed_table: "np.ndarray | None" = field(default=None, repr=False)

    # -- scalar arithmetic --------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        p, out, scale = self.p, 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by 0")
        if a == 0:
            return 0
        return int(self.exp[(self.log[a] - self.log[b]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("0 raised to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("discrete log of 0")
        return int(self.log[a])

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> F_q."""
        return k % self.p

    def element(self, digits) -> int:
        """Element from base-``p`` digits, constant term first."""
        if len(digits) > self.f or any(not 0 <= d < self.p for d in digits):
            raise ValueError(f"invalid digits {digits!r} for F_{self.q}")
        return _poly_to_int(list(digits), self.p)

    def trace(self, a: int) -> int:
        return int(self.trace_table[a])

    # -- dense tables (built lazily, read-only afterwards) --------------------
    @cached_property
    def digits(self) -> np.ndarray:
        idx = np.arange(self.q, dtype=np.int64)
        return np.stack([(idx // self.p ** i) % self.p for i in range(self.f)], axis=1)

    @cached_property
    def trace_table(self) -> np.ndarray:
        # Tr is F_p-linear; evaluate it on the power basis and extend.
        basis = []
        for i in range(self.f):
            a = self.p ** i
            t, x = 0, a
            for _ in range(self.f):
                t = self.add(t, x)
                x = self.pow(x, self.p)
            basis.append(t)
        tr = (self.digits @ np.asarray(basis, dtype=np.int64)) % self.p
        tr.setflags(write=False)
        return tr

    @cached_property
    def add_table(self) -> np.ndarray:
        if self.q * self.q > DEFAULT_TABLE_CAP:
            raise TableCapExceeded(f"addition table for q={self.q} exceeds the cap")
        if self.f == 1:
            idx = np.arange(self.q, dtype=np.int32)
            tab = (idx[:, None] + idx[None, :]) % self.p
        else:
            tab = np.zeros((self.q, self.q), dtype=np.int32)
            for i in range(self.f):
                d = self.digits[:, i].astype(np.int32)
                tab += ((d[:, None] + d[None, :]) % self.p) * (self.p ** i)
        tab = np.ascontiguousarray(tab, dtype=np.int32)
        tab.setflags(write=False)
        return tab

    @cached_property
    def neg_table(self) -> np.ndarray:
        if self.f == 1:
            out = (-np.arange(self.q)) % self.p
        else:
            out = ((-self.digits) % self.p) @ (self.p ** np.arange(self.f))
        out = out.astype(np.int64)
        out.setflags(write=False)
        return out

    def info(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "q": self.q,
            "modulus": list(self.modulus),
            "generator": self.generator,
            "subfield_q": None if self.subfield is None else self.subfield.q,
        }


def _order_is_full(g_poly, p, f, modulus, q):
    for r in prime_factors(q - 1):
        e = (q - 1) // r
        if f == 1:
            if pow(g_poly, e, p) == 1:
                return False
        elif _poly_powmod(g_poly, e, modulus, p) == [1]:
            return False
    return True


def build_field(p: int, f: int = 1, modulus=None, table_cap: int = DEFAULT_TABLE_CAP) -> FieldCtx:
    """Construct F_{p^f} with generator and discrete-log tables."""
    if not is_prime(p):
        raise NonPrimeP(f"{p} is not prime")
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    q = p ** f
    if q > table_cap:
        raise TableCapExceeded(f"q = {q} exceeds table cap {table_cap}")

    if f == 1:
        mod = ()
    else:
        if modulus is None:
            mod = find_irreducible(p, f)
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != f + 1 or mod[-1] != 1:
                raise ReducibleModulus("modulus must be monic of degree f")
            if not is_irreducible(mod, p):
                raise ReducibleModulus(f"{mod} is reducible over F_{p}")

    # smallest element of full multiplicative order
    gen = None
    for cand in range(1, q):
        g = cand if f == 1 else _int_to_poly(cand, p, f)
        if q == 2 or _order_is_full(g, p, f, list(mod), q):
            gen = cand
            break
    assert gen is not None

    exp = np.empty(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    if f == 1:
        x = 1
        for k in range(q - 1):
            exp[k] = x
            x = (x * gen) % p
    else:
        g = _int_to_poly(gen, p, f)
        x = [1]
        m = list(mod)
        for k in range(q - 1):
            exp[k] = _poly_to_int(x, p)
            x = _poly_mulmod(x, g, m, p)
    log[exp] = np.arange(q - 1)
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldCtx(p=p, f=f, q=q, modulus=mod, generator=gen, exp=exp, log=log)


def build_extension(base: FieldCtx, r: int, table_cap: int = DEFAULT_TABLE_CAP) -> FieldCtx:
    """Build F_{q^r} over ``base`` together with a ring embedding of ``base``.

    The embedding sends the root of ``base.modulus`` to a root of the same
    polynomial inside the degree-``f`` subfield of the extension, found by
    scanning the subfield {g_ext^(j(Q-1)/(q-1))}.
    """
    ext = build_field(base.p, base.f * r, table_cap=table_cap)
    if base.f == 1:
        table = np.arange(base.q, dtype=np.int64)
    else:
        step = (ext.q - 1) // (base.q - 1)
        root = None
        for j in range(base.q - 1):
            beta = int(ext.exp[(j * step) % (ext.q - 1)])
            acc = 0
            for c in reversed(base.modulus):
                acc = ext.add(ext.mul(acc, beta), c)
            if acc == 0:
                root = beta
                break
        if root is None:
            raise IncompatibleFields("base modulus has no root in the extension")
        powers = [ext.pow(root, i) for i in range(base.f)]
        table = np.zeros(base.q, dtype=np.int64)
        for a in range(base.q):
            acc = 0
            for i, c in enumerate(base.digits[a]):
                if c:
                    acc = ext.add(acc, ext.mul(int(c), powers[i]))
            table[a] = acc
    table.setflags(write=False)
    return FieldCtx(
        p=ext.p, f=ext.f, q=ext.q, modulus=ext.modulus, generator=ext.generator,
        exp=ext.exp, log=ext.log, subfield=base, embed_table=table,
    )


def subfield_embed(base: FieldCtx, ext: FieldCtx, a: int) -> int:
    if base is ext:
        return a
    if base.p != ext.p or ext.f % base.f != 0:
        raise IncompatibleFields(f"F_{base.q} does not embed in F_{ext.q}")
    if base.f == 1:
        return a % base.p
    sub = ext.subfield
    if sub is None or sub.q != base.q or sub.modulus != base.modulus:
        raise IncompatibleFields("extension was not built over this base field")
    return int(ext.embed_table[a])


def field_arith(ctx: FieldCtx, a: int, b: int, op: str) -> int:
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "div":
        return ctx.div(a, b)
    if op == "pow":
        return ctx.pow(a, b)
    raise ValueError(f"unknown operation {op!r}")


def absolute_trace(ctx: FieldCtx, a: int) -> int:
    return ctx.trace(a)

"""Additive and multiplicative characters, Gauss and Jacobi sums.

Character values live in C and are carried as :class:`CycValue`, a complex
float with a conservative absolute error bound.  Gauss sums are tabulated
once per field (exact reduction of every angle to an integer numerator over
``p(q-1)``, then ``math.fsum``) and read back from the memo afterwards.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyList, OrderUnavailable, RoundingFailure, ToleranceExceeded, ZeroArgument
from .ffield import FieldCtx

EPS = np.finfo(float).eps
ROUND_TOL = 1e-6
IDENTITY_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class CycValue:
    """Complex approximation ``re + i*im`` with absolute error at most ``err``."""

    re: float
    im: float
    err: float = 0.0

    @classmethod
    def exact(cls, z) -> "CycValue":
        z = complex(z)
        return cls(z.real, z.imag, 0.0)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def _slack(self, z: complex) -> float:
        return 4 * EPS * abs(z)

    def __neg__(self):
        return CycValue(-self.re, -self.im, self.err)

    def conj(self) -> "CycValue":
        return CycValue(self.re, -self.im, self.err)

    def __add__(self, other):
        if not isinstance(other, CycValue):
            other = CycValue.exact(other)
        z = self.value + other.value
        return CycValue(z.real, z.imag, self.err + other.err + self._slack(z))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CycValue):
            other = CycValue.exact(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycValue):
            other = CycValue.exact(other)
        z = self.value * other.value
        err = abs(self) * other.err + abs(other) * self.err + self.err * other.err
        return CycValue(z.real, z.imag, err + self._slack(z))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycValue):
            other = CycValue.exact(other)
        den = abs(other) - other.err
        if den <= 0:
            raise ZeroDivisionError("divisor is indistinguishable from 0")
        z = self.value / other.value
        err = (self.err + abs(z) * other.err) / den
        return CycValue(z.real, z.imag, err + self._slack(z))

    def __pow__(self, e: int):
        if e < 0:
            return CycValue.exact(1) / (self ** (-e))
        out = CycValue.exact(1)
        for _ in range(e):
            out = out * self
        return out

    def round_to_integer(self, tol: float = ROUND_TOL) -> int:
        """Nearest integer, which must lie within ``tol``.

        ``err`` is a worst-case bound and only has to certify that no other
        integer is possible (distance + err < 1/2).
        """
        k = round(self.re)
        miss = math.hypot(self.re - k, self.im)
        if not miss < tol:
            raise RoundingFailure(
                f"{self.value} is not within {tol} of an integer", residual=miss)
        if not miss + self.err < 0.5:
            raise RoundingFailure(
                f"{self.value} has error bound {self.err:.2e}: nearest integer not certified",
                residual=miss + self.err)
        return int(k)

    def __repr__(self):
        return f"CycValue({self.re:.12g}{self.im:+.12g}j, err={self.err:.1e})"


# ---------------------------------------------------------------------------
# per-field tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class _CharTables:
    roots_q1: np.ndarray           # exp(2*pi*i*j/(q-1))
    gauss: np.ndarray              # complex Gauss sums indexed by exponent
    gauss_err: float

_TABLES: "weakref.WeakKeyDictionary[FieldCtx, _CharTables]" = weakref.WeakKeyDictionary()


def _build_tables(ctx: FieldCtx) -> _CharTables:
    q1, p = ctx.q - 1, ctx.p
    j = np.arange(q1)
    roots = np.exp(2j * np.pi * j / q1)
    big = p * q1
    # phi(g^k) chi_a(g^k) = exp(2 pi i (Tr(g^k)(q-1) + a k p) / (p(q-1)))
    tr = ctx.trace_table[ctx.exp].astype(np.int64)
    k = np.arange(q1, dtype=np.int64)
    gauss = np.empty(q1, dtype=complex)
    chunk = max(1, 2_000_000 // max(q1, 1))
    for start in range(0, q1, chunk):
        a = np.arange(start, min(q1, start + chunk), dtype=np.int64)
        num = (tr[None, :] * q1 + (a[:, None] * k[None, :] % q1) * p) % big
        ang = 2 * np.pi * num / big
        re, im = np.cos(ang), np.sin(ang)
        for row, aa in enumerate(a):
            gauss[aa] = complex(math.fsum(re[row]), math.fsum(im[row]))
    gauss.setflags(write=False)
    roots.setflags(write=False)
    return _CharTables(roots_q1=roots, gauss=gauss, gauss_err=4 * EPS * max(q1, 1) + 1e-15)


def char_tables(ctx: FieldCtx) -> _CharTables:
    tab = _TABLES.get(ctx)
    if tab is None:
        tab = _build_tables(ctx)
        _TABLES[ctx] = tab
    return tab


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultChar:
    """Character ``g^k -> exp(2 pi i a k / (q-1))`` of F_q^*."""

    ctx: FieldCtx = field(compare=False, repr=False)
    a: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % (self.ctx.q - 1))

    @property
    def order(self) -> int:
        q1 = self.ctx.q - 1
        return q1 // math.gcd(self.a, q1)

    @property
    def is_trivial(self) -> bool:
        return self.a == 0

    def __mul__(self, other: "MultChar") -> "MultChar":
        return MultChar(self.ctx, self.a + other.a)

    def __pow__(self, e: int) -> "MultChar":
        return MultChar(self.ctx, self.a * e)

    def inverse(self) -> "MultChar":
        return MultChar(self.ctx, -self.a)

    def __call__(self, x: int) -> CycValue:
        return mult_char_eval(self, x)


def trivial_char(ctx: FieldCtx) -> MultChar:
    return MultChar(ctx, 0)


def char_of_order(ctx: FieldCtx, n: int, power: int = 1) -> MultChar:
    """The order-``n`` character with exponent ``power*(q-1)/n``."""
    if (ctx.q - 1) % n:
        raise OrderUnavailable(f"no character of order {n} on F_{ctx.q}")
    ch = MultChar(ctx, power * ((ctx.q - 1) // n))
    if ch.order != n:
        raise OrderUnavailable(f"power {power} does not give order {n}")
    return ch


def all_chars(ctx: FieldCtx) -> list[MultChar]:
    return [MultChar(ctx, a) for a in range(ctx.q - 1)]


def additive_char(ctx: FieldCtx, x: int) -> CycValue:
    """The standard additive character ``x -> exp(2 pi i Tr(x) / p)``."""
    t = ctx.trace(x)
    z = complex(math.cos(2 * math.pi * t / ctx.p), math.sin(2 * math.pi * t / ctx.p))
    return CycValue(z.real, z.imag, 2 * EPS)


def mult_char_eval(chi: MultChar, x: int) -> CycValue:
    if x == 0:
        raise ZeroArgument("multiplicative characters are evaluated on F_q^* only")
    ctx = chi.ctx
    if ctx.q == 2:
        return CycValue.exact(1)
    z = char_tables(ctx).roots_q1[(chi.a * ctx.dlog(x)) % (ctx.q - 1)]
    return CycValue(z.real, z.imag, 2 * EPS)


def gauss_sum(chi: MultChar) -> CycValue:
    tab = char_tables(chi.ctx)
    z = tab.gauss[chi.a]
    return CycValue(float(z.real), float(z.imag), tab.gauss_err)


def gauss_sum_direct(chi: MultChar) -> CycValue:
    """Unmemoized reference summation, one term per element of F_q^*."""
    ctx = chi.ctx
    total = CycValue.exact(0)
    for x in range(1, ctx.q):
        total = total + additive_char(ctx, x) * mult_char_eval(chi, x)
    return total


def _nonzero_one_minus(ctx: FieldCtx, xs: np.ndarray) -> np.ndarray:
    return ctx.add_table[1, ctx.neg_table[xs]]


def _angle_sum(ctx: FieldCtx, idx: np.ndarray) -> CycValue:
    q1 = ctx.q - 1
    ang = 2 * np.pi * (idx % q1) / q1
    re = math.fsum(np.cos(ang).ravel())
    im = math.fsum(np.sin(ang).ravel())
    return CycValue(re, im, 4 * EPS * max(idx.size, 1))


def jacobi_sum(chis) -> CycValue:
    """J(chi_1, ..., chi_r): direct enumeration for r <= 3, Gauss quotient above."""
    chis = list(chis)
    if not chis:
        raise EmptyList("Jacobi sum of an empty character list")
    ctx = chis[0].ctx
    r = len(chis)
    if r == 1:
        return CycValue.exact(1)
    if r > 3:
        return jacobi_gauss_quotient(chis)
    log = ctx.log
    xs = np.arange(1, ctx.q, dtype=np.int64)
    if r == 2:
        ys = _nonzero_one_minus(ctx, xs)
        keep = ys != 0
        x, y = xs[keep], ys[keep]
        return _angle_sum(ctx, chis[0].a * log[x] + chis[1].a * log[y])
    s = ctx.add_table[xs[:, None], xs[None, :]]
    z = _nonzero_one_minus(ctx, s)
    keep = z != 0
    x1 = np.broadcast_to(xs[:, None], s.shape)[keep]
    x2 = np.broadcast_to(xs[None, :], s.shape)[keep]
    return _angle_sum(ctx, chis[0].a * log[x1] + chis[1].a * log[x2] + chis[2].a * log[z[keep]])


def jacobi_gauss_quotient(chis) -> CycValue:
    """Jacobi sum from Gauss sums; the all-trivial case uses its exact count."""
    chis = list(chis)
    if not chis:
        raise EmptyList("Jacobi sum of an empty character list")
    ctx = chis[0].ctx
    q, r = ctx.q, len(chis)
    if all(c.is_trivial for c in chis):
        return CycValue.exact(((q - 1) ** r - (-1) ** r) // q)
    num = CycValue.exact(1)
    prod = MultChar(ctx, 0)
    for c in chis:
        num = num * gauss_sum(c)
        prod = prod * c
    out = num / gauss_sum(prod)
    if prod.is_trivial:
        out = out * (1.0 / q)
    return out


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

@dataclass
class IdentityResult:
    name: str
    max_residual: float = 0.0
    witness: object = None
    checked: int = 0
    skipped: int = 0

    def update(self, residuals: np.ndarray, witnesses) -> None:
        residuals = np.asarray(residuals, dtype=float).ravel()
        if residuals.size == 0:
            return
        self.checked += residuals.size
        i = int(np.argmax(residuals))
        if residuals[i] >= self.max_residual:
            self.max_residual = float(residuals[i])
            self.witness = witnesses[i] if not callable(witnesses) else witnesses(i)


@dataclass
class IdentityReport:
    q: int
    p: int
    f: int
    tol: float
    seed: int
    results: list[IdentityResult]

    @property
    def max_residual(self) -> float:
        return max(r.max_residual for r in self.results)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "q": self.q,
            "tol": self.tol,
            "seed": self.seed,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "identities": [
                {
                    "name": r.name,
                    "max_residual": r.max_residual,
                    "witness": _jsonable(r.witness),
                    "checked": r.checked,
                    "skipped": r.skipped,
                }
                for r in self.results
            ],
        }

    def raise_for_failure(self) -> None:
        for r in self.results:
            if not r.max_residual < self.tol:
                raise ToleranceExceeded(
                    f"{r.name} residual {r.max_residual:.3e} >= {self.tol} at {r.witness}",
                    identity=r.name, witness=r.witness, residual=r.max_residual,
                )


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    if isinstance(w, (np.integer,)):
        return int(w)
    return w


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def identity_suite(ctx: FieldCtx, tol: float = IDENTITY_TOL, seed: int = 0,
                   jacobi3_samples: int = 400, strict: bool = True) -> IdentityReport:
    """Evaluate both sides of every Gauss/Jacobi identity on ``ctx``.

    Residuals are absolute except for the multiplication formula, whose two
    sides are products of up to q-1 Gauss sums; there the residual is taken
    relative to the modulus of the right-hand side.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    rng = np.random.default_rng(seed)
    q, q1, p = ctx.q, ctx.q - 1, ctx.p
    tab = char_tables(ctx)
    G = np.asarray(tab.gauss)
    roots = tab.roots_q1
    log = ctx.log
    k = np.arange(q1)
    E = roots[(k[:, None] * k[None, :]) % q1]       # E[a, j] = chi_a(g^j)
    elems = np.asarray(ctx.exp)                      # g^j
    results = []

    # orthogonality over the multiplicative group
    r = IdentityResult("orthogonality_multiplicative")
    lhs = E.sum(axis=0) / q1
    rhs = (elems == 1).astype(float)
    r.update(np.abs(lhs - rhs), [int(x) for x in elems])
    results.append(r)

    # orthogonality of the additive character
    r = IdentityResult("orthogonality_additive")
    allx = np.arange(q)
    prod = np.zeros((q, q), dtype=np.int64)
    nz = allx[1:]
    prod[1:, 1:] = ctx.exp[(log[nz][:, None] + log[nz][None, :]) % q1]
    phi = np.exp(2j * np.pi * ctx.trace_table[prod] / p)
    lhs = phi.sum(axis=0) / q
    rhs = (allx == 0).astype(float)
    r.update(np.abs(lhs - rhs), list(range(q)))
    results.append(r)

    # reflection g(chi) g(chi^-1) = chi(-1) q
    r = IdentityResult("reflection", skipped=1)
    a = np.arange(1, q1)
    minus_one = ctx.neg(1)
    chi_m1 = roots[(a * log[minus_one]) % q1]
    r.update(np.abs(G[a] * G[(-a) % q1] - chi_m1 * q), [int(x) for x in a])
    results.append(r)

    # multiplication (Hasse-Davenport), product form.  Both sides carry the
    # same power of sqrt(q), so compare the unit-modulus normalised products.
    r = IdentityResult("multiplication")
    Gn = G / np.where(np.arange(q1) == 0, 1.0, math.sqrt(q))
    for d in _divisors(q1):
        step = q1 // d
        sub = np.arange(d) * step
        const = np.prod(Gn[sub[1:]]) if d > 1 else 1.0
        e = np.arange(q1)
        lhs_v = Gn[(d * e) % q1] * const
        eta_d = roots[(e * int(log[ctx.from_int(d)]) * d) % q1]
        rhs_v = eta_d * np.prod(Gn[(e[:, None] + sub[None, :]) % q1], axis=1)
        r.update(np.abs(lhs_v - rhs_v), lambda i, d=d: (d, int(i)))
    results.append(r)

    # Jacobi-Gauss link, r = 2 exhaustive, r = 3 sampled plus trivial-product cases
    r = IdentityResult("jacobi_gauss_link", skipped=1)
    xs = np.arange(1, q)
    ys = _nonzero_one_minus(ctx, xs)
    keep = ys != 0
    lx, ly = log[xs[keep]], log[ys[keep]]
    Ex = roots[(k[:, None] * lx[None, :]) % q1]
    Ey = roots[(k[:, None] * ly[None, :]) % q1]
    J2 = Ex @ Ey.T                                  # J(chi_a, chi_b)
    A, B = np.meshgrid(k, k, indexing="ij")
    Gp = G[(A + B) % q1]
    quot = G[A] * G[B] / Gp
    quot = np.where((A + B) % q1 == 0, quot / q, quot)
    res = np.abs(J2 - quot)
    res[0, 0] = 0.0
    mask = np.ones_like(res, dtype=bool)
    mask[0, 0] = False
    r.update(res[mask], lambda i, idx=np.argwhere(mask): ("r=2", int(idx[i][0]), int(idx[i][1])))
    triples = [tuple(int(t) for t in rng.integers(0, q1, size=3)) for _ in range(jacobi3_samples // 2)]
    for _ in range(jacobi3_samples - len(triples)):
        a1, a2 = (int(t) for t in rng.integers(0, q1, size=2))
        triples.append((a1, a2, (-a1 - a2) % q1))
    for t in triples:
        if t == (0, 0, 0):
            r.skipped += 1
            continue
        chis = [MultChar(ctx, x) for x in t]
        diff = jacobi_sum(chis) - jacobi_gauss_quotient(chis)
        r.update(np.array([abs(diff)]), [("r=3",) + t])
    results.append(r)

    # Fourier inversion on random f and on every delta function
    r = IdentityResult("fourier_inversion")
    Ec = E.conj()
    for trial in range(3):
        fvals = rng.normal(size=q1) + 1j * rng.normal(size=q1)
        fhat = Ec @ fvals
        rec = (E.T @ fhat) / q1
        r.update(np.abs(rec - fvals), lambda i, t=trial: ("random", t, int(elems[i])))
    deltas = (E.T @ Ec) / q1
    r.update(np.abs(deltas - np.eye(q1)).max(axis=1),
             lambda i: ("delta", int(elems[i])))
    results.append(r)

    # corollary phi(x) = 1/(q-1) sum_eta g(eta^-1) eta(x)
    r = IdentityResult("additive_char_from_gauss_sums")
    lhs = np.exp(2j * np.pi * ctx.trace_table[elems] / p)
    rhs = (G[(-k) % q1] @ E) / q1
    r.update(np.abs(lhs - rhs), [int(x) for x in elems])
    results.append(r)

    report = IdentityReport(q=q, p=p, f=ctx.f, tol=tol, seed=seed, results=results)
    if strict:
        report.raise_for_failure()
    return report

"""Character-sum formulas for the Dwork count and the hypergeometric varieties.

All Gauss sums are taken with respect to the standard additive character and
characters are indexed by their exponent ``a`` (``chi_a(g^k) = e^(2 pi i a k/(q-1))``).
A character of order n is ``chi_t`` with ``t = j (q-1)/n``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import factorial

from .charsums import (
    IDENTITY_TOL,
    ROUND_TOL,
    CycValue,
    MultChar,
    char_of_order,
    char_tables,
    jacobi_gauss_quotient,
)
from .counting import count_dwork, count_hyper, count_mirror
from .errors import (
    CongruenceViolated,
    CountingBug,
    FormMismatch,
    LambdaZero,
    NonIntegralMultiplicity,
    OrderMismatch,
    PairingInvariantViolated,
    PsiZero,
    SpecialClass,
)
from .ffield import FieldCtx, subfield_embed
from .orbits import ClassRecord, enumerate_classes, profile_of
from .varieties import HyperSurface, HyperVariety

__all__ = [
    "HyperVariety", "HyperSurface", "BetaEval", "ClassTerm", "HyperFormula",
    "LinkResult", "ClassRow", "DecompositionReport", "beta", "N_class",
    "dwork_count_formula", "N_hyper_formula", "build_hyper_from_class",
    "link_check", "decompose", "lambda_of_psi", "trivial_part",
]


def _g(ctx: FieldCtx, a: int) -> CycValue:
    tab = char_tables(ctx)
    z = tab.gauss[a % (ctx.q - 1)]
    return CycValue(float(z.real), float(z.imag), tab.gauss_err)


def _eta_at(ctx: FieldCtx, e: int, x: int) -> CycValue:
    z = char_tables(ctx).roots_q1[(e * int(ctx.log[x])) % (ctx.q - 1)]
    return CycValue(float(z.real), float(z.imag), 2e-16)


def _qpow(q: int, e) -> CycValue:
    return CycValue.exact(float(q) ** e)


def trivial_part(q: int, n: int) -> int:
    return sum(q ** i for i in range(n - 1))


def lambda_of_psi(ctx: FieldCtx, n: int, psi: int) -> int:
    if psi == 0:
        raise PsiZero("psi must be nonzero")
    return ctx.inv(ctx.pow(psi, n))


# ---------------------------------------------------------------------------
# beta coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetaEval:
    s: tuple
    chi_exponent: int
    eta_exponent: int
    value: CycValue
    kb_value: CycValue
    z: int
    delta: int
    nu: int
    residual: float


def _beta_def(ctx, s, a, e):
    n = len(s)
    q1 = ctx.q - 1
    dens = [(a * si + e) % q1 for si in s]
    z = sum(1 for d in dens if d == 0)
    delta = 1 if z == 0 else 0
    num = CycValue.exact(1)
    for j in range(n):
        num = num * _g(ctx, a * j + e)
    den = CycValue.exact(1)
    for d in dens:
        den = den * _g(ctx, d)
    return _qpow(ctx.q, (n + 1) // 2 - z - delta) * (num / den), z, delta


def _beta_kb(ctx, prof, a, e):
    n = len(prof)
    q1 = ctx.q - 1
    v = [b for b in range(n) if prof[b] == 0]
    w = [b for b in range(n) for _ in range(max(prof[b] - 1, 0))]
    nu = sum(1 for b in w if (a * b + e) % q1 == 0)
    num = CycValue.exact(1)
    for b in v:
        num = num * _g(ctx, a * b + e)
    den = CycValue.exact(1)
    for b in w:
        den = den * _g(ctx, a * b + e)
    return _qpow(ctx.q, (n - 1) // 2 - nu) * (num / den), nu


def beta(s, chi: MultChar, eta: MultChar, tol: float = IDENTITY_TOL) -> BetaEval:
    """beta_{s,chi,eta} by the defining quotient and by the k(b) form."""
    s = tuple(int(x) for x in s)
    n = len(s)
    ctx = chi.ctx
    if chi.order != n:
        raise OrderMismatch(f"chi has order {chi.order}, expected {n}")
    if sum(s) % n:
        raise ValueError("s must sum to 0 mod n")
    val, z, delta = _beta_def(ctx, s, chi.a, eta.a)
    kb, nu = _beta_kb(ctx, profile_of(s, n), chi.a, eta.a)
    if z + delta != 1 + nu:
        raise FormMismatch(f"z+delta={z + delta} but 1+nu={1 + nu}", identity="z+delta=1+nu",
                           witness=(s, chi.a, eta.a), residual=float(abs(z + delta - 1 - nu)))
    res = abs(val.value - kb.value)
    if res > tol * max(1.0, abs(val)) + val.err + kb.err:
        raise FormMismatch(f"beta forms differ by {res:.3e}", identity="beta k(b) form",
                           witness=(s, chi.a, eta.a), residual=res)
    return BetaEval(s, chi.a, eta.a, val, kb, z, delta, nu, res)


# ---------------------------------------------------------------------------
# class terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassTerm:
    rep: tuple
    bracket: CycValue          # N_{[s],chi}
    total: CycValue            # N_<s>
    value: int                 # N_<s> rounded
    residual: float


def _class_multiplier(rec: ClassRecord) -> int:
    return factorial(rec.n - 1) if rec.special == "full" else rec.gamma


def _bracket(ctx, s, a, lam):
    acc = CycValue.exact(0)
    for e in range(ctx.q - 1):
        b = beta(s, MultChar(ctx, a), MultChar(ctx, e))
        # the k(b) form has 2m Gauss factors instead of 2n: tighter error bound
        acc = acc + b.kb_value * _eta_at(ctx, e, lam)
    return acc / (ctx.q - 1)


def N_class(rec: ClassRecord, chi: MultChar, psi: int, tol: float = ROUND_TOL) -> ClassTerm:
    """(N_{[s],chi}, N_<s>) for the class ``rec``; psi is an element of chi's field."""
    ctx = chi.ctx
    n = rec.n
    if chi.order != n:
        raise OrderMismatch(f"chi has order {chi.order}, expected {n}")
    lam = lambda_of_psi(ctx, n, psi)
    bracket = _bracket(ctx, rec.rep, chi.a, lam)
    acc = CycValue.exact(0)
    for k in range(1, n):
        acc = acc + _bracket(ctx, tuple(k * x % n for x in rec.rep), chi.a, lam)
    total = acc * _class_multiplier(rec) / rec.K
    value = total.round_to_integer(tol)
    return ClassTerm(rec.rep, bracket, total, value, abs(total.value - value))


def _check_congruence(ctx: FieldCtx, n: int) -> None:
    if (ctx.q - 1) % n:
        raise CongruenceViolated(f"q={ctx.q} is not 1 mod n={n}")


def dwork_count_formula(ctx: FieldCtx, n: int, psi: int) -> int:
    """|X_psi(F_q)| = 1 + q + ... + q^(n-2) + sum over classes of N_<s>."""
    _check_congruence(ctx, n)
    if psi == 0:
        raise PsiZero("psi must be nonzero")
    chi = char_of_order(ctx, n)
    return trivial_part(ctx.q, n) + sum(N_class(r, chi, psi).value for r in enumerate_classes(n))


# ---------------------------------------------------------------------------
# hypergeometric varieties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperFormula:
    per_chi_eta: dict = field(repr=False)   # (chi exponent, eta exponent) -> CycValue
    per_chi: dict                           # chi exponent -> N_{lam,chi}
    N_lam: CycValue
    N_lam_int: int
    predicted: int
    form_residual: float


def _hyper_terms(ctx, H: HyperVariety, a: int, e: int):
    q1 = ctx.q - 1
    l, k = H.l, H.k
    al, be = H.alphas, H.betas
    facs = [[(a * al[j] + e) % q1, (a * be[j]) % q1] for j in range(l - 1)]
    facs.append([(a * al[l - 1] + e) % q1] + [(a * x) % q1 for x in al[l:]] + [(a * be[l - 1]) % q1])
    general = CycValue.exact(1)
    for f in facs:
        general = general * jacobi_gauss_quotient([MultChar(ctx, x) for x in f])
    dens = [sum(f) % q1 for f in facs]
    nu = sum(1 for d in dens if d == 0)
    den = CycValue.exact(1)
    for d in dens:
        den = den * _g(ctx, d)
    forms = []
    if not any(all(x == 0 for x in f) for f in facs):
        num = CycValue.exact(1)
        for f in facs:
            for x in f:
                num = num * _g(ctx, x)
        forms.append(_qpow(ctx.q, -nu) * (num / den))
    if H.complete_pairing:
        num = CycValue.exact(1)
        for j in range(l):
            num = num * _g(ctx, a * al[j] + e)
        forms.append(_qpow(ctx.q, k / 2 - nu) * (num / den))
    return general, forms


def N_hyper_formula(ctx: FieldCtx, H: HyperVariety, *, base: FieldCtx | None = None,
                    tol: float = IDENTITY_TOL) -> HyperFormula:
    """N_{lam,chi,eta}, N_{lam,chi}, N_lam and the predicted affine count of H."""
    n = H.n
    _check_congruence(ctx, n)
    if not H.lam:
        raise LambdaZero("H has no nonzero lambda")
    if base is None:
        base = ctx.subfield if ctx.subfield is not None else ctx
    lam = subfield_embed(base, ctx, H.lam)
    q1 = ctx.q - 1
    per_chi_eta, per_chi = {}, {}
    worst = 0.0
    total = CycValue.exact(0)
    for t in range(1, n):
        a = t * q1 // n
        acc = CycValue.exact(0)
        for e in range(q1):
            val, forms = _hyper_terms(ctx, H, a, e)
            for alt in forms:
                res = abs(val.value - alt.value)
                if res > tol * max(1.0, abs(val)) + val.err + alt.err:
                    raise FormMismatch(f"N_(lam,chi,eta) forms differ by {res:.3e}",
                                       identity="hypergeometric Gauss forms",
                                       witness=(a, e), residual=res)
                worst = max(worst, res)
            per_chi_eta[(a, e)] = val
            acc = acc + val * _eta_at(ctx, e, lam)
        per_chi[a] = acc / q1
        total = total + per_chi[a]
    N_int = total.round_to_integer()
    predicted = (ctx.q - 1) ** (H.l - 1) * ctx.q ** (H.k - H.l) + N_int
    return HyperFormula(per_chi_eta, per_chi, total, N_int, predicted, worst)


def build_hyper_from_class(rec: ClassRecord, psi: int, ctx: FieldCtx) -> HyperVariety:
    """The class's variety with lam = 1/psi^n (psi an element of ``ctx``)."""
    if rec.is_special or rec.hyper is None:
        raise SpecialClass(f"class {rec.rep} has no hypergeometric variety")
    H = rec.hyper.with_lambda(lambda_of_psi(ctx, rec.n, psi))
    if not H.complete_pairing:
        raise PairingInvariantViolated(f"variety of class {rec.rep} lacks complete pairing")
    return H


@dataclass(frozen=True)
class LinkResult:
    rep: tuple
    weight: int
    q_exponent: int
    N_class: int
    N_lam: int
    residual: float


def link_check(rec: ClassRecord, psi: int, ctx: FieldCtx, H: HyperVariety | None = None) -> LinkResult:
    """Compare N_<s> with (gamma/K) q^((n-d-2)/2) N_lam computed independently."""
    if rec.gamma % rec.K:
        raise NonIntegralMultiplicity(f"K={rec.K} does not divide gamma={rec.gamma}")
    H = build_hyper_from_class(rec, psi, ctx) if H is None else H
    chi = char_of_order(ctx, rec.n)
    left = N_class(rec, chi, psi)
    hf = N_hyper_formula(ctx, H, base=ctx)
    qe2 = rec.n + 1 - (2 * rec.m - rec.mprime)
    assert qe2 % 2 == 0 and qe2 // 2 == (rec.n - rec.d - 2) // 2
    right = hf.N_lam * (rec.weight * ctx.q ** (qe2 // 2))
    res = abs(left.total.value - right.value)
    return LinkResult(rec.rep, rec.weight, qe2 // 2, left.value, hf.N_lam_int, res)


# ---------------------------------------------------------------------------
# full decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassRow:
    rep: tuple
    gamma: int
    K: int
    weight: int
    d: int
    q_exponent: int
    N_class: int
    N_lam: int
    link_residual: float
    equation: str
    hyper_predicted: int
    hyper_count: int | None


@dataclass
class DecompositionReport:
    n: int
    q: int
    psi: int
    singular: bool
    trivial_part: int
    N_mirror_formula: int
    N_mirror_count: int | None
    singular_term: int
    singular_term_formula: int
    rows: list
    by_dimension: dict
    formula_total: int
    hyper_total: int
    brute_force_total: int | None
    max_rounding_residual: float
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def check(self) -> None:
        if self.problems:
            raise CountingBug("; ".join(self.problems))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["rows"] = [asdict(r) for r in self.rows]
        for r in out["rows"]:
            r["rep"] = list(r["rep"])
        out["by_dimension"] = {str(k): v for k, v in self.by_dimension.items()}
        out["ok"] = self.ok
        return out


def _equation(H: HyperVariety) -> str:
    S = H.hypersurface()
    return S.equation("L") if S is not None else H.equation()


def decompose(ctx: FieldCtx, n: int, psi: int, *, brute: bool = True, count_varieties: bool = False,
              threads: int | None = None) -> DecompositionReport:
    """Split |X_psi(F_q)| into the trivial part, the mirror and the hypergeometric terms.

    With ``brute`` the Dwork and mirror varieties are also counted directly;
    ``count_varieties`` counts every hypergeometric variety as well.
    """
    _check_congruence(ctx, n)
    if psi == 0:
        raise PsiZero("psi must be nonzero")
    q = ctx.q
    chi = char_of_order(ctx, n)
    singular = ctx.pow(psi, n) == 1
    records = enumerate_classes(n)
    triv = trivial_part(q, n)
    problems: list[str] = []
    worst = 0.0

    zero = next(r for r in records if r.special == "zero")
    full = next(r for r in records if r.special == "full")
    t0 = N_class(zero, chi, psi)
    tf = N_class(full, chi, psi)
    worst = max(worst, t0.residual, tf.residual)
    sing = factorial(n - 1) * q ** ((n - 1) // 2) if singular else 0
    if tf.value != sing:
        problems.append(f"singular class term {tf.value} != {sing}")

    mirror_count = None
    if brute:
        mirror_count = count_mirror(ctx, n, psi, base=ctx, threads=threads).projective - triv
        if mirror_count != t0.value:
            problems.append(f"N_mirror by count {mirror_count} != class term {t0.value}")

    rows = []
    by_dim: dict[int, int] = {}
    for rec in records:
        if rec.is_special:
            continue
        H = build_hyper_from_class(rec, psi, ctx)
        link = link_check(rec, psi, ctx, H)
        hf_pred = (q - 1) ** (H.l - 1) * q ** (H.k - H.l) + link.N_lam
        hc = count_hyper(ctx, H, base=ctx, threads=threads).affine if count_varieties else None
        if hc is not None and hc != hf_pred:
            problems.append(f"class {rec.rep}: variety count {hc} != formula {hf_pred}")
        if link.N_class != link.weight * q ** link.q_exponent * link.N_lam:
            problems.append(f"class {rec.rep}: link identity fails")
        worst = max(worst, link.residual)
        by_dim[rec.d] = by_dim.get(rec.d, 0) + link.weight * link.N_lam
        rows.append(ClassRow(rec.rep, rec.gamma, rec.K, link.weight, rec.d, link.q_exponent,
                             link.N_class, link.N_lam, link.residual, _equation(H), hf_pred, hc))

    expected_dims = set(range(1, n - 3, 2))
    if set(by_dim) != expected_dims:
        problems.append(f"dimensions {sorted(by_dim)} != {sorted(expected_dims)}")

    formula_total = triv + t0.value + tf.value + sum(r.N_class for r in rows)
    hyper_total = triv + t0.value + sing + sum(q ** ((n - d - 2) // 2) * v for d, v in by_dim.items())
    if hyper_total != formula_total:
        problems.append(f"grouped total {hyper_total} != class total {formula_total}")
    brute_total = None
    if brute:
        brute_total = count_dwork(ctx, n, psi, base=ctx, threads=threads).projective
        if brute_total != formula_total:
            problems.append(f"brute force {brute_total} != formula {formula_total}")

    return DecompositionReport(
        n=n, q=q, psi=psi, singular=singular, trivial_part=triv,
        N_mirror_formula=t0.value, N_mirror_count=mirror_count,
        singular_term=sing, singular_term_formula=tf.value, rows=rows,
        by_dimension=dict(sorted(by_dim.items())), formula_total=formula_total,
        hyper_total=hyper_total, brute_force_total=brute_total,
        max_rounding_residual=worst, problems=problems,
    )

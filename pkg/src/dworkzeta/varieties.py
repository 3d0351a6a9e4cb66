"""Affine varieties of hypergeometric type and their one-equation forms.

``HyperVariety`` is the system

    y^n = prod_i x_i^alpha_i * prod_{j<l} (1 - x_j)^beta_j * (1 - x_l - ... - x_k)^beta_l
    lam * x_1 ... x_l = 1

in A^{k+1}.  ``HyperSurface`` is the single equation obtained by solving the
constraint for one variable whose two exponents sum to 0 mod n:

    y^n = prod_i x_i^a_i * prod_{j <= l-2} (1 - x_j)^b_j
          * (1 - x_{l-1} - ... - x_{k-1})^tail * (1 - lam x_1 ... x_{l-1})^c

in A^k.  Its affine count is q^(k-1) + N_lam, the same deviation as the system.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace


def lift(e: int, n: int) -> int:
    """Representative of ``e mod n`` in ``[1, n]``."""
    return (e - 1) % n + 1


@dataclass(frozen=True)
class HyperVariety:
    n: int
    l: int
    k: int
    alphas: tuple
    betas: tuple
    lam: int | None = None
    source_class: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        object.__setattr__(self, "betas", tuple(int(b) for b in self.betas))
        if not self.k >= self.l >= 2:
            raise ValueError(f"need k >= l >= 2, got k={self.k}, l={self.l}")
        if len(self.alphas) != self.k or len(self.betas) != self.l:
            raise ValueError("exponent lists do not match (k, l)")
        for e in self.alphas + self.betas:
            if not 1 <= e <= self.n:
                raise ValueError(f"exponent {e} outside [1, {self.n}]")

    @property
    def dimension(self) -> int:
        return self.k - 1

    @property
    def paired_exponents(self) -> tuple:
        return self.betas + self.alphas[self.l:]

    @property
    def complete_pairing(self) -> bool:
        if self.n % 2 == 0:
            return False
        seq = [e % self.n for e in self.paired_exponents]
        if any(e == 0 for e in seq):
            return False
        c = Counter(seq)
        return all(c[b] == c[self.n - b] for b in range(1, self.n))

    def with_lambda(self, lam: int) -> "HyperVariety":
        return replace(self, lam=lam)

    def equation(self) -> str:
        lhs = f"y^{self.n}"
        mono = " ".join(_power(f"x{i + 1}", a, self.n) for i, a in enumerate(self.alphas))
        facs = [_power(f"(1-x{j + 1})", b, self.n) for j, b in enumerate(self.betas[:-1])]
        tail = "-".join(f"x{i + 1}" for i in range(self.l - 1, self.k))
        facs.append(_power(f"(1-{tail})", self.betas[-1], self.n))
        cons = "λ*" + "*".join(f"x{i + 1}" for i in range(self.l)) + " = 1"
        return f"{lhs} = {mono} {' '.join(facs)}; {cons}"

    def hypersurface(self) -> "HyperSurface | None":
        """Eliminate one constrained variable, or None if none is eliminable.

        Preference: x_l when the tail is the single variable x_l, then
        x_{l-1}, then the first eliminable x_j.
        """
        n, l, k = self.n, self.l, self.k
        a, b = self.alphas, self.betas
        if k == l and (a[l - 1] + b[l - 1]) % n == 0:
            keep = list(range(l - 1))
            return HyperSurface(
                n=n, lam_vars=l - 1,
                x_exps=tuple(a[i] for i in keep),
                one_minus_exps=tuple(b[i] for i in keep[:-1]),
                tail_exp=b[l - 2], lam_exp=b[l - 1], lam=self.lam,
            )
        order = [l - 2] + [j for j in range(l - 1) if j != l - 2]
        for j in order:
            if (a[j] + b[j]) % n:
                continue
            singles = [i for i in range(l - 1) if i != j]
            keep = singles + list(range(l - 1, k))
            return HyperSurface(
                n=n, lam_vars=l - 1,
                x_exps=tuple(a[i] for i in keep),
                one_minus_exps=tuple(b[i] for i in singles),
                tail_exp=b[l - 1], lam_exp=b[j], lam=self.lam,
            )
        return None


@dataclass(frozen=True)
class HyperSurface:
    n: int
    lam_vars: int
    x_exps: tuple
    one_minus_exps: tuple
    tail_exp: int
    lam_exp: int
    lam: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "x_exps", tuple(int(a) for a in self.x_exps))
        object.__setattr__(self, "one_minus_exps", tuple(int(b) for b in self.one_minus_exps))
        if len(self.one_minus_exps) != self.lam_vars - 1:
            raise ValueError("need exactly lam_vars - 1 single (1 - x_j) factors")
        if not 1 <= self.lam_vars <= len(self.x_exps):
            raise ValueError("lam_vars out of range")

    @property
    def nvars(self) -> int:
        return len(self.x_exps)

    def shape(self) -> tuple:
        return (self.n, self.lam_vars, self.x_exps, self.one_minus_exps, self.tail_exp, self.lam_exp)

    def with_lambda(self, lam: int) -> "HyperSurface":
        return replace(self, lam=lam)

    def equation(self, lam_symbol: str = "λ") -> str:
        one = self.nvars == 1
        name = (lambda i: "x") if one else (lambda i: f"x{i + 1}")
        parts = [_power(name(i), a, self.n) for i, a in enumerate(self.x_exps)]
        parts += [_power(f"(1-{name(j)})", b, self.n) for j, b in enumerate(self.one_minus_exps)]
        tail = "-".join(name(i) for i in range(self.lam_vars - 1, self.nvars))
        parts.append(_power(f"(1-{tail})", self.tail_exp, self.n))
        lam_mono = "".join(name(i) for i in range(self.lam_vars))
        parts.append(_power(f"(1-{lam_symbol}{lam_mono})", self.lam_exp, self.n))
        return f"y^{self.n} = " + "".join(parts)


def _power(base: str, e: int, n: int) -> str:
    e = lift(e, n)
    return base if e == 1 else f"{base}^{e}"

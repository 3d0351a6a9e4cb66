"""Truncated zeta series Z(t) = exp(sum_r N_r t^r / r) in exact arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonIntegral


@dataclass(frozen=True)
class ZetaSeries:
    q: int
    counts: tuple
    coeffs: tuple          # Fractions, coeffs[0] = 1, length len(counts) + 1

    @property
    def order(self) -> int:
        return len(self.counts)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral:
            raise NonIntegral(f"non-integral coefficient in {self.coeffs}")
        return [int(c) for c in self.coeffs]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "counts": list(self.counts),
            "coeffs": [str(c) for c in self.coeffs],
            "integral": self.is_integral,
        }


def exp_series(a: Sequence[Fraction], order: int) -> list[Fraction]:
    """exp(L) for L = sum_{r>=1} a[r-1] t^r, truncated after t^order.

    Uses Z' = L' Z, i.e. k Z_k = sum_{j=1}^k j a_j Z_{k-j}.
    """
    Z = [Fraction(1)]
    for k in range(1, order + 1):
        acc = sum((j * Fraction(a[j - 1]) * Z[k - j] for j in range(1, k + 1)), Fraction(0))
        Z.append(acc / k)
    return Z


def counts_from_series(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Inverse of ``zeta_from_counts``: recover N_r from t Z'/Z."""
    Z = [Fraction(c) for c in coeffs]
    if Z[0] != 1:
        raise ValueError("series must start with 1")
    N: list[Fraction] = []
    for k in range(1, len(Z)):
        # k Z_k = sum_{j=1}^k N_j Z_{k-j}
        acc = k * Z[k] - sum((N[j - 1] * Z[k - j] for j in range(1, k)), Fraction(0))
        N.append(acc)
    return N


def zeta_from_counts(q: int, counts: Sequence[int]) -> ZetaSeries:
    counts = tuple(int(c) for c in counts)
    if not counts:
        raise ValueError("need at least one count")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be nonnegative")
    coeffs = exp_series([Fraction(c, r) for r, c in enumerate(counts, start=1)], len(counts))
    return ZetaSeries(q, counts, tuple(coeffs))


def mul_poly_trunc(series: Sequence[Fraction], poly: Sequence[int], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(series[: order + 1]):
        if a:
            for j, b in enumerate(poly):
                if i + j <= order:
                    out[i + j] += a * b
    return out


def trivial_factor(q: int, n: int) -> list[int]:
    """Coefficients of prod_{i=0}^{n-2} (1 - q^i t)."""
    poly = [1]
    for i in range(n - 1):
        nxt = [0] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j] += c
            nxt[j + 1] -= c * q ** i
        poly = nxt
    return poly


def strip_trivial(zs: ZetaSeries, n: int) -> ZetaSeries:
    """Multiply by prod (1 - q^i t), i = 0..n-2; counts are adjusted to match."""
    coeffs = mul_poly_trunc(zs.coeffs, trivial_factor(zs.q, n), zs.order)
    counts = tuple(c - sum(zs.q ** (i * r) for i in range(n - 1))
                   for r, c in enumerate(zs.counts, start=1))
    return ZetaSeries(zs.q, counts, tuple(coeffs))


def restore_trivial(zs: ZetaSeries, n: int) -> ZetaSeries:
    """Inverse of ``strip_trivial`` on truncations."""
    inv = exp_series(
        [Fraction(sum(zs.q ** (i * r) for i in range(n - 1)), r) for r in range(1, zs.order + 1)],
        zs.order,
    )
    coeffs = mul_poly_trunc(zs.coeffs, [int(c) for c in inv], zs.order)
    counts = tuple(c + sum(zs.q ** (i * r) for i in range(n - 1))
                   for r, c in enumerate(zs.counts, start=1))
    return ZetaSeries(zs.q, counts, tuple(coeffs))


def r_degree(n: int) -> int:
    """Degree ((n-1)^n + (-1)^n (n-1))/n - (n-1) of the hypergeometric factor."""
    if n < 3:
        raise ValueError("n must be at least 3")
    num = (n - 1) ** n + (-1) ** n * (n - 1)
    if num % n:
        raise NonIntegral(f"({num})/{n} is not an integer")
    return num // n - (n - 1)

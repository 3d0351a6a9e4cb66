"""Published one-equation forms for n = 5 and n = 7, with their multiplicities.

Each row names a class, the coefficient gamma/K with which its N_lam enters
the count, and the printed equation.  Two n = 7 rows do not have the point
count of their class as printed; ``corrected`` holds the nearest equation
(fewest changed exponents) that does, and ``printed_ok`` is False for them.
"""
from __future__ import annotations

from dataclasses import dataclass

from .varieties import HyperSurface


@dataclass(frozen=True)
class ReferenceRow:
    label: str
    n: int
    rep: tuple
    weight: int
    surface: HyperSurface
    printed_ok: bool = True
    corrected: HyperSurface | None = None

    @property
    def checked_surface(self) -> HyperSurface:
        return self.surface if self.printed_ok else self.corrected


def _s(n, lam_vars, x, om, tail, lam_exp):
    return HyperSurface(n=n, lam_vars=lam_vars, x_exps=x, one_minus_exps=om,
                        tail_exp=tail, lam_exp=lam_exp)


REFERENCE = {
    5: [
        ReferenceRow("A", 5, (0, 0, 0, 1, 4), 10, _s(5, 1, (2,), (), 3, 2)),
        ReferenceRow("B", 5, (0, 0, 1, 1, 3), 15, _s(5, 1, (2,), (), 4, 1)),
    ],
    7: [
        ReferenceRow("c1", 7, (0, 0, 0, 1, 2, 5, 6), 420, _s(7, 1, (3,), (), 4, 3)),
        ReferenceRow("c2", 7, (0, 0, 1, 1, 3, 4, 5), 630, _s(7, 1, (2,), (), 6, 1)),
        ReferenceRow("c3", 7, (0, 0, 1, 1, 2, 4, 6), 630, _s(7, 1, (3,), (), 5, 2)),
        ReferenceRow("t1", 7, (0, 0, 0, 0, 1, 2, 4), 70, _s(7, 2, (3, 5, 3), (4,), 6, 1)),
        ReferenceRow("t2", 7, (0, 0, 0, 1, 1, 2, 3), 420, _s(7, 2, (4, 5, 4), (3,), 6, 1)),
        ReferenceRow("t3", 7, (0, 0, 1, 1, 3, 3, 6), 210, _s(7, 2, (2, 4, 4), (6,), 5, 2),
                     printed_ok=False, corrected=_s(7, 2, (2, 4, 1), (6,), 5, 2)),
        ReferenceRow("t'1", 7, (0, 0, 0, 0, 0, 1, 6), 21, _s(7, 3, (2, 5, 3), (5, 2), 4, 3)),
        ReferenceRow("t'2", 7, (0, 0, 0, 0, 1, 1, 5), 105, _s(7, 3, (3, 3, 2), (4, 4), 6, 1),
                     printed_ok=False, corrected=_s(7, 3, (3, 4, 2), (4, 3), 6, 1)),
        ReferenceRow("t'3", 7, (0, 0, 0, 1, 1, 1, 4), 70, _s(7, 3, (3, 5, 2), (4, 3), 6, 1)),
        ReferenceRow("t'4", 7, (0, 0, 0, 1, 1, 6, 6), 105, _s(7, 3, (3, 5, 2), (4, 3), 4, 3)),
    ],
}

# (rep, gamma, K, m, m', d) of the ordinary classes, in printed order
CLASS_TABLE = {
    5: [
        ((0, 0, 0, 1, 4), 20, 2, 2, 0, 1),
        ((0, 0, 1, 1, 3), 30, 2, 2, 0, 1),
    ],
    7: [
        ((0, 0, 0, 1, 2, 5, 6), 840, 2, 2, 0, 1),
        ((0, 0, 1, 1, 3, 4, 5), 1260, 2, 2, 0, 1),
        ((0, 0, 1, 1, 2, 4, 6), 1260, 2, 2, 0, 1),
        ((0, 0, 0, 0, 1, 2, 4), 210, 3, 3, 0, 3),
        ((0, 0, 0, 1, 1, 2, 3), 420, 1, 3, 0, 3),
        ((0, 0, 1, 1, 3, 3, 6), 630, 3, 3, 0, 3),
        ((0, 0, 0, 0, 0, 1, 6), 42, 2, 4, 2, 3),
        ((0, 0, 0, 0, 1, 1, 5), 105, 1, 4, 2, 3),
        ((0, 0, 0, 1, 1, 1, 4), 140, 2, 4, 2, 3),
        ((0, 0, 0, 1, 1, 6, 6), 210, 2, 4, 2, 3),
    ],
}

import pytest

from dworkzeta.counting import count_hypersurface
from dworkzeta.ffield import build_field
from dworkzeta.formulas import lambda_of_psi
from dworkzeta.orbits import canonical, enumerate_classes
from dworkzeta.reference import REFERENCE
from dworkzeta.varieties import HyperSurface, HyperVariety, lift


def test_lift():
    assert [lift(e, 5) for e in (-5, -1, 0, 1, 5, 6)] == [5, 4, 5, 1, 5, 1]


def test_validation():
    with pytest.raises(ValueError):
        HyperVariety(5, 3, 2, (1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        HyperVariety(5, 2, 2, (0, 2), (1, 2))
    with pytest.raises(ValueError):
        HyperVariety(5, 2, 2, (1, 2, 3), (1, 2))
    with pytest.raises(ValueError):
        HyperSurface(5, 2, (1, 2), (), 3, 2)


def test_complete_pairing_flag():
    assert HyperVariety(5, 2, 2, (2, 3), (3, 2)).complete_pairing
    assert not HyperVariety(5, 2, 2, (2, 3), (3, 3)).complete_pairing
    assert not HyperVariety(5, 2, 2, (2, 3), (5, 5)).complete_pairing


def test_system_equation_text():
    H = HyperVariety(5, 2, 2, (2, 3), (3, 2))
    assert H.equation() == "y^5 = x1^2 x2^3 (1-x1)^3 (1-x2)^2; λ*x1*x2 = 1"
    assert H.dimension == 1


def test_no_eliminable_variable():
    assert HyperVariety(5, 2, 3, (2, 3, 4), (1, 3)).hypersurface() is None


def test_published_display_equations():
    # the rows whose printed equation is reproduced symbol for symbol
    want = {
        "A": "y^5 = x^2(1-x)^3(1-λx)^2",
        "B": "y^5 = x^2(1-x)^4(1-λx)",
        "c1": "y^7 = x^3(1-x)^4(1-λx)^3",
        "c2": "y^7 = x^2(1-x)^6(1-λx)",
        "c3": "y^7 = x^3(1-x)^5(1-λx)^2",
        "t'1": "y^7 = x1^2x2^5x3^3(1-x1)^5(1-x2)^2(1-x3)^4(1-λx1x2x3)^3",
    }
    rows = {r.label: r for n in (5, 7) for r in REFERENCE[n]}
    for label, eq in want.items():
        row = rows[label]
        assert row.surface.equation() == eq
        rec = {r.rep: r for r in enumerate_classes(row.n)}[canonical(row.rep, row.n)]
        assert rec.hyper.hypersurface().equation() == eq


def _dev(F, S, lam):
    S = S.with_lambda(lam)
    return count_hypersurface(F, S).affine - F.q ** S.nvars


@pytest.mark.parametrize("psi", [2, 6, 7, 8])
def test_n5_rows_count_equal_to_class_display(F11, psi):
    lam = lambda_of_psi(F11, 5, psi)
    recs = {r.rep: r for r in enumerate_classes(5)}
    for row in REFERENCE[5]:
        ours = recs[canonical(row.rep, 5)].hyper.hypersurface()
        assert _dev(F11, row.surface, lam) == _dev(F11, ours, lam)


@pytest.mark.slow
def test_n7_rows_count_equal_to_class_display():
    F = build_field(29)
    lam = lambda_of_psi(F, 7, 3)
    recs = {r.rep: r for r in enumerate_classes(7)}
    for row in REFERENCE[7]:
        ours = recs[canonical(row.rep, 7)].hyper.hypersurface()
        assert _dev(F, row.checked_surface, lam) == _dev(F, ours, lam), row.label
        if not row.printed_ok:
            # the printed form has a different count; see the decision log
            assert _dev(F, row.surface, lam) != _dev(F, ours, lam), row.label


def test_reference_weights():
    assert [r.weight for r in REFERENCE[5]] == [10, 15]
    assert [r.weight for r in REFERENCE[7]] == [420, 630, 630, 70, 420, 210, 21, 105, 70, 105]
    for n in (5, 7):
        recs = {r.rep: r for r in enumerate_classes(n)}
        assert all(recs[canonical(r.rep, n)].weight == r.weight for r in REFERENCE[n])

import pytest

from derivedhecke import finitegroup as fg
from derivedhecke.heckecomb import coset_count
from derivedhecke.rootdata import build_preset


def test_subgroup_orders_central():
    assert len(fg.enumerate_subgroup(fg.CongSubgroup(2, 3, 1, 1, N=2))) == 486
    assert len(fg.enumerate_subgroup(fg.CongSubgroup(2, 3, 1, 1, N=1))) == 6
    assert len(fg.enumerate_subgroup(fg.CongSubgroup(2, 2, 1, 1, N=1))) == 2


def test_subgroup_orders_iwahori():
    assert len(fg.enumerate_subgroup(fg.CongSubgroup(2, 3, 1, 1, N=2, kind="iwahori"))) == 972
    assert len(fg.enumerate_subgroup(fg.CongSubgroup(2, 3, 1, 1, N=1, kind="iwahori"))) == 12
    assert len(fg.enumerate_subgroup(fg.CongSubgroup(2, 2, 1, 1, N=1, kind="iwahori"))) == 2


@pytest.mark.parametrize("kind", ["central", "iwahori"])
@pytest.mark.parametrize("p,N", [(2, 1), (2, 2), (3, 1)])
def test_enumeration_matches_filter(kind, p, N):
    spec = fg.CongSubgroup(2, p, 1, 1, N=N, kind=kind)
    assert sorted(fg.enumerate_flat(spec)) == sorted(fg.enumerate_by_filter(spec))
    assert len(fg.enumerate_flat(spec)) == spec.order()


@pytest.mark.parametrize("spec", [
    fg.CongSubgroup(2, 3, 1, 2),
    fg.CongSubgroup(2, 2, 1, 2, kind="iwahori"),
    fg.CongSubgroup(3, 2, 1, 1),
])
def test_closure(spec):
    assert fg.closure_report(spec).passed


def test_invalid_spec():
    with pytest.raises(ValueError):
        fg.CongSubgroup(2, 3, 2, 1)
    with pytest.raises(ValueError):
        fg.CongSubgroup(2, 4, 1, 1)


def test_size_guard():
    with pytest.raises(fg.SizeGuardError):
        fg.enumerate_flat(fg.CongSubgroup(3, 3, 1, 2), guard=1000)


def test_modmatrix_inverse():
    g = fg.ModMatrix.from_rows([[1, 3], [0, 4]], 9)
    assert (g * g.inverse()).rows() == [[1, 0], [0, 1]]


def test_required_level():
    spec = fg.CongSubgroup(2, 3, 1, 1)
    assert fg.required_level(spec, (1, 0)) >= 1
    assert fg.required_level(spec, (2, 0)) >= fg.required_level(spec, (1, 0))


@pytest.mark.parametrize("kind", ["central", "iwahori"])
@pytest.mark.parametrize("p,lam,expected", [(3, (1, 0), 3), (3, (1, 1), 1), (2, (2, 0), 4)])
def test_double_coset_examples(kind, p, lam, expected):
    assert fg.double_coset_count(fg.CongSubgroup(2, p, 1, 1, kind=kind), lam) == expected


def test_double_coset_gl3():
    spec = fg.CongSubgroup(3, 2, 1, 1)
    assert fg.double_coset_count(spec, (1, 0, 0)) == coset_count(build_preset("GL3"), (1, 0, 0), 2)


@pytest.mark.parametrize("p,lam", [(3, (1, 0)), (2, (2, 0)), (3, (1, 1))])
def test_rep_formula_examples(p, lam):
    rep = fg.verify_rep_formula(fg.CongSubgroup(2, p, 1, 1), lam)
    assert rep.passed


def test_product_set_small():
    spec = fg.CongSubgroup(2, 3, 1, 1)
    assert fg.product_set_check(spec, (1, 0), (1, 0)).passed
    assert fg.product_set_check(spec, (1, 1), (1, 0)).passed


def test_product_set_rejects_non_dominant():
    spec = fg.CongSubgroup(2, 3, 1, 1)
    assert not fg.product_set_check(spec, (1, 0), (0, 1)).passed


@pytest.mark.parametrize("p", [2, 3])
def test_up_factorization(p):
    assert fg.verify_up_factorization(2, 1, 2, (1, 0), p).passed


def test_up_factorization_central_coweight_differs():
    # p I(1,2) is a single coset of I(1,2), while p I(1,1) is strictly larger
    rep = fg.verify_up_factorization(2, 1, 2, (1, 1), 3)
    assert not rep.passed and rep.witness is not None


def test_up_factorization_needs_room():
    with pytest.raises(ValueError):
        fg.verify_up_factorization(2, 1, 1, (1, 0), 3)


def test_hom_group_examples():
    assert len(fg.hom_group(fg.DiamondQuotient(2, 3, 2), 1)) == 9
    assert len(fg.hom_group(fg.DiamondQuotient(2, 3, 1), 1)) == 1
    assert len(fg.hom_group(fg.DiamondQuotient(3, 2, 2), 1)) == 8


def test_hom_group_is_homomorphic():
    q = fg.DiamondQuotient(2, 3, 2)
    elems = q.elements()
    for h in fg.hom_group(q, 1):
        for a in elems:
            for b in elems:
                ab = tuple(x * y % 9 for x, y in zip(a, b))
                assert h(ab) == (h(a) + h(b)) % 3


def test_diamond_examples():
    spec = fg.CongSubgroup(2, 3, 1, 2)
    q = fg.DiamondQuotient(2, 3, 2)
    trivial = [h for h in fg.hom_group(q, 1) if h.is_trivial()][0]
    assert fg.diamond_conjugation_check(spec, (1, 0), fg.InflatedCharacter(trivial)).passed
    rep = fg.diamond_conjugation_check(spec, (1, 0), fg.UnipotentCoordinate(3))
    assert not rep.passed and rep.witness is not None

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivedhecke.linalg import QQ, PrimeField
from derivedhecke.localalg import koszul
from derivedhecke.localalg.exterior import apply_power, exterior_power, subsets, wedge
from derivedhecke.localalg.families import family_size, orbit_representatives
from derivedhecke.localalg.poly import PolyRing

seq = koszul.LocalSequence.from_strings


# ---------------------------------------------------------------- polynomials

def test_parse_and_arith():
    R = PolyRing(2)
    f = R.parse("(X1 + 1/2*X2)^2")
    assert f == R.var(0) ** 2 + R.var(0) * R.var(1) + R.const(Fraction(1, 4)) * R.var(1) ** 2
    assert R.parse([[2, [1, 0]], [-1, [0, 2]]]) == R.parse("2*X1 - X2^2")
    assert PolyRing(1).parse("X^2") == PolyRing(1).var(0) ** 2
    assert (f - f).is_zero()


def test_parse_errors():
    R = PolyRing(2)
    with pytest.raises(ValueError):
        R.parse("X3")
    with pytest.raises(ValueError):
        R.parse("X1 +")


def test_truncation():
    R = PolyRing(1, truncation=3)
    f = R.var(0) + R.var(0) ** 4
    assert f.truncate() == R.var(0)


@pytest.mark.parametrize("text,expected", [
    ("X1 + X2*X3", [1, 0, 0]), ("X2^2", [0, 0, 0]), ("3*X1 - X3 + X1^2", [3, 0, -1]),
])
def test_linear_part(text, expected):
    assert koszul.linear_part(PolyRing(3).parse(text)) == expected


def test_linear_part_rejects_units():
    with pytest.raises(ValueError):
        koszul.LocalSequence(PolyRing(1), ["1 + X"])


# ---------------------------------------------------------------- regular systems

def test_regular_system_examples():
    assert koszul.is_part_of_regular_system(seq(3, ["X1 + X2*X3", "X2 + X1^2"]))
    assert not koszul.is_part_of_regular_system(seq(1, ["X^2"]))
    assert not koszul.is_part_of_regular_system(seq(2, ["X1", "X1 + X2^2"]))
    with pytest.raises(ValueError):
        koszul.is_part_of_regular_system(seq(1, ["X", "X^2"]))
    with pytest.raises(ValueError):
        koszul.is_part_of_regular_system(seq(1, []))


@pytest.mark.parametrize("r,gens,dims", [
    (3, ["X1"], [1, 1]), (3, ["X1 + X2*X3", "X2 + X1^2"], [1, 2, 1]), (1, ["X^2"], [1, 1]),
])
def test_ext_dims_examples(r, gens, dims):
    assert koszul.koszul_ext_dims(seq(r, gens)) == dims


def test_koszul_square_zero():
    s = seq(3, ["X1 + X2*X3", "X2^2 - X1*X3", "X3 + X1^2"])
    assert koszul.KoszulComplex.build(s).check_square_zero()


def test_generation_examples():
    assert koszul.generation_verdict(seq(3, ["X1"])).generated_over_bottom
    rep = koszul.generation_verdict(seq(1, ["X^2"]))
    assert not rep.generated_over_bottom and rep.failing_degree == 1
    assert koszul.generation_verdict(seq(2, ["X1 + X2", "X1 - X2"])).generated_over_bottom
    over_f2 = seq(2, ["X1 + X2", "X1 - X2"], PrimeField(2))
    assert not koszul.generation_verdict(over_f2).generated_over_bottom
    assert "exterior power" in koszul.generation_verdict(seq(1, ["X"])).note


def test_generation_more_gens_than_vars():
    rep = koszul.generation_verdict(seq(1, ["X", "X^2"]))
    assert not rep.generated_over_bottom and rep.failing_degree == 1
    assert rep.dims == [1, 2, 1]


# ---------------------------------------------------------------- Yoneda action

def test_yoneda_examples():
    assert koszul.yoneda_action(seq(1, ["X"]), [1], {(): 1}) == {(0,): 1}
    assert koszul.yoneda_action(seq(1, ["X^2"]), [1], {(): 1}) == {}
    assert koszul.yoneda_action(seq(3, ["X1 + X2*X3", "X2 + X1^2"]), [0, 0, 1], {(): 1}) == {}


def test_division_is_exact():
    R = PolyRing(3)
    f = R.parse("X1*X2 + 3*X3^2 - X2")
    rng = random.Random(0)
    for a in (koszul.canonical_division(f), koszul.random_division(f, rng)):
        total = R.zero()
        for j, aj in enumerate(a):
            total = total + aj * R.var(j)
        assert total == f


def random_sequence(rng, field=QQ):
    r = rng.randint(1, 3)
    n = rng.randint(1, r)
    R = PolyRing(r, field)
    mons = [m for m in ((i, j, k) for i in range(3) for j in range(3) for k in range(3)) if 1 <= sum(m) <= 2]
    gens = []
    for _ in range(n):
        terms = [[rng.randint(-3, 3), list(rng.choice(mons)[:r]) ] for _ in range(rng.randint(1, 3))]
        terms = [t for t in terms if sum(t[1]) > 0] or [[1, [1] + [0] * (r - 1)]]
        gens.append(terms)
    return koszul.LocalSequence(R, gens)


def test_comparison_is_chain_map():
    rng = random.Random(3)
    for _ in range(30):
        s = random_sequence(rng)
        assert koszul.check_comparison_chain_map(s, koszul.comparison_matrix(s, rng=rng))


def test_exterior_functoriality():
    rng = random.Random(5)
    for _ in range(30):
        s = random_sequence(rng)
        n, r = s.n, s.r
        e1 = [rng.randint(-2, 2) for _ in range(r)]
        e2 = [rng.randint(-2, 2) for _ in range(r)]
        for k in range(n - 1):
            cls = {S: rng.randint(-2, 2) for S in subsets(n, k)}
            step = koszul.yoneda_action(s, e2, koszul.yoneda_action(s, e1, cls))
            omega = wedge({(j,): x for j, x in enumerate(e1) if x}, {(j,): x for j, x in enumerate(e2) if x}, QQ)
            assert koszul.action_of_form(s, omega, cls) == step
        for k in range(n):
            cls = {S: rng.randint(-2, 2) for S in subsets(n, k)}
            assert koszul.yoneda_action(s, e1, koszul.yoneda_action(s, e1, cls)) == {}


def test_exterior_power_is_functorial():
    A = [[1, 2, 0], [0, 1, 3]]
    B = [[2, 1], [1, 1], [0, 4]]
    AB = [[sum(A[i][k] * B[k][j] for k in range(3)) for j in range(2)] for i in range(2)]
    wA, wB, wAB = (exterior_power(M, 2, QQ) for M in (A, B, AB))
    prod_ = [[sum(wA[i][k] * wB[k][j] for k in range(len(wB))) for j in range(len(wB[0]))] for i in range(len(wA))]
    assert prod_ == wAB
    assert apply_power(A, 1, {(0,): 1}, QQ) == {(0,): 1}


# ---------------------------------------------------------------- probe and degree table

def test_probe_examples():
    rep = koszul.graded_regularity_probe(seq(2, ["X1", "X2"]), 3)
    assert rep.details["status"] == "certified"
    rep = koszul.graded_regularity_probe(seq(2, ["X1", "X1*X2"]), 4)
    assert rep.details["status"] == "witness" and rep.witness is not None
    rep = koszul.graded_regularity_probe(seq(2, ["X1^2", "X2^3"]), 6)
    assert rep.details["status"] == "certified" and rep.details["route"] == "monomial"
    with pytest.raises(ValueError):
        koszul.graded_regularity_probe(seq(2, ["X1^2", "X2^3"]), 2)


def test_probe_no_obstruction():
    rep = koszul.graded_regularity_probe(seq(2, ["X1^2 + X2^2", "X1*X2"]), 3)
    assert rep.details["status"] == "no obstruction up to bound"
    assert "limitation" in rep.details


def test_degree_table_examples():
    assert koszul.cohomology_degree_map(1, 1, [1, 1]).table == {1: 1, 2: 1}
    t = koszul.cohomology_degree_map(2, 3, [1, 2, 1])
    assert t.table == {3: 1, 4: 2, 5: 1} and t.pattern_ok
    t = koszul.cohomology_degree_map(1, 0, [2, 2])
    assert t.pattern_ok and t.flagged_multiplicity and t.multiplicity == 2
    with pytest.raises(ValueError):
        koszul.cohomology_degree_map(2, 0, [1, 1])


# ---------------------------------------------------------------- symmetry reduction

@pytest.mark.parametrize("r,n", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_orbits_cover_family(r, n):
    F = PrimeField(5)
    assert sum(m.orbit_size for m in orbit_representatives(F, r, n)) == family_size(F, r, n)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_predicates_invariant_under_symmetries(data):
    F = PrimeField(5)
    r = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, r))
    mons = [(i, j, k)[:r] for i in range(3) for j in range(3) for k in range(3)]
    mons = sorted({m for m in mons if 1 <= sum(m) <= 2})
    term = st.tuples(st.integers(1, 4), st.sampled_from(mons))
    gens = data.draw(st.lists(st.lists(term, max_size=2), min_size=n, max_size=n))
    ring = PolyRing(r, F)

    def verdicts(gs):
        s = koszul.LocalSequence(ring, [[[c, list(m)] for c, m in g] for g in gs])
        return koszul.generation_verdict(s).generated_over_bottom, koszul.is_part_of_regular_system(s)

    base = verdicts(gens)
    assert base[0] == base[1]
    units = data.draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    assert verdicts([[(c * u % 5, m) for c, m in g] for g, u in zip(gens, units)]) == base
    order = data.draw(st.permutations(range(n)))
    assert verdicts([gens[i] for i in order]) == base
    sigma = data.draw(st.permutations(range(r)))
    assert verdicts([[(c, tuple(m[sigma[i]] for i in range(r))) for c, m in g] for g in gens]) == base


def test_ext_dims_binomial_random():
    rng = random.Random(11)
    for _ in range(50):
        s = random_sequence(rng, PrimeField(3))
        assert koszul.koszul_ext_dims(s) == [comb(s.n, i) for i in range(s.n + 1)]

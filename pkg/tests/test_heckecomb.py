import random

import pytest

from derivedhecke.heckecomb import (
    coset_count,
    coset_count_report,
    coset_representatives,
    dominant_coweights,
    product_identity_check,
)
from derivedhecke.rootdata import build_preset, deg_coweight, is_dominant

PRESETS = ["GL2", "GL3", "SL2", "SL3", "Sp4"]


def test_count_examples():
    assert coset_count(build_preset("GL2"), (1, 0), 3) == 3
    assert coset_count(build_preset("GL2"), (1, 1), 5) == 1
    assert coset_count(build_preset("GL3"), (1, 0, 0), 2) == 4


def test_representative_examples():
    gl2 = build_preset("GL2")
    assert sorted(coset_representatives(gl2, (1, 0), 3).reps) == [(0,), (1,), (2,)]
    reps = coset_representatives(gl2, (2, 0), 2)
    assert len(reps) == 4 and sorted(reps.reps) == [(0,), (1,), (2,), (3,)]
    assert coset_representatives(gl2, (1, 1), 7).reps == [()]


def test_representative_bound():
    with pytest.raises(ValueError):
        coset_representatives(build_preset("GL3"), (3, 0, 0), 3, bound=100)


@pytest.mark.parametrize("name", PRESETS)
@pytest.mark.parametrize("p", [2, 3])
def test_reps_match_count(name, p):
    d = build_preset(name)
    for lam in dominant_coweights(d, 6 if d.rank < 3 else 4):
        assert len(coset_representatives(d, lam, p)) == coset_count(d, lam, p)


def test_oracle_hook():
    d = build_preset("GL2")
    assert coset_count_report(d, (2, 0), 3, lambda lam: 9).match
    assert not coset_count_report(d, (2, 0), 3, lambda lam: 8).match


def test_product_identity_examples():
    gl2, gl3 = build_preset("GL2"), build_preset("GL3")
    # (0,-1) pairs to +1 with the positive root, so the non-dominant control is (0,1)
    assert product_identity_check(gl2, (1, 0), (0, -1), 3).passed
    assert not product_identity_check(gl2, (1, 0), (0, 1), 3).passed
    rep = product_identity_check(gl2, (1, 0), (1, 0), 3)
    assert rep.passed and rep.details["counts"][2] == 9
    # deg (1,1,0) is 2 (pairings 0, 1, 1), so the product count is 4 * 4
    rep = product_identity_check(gl3, (1, 0, 0), (1, 1, 0), 2)
    assert rep.passed and rep.details["counts"] == [4, 4, 16]


@pytest.mark.parametrize("name", PRESETS)
def test_product_identity_random_pairs(name):
    d = build_preset(name)
    rng = random.Random(1)
    box = [v for v in dominant_coweights(d, 4)]
    for _ in range(100):
        a, b = rng.choice(box), rng.choice(box)
        assert product_identity_check(d, a, b, rng.choice([2, 3])).passed


def test_grid_is_dominant():
    for name in PRESETS:
        d = build_preset(name)
        for lam in dominant_coweights(d, 3):
            assert is_dominant(d, lam) and deg_coweight(d, lam) <= 3

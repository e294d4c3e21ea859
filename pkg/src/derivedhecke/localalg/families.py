"""Exhaustive small families of sequences, reduced to symmetry orbits.

Both the generation verdict and the regular-system predicate only see the
ideal-theoretic data up to three symmetries: rescaling a generator by a unit,
reordering generators, and permuting variables. The enumerator walks one
representative per orbit and reports the orbit size, so callers can confirm
that the representatives account for every ordered sequence of the family.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial

from ..linalg import PrimeField
from .koszul import LocalSequence
from .poly import PolyRing


def monomials(num_vars: int, max_deg: int):
    """Exponent tuples of total degree 1..max_deg (no constants: generators lie in m)."""
    out = []
    for d in range(1, max_deg + 1):
        for c in combinations_with_replacement(range(num_vars), d):
            e = [0] * num_vars
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return sorted(out)


def all_polys(field: PrimeField, num_vars: int, max_deg: int, max_terms: int):
    """Every polynomial with at most ``max_terms`` nonzero terms, as sorted term tuples."""
    mons = monomials(num_vars, max_deg)
    units = range(1, field.p)
    out = [()]
    for k in range(1, max_terms + 1):
        for ms in combinations(mons, k):
            stack = [()]
            for m in ms:
                stack = [t + ((m, u),) for t in stack for u in units]
            out.extend(stack)
    return out


def normalize(field: PrimeField, terms):
    """Scale so the first term has coefficient 1."""
    terms = tuple(sorted(terms))
    if not terms:
        return terms
    inv = field.inv(terms[0][1])
    return tuple((m, c * inv % field.p) for m, c in terms)


@dataclass
class FamilyMember:
    num_vars: int
    gens: tuple
    orbit_size: int

    def sequence(self, field) -> LocalSequence:
        ring = PolyRing(self.num_vars, field)
        return LocalSequence(ring, [[[c, list(m)] for m, c in g] for g in self.gens])


def orbit_representatives(field: PrimeField, num_vars: int, num_gens: int, max_deg: int = 2,
                          max_terms: int = 2):
    """Yield one member per orbit of ordered ``num_gens``-tuples under the three symmetries."""
    polys = sorted({normalize(field, t) for t in all_polys(field, num_vars, max_deg, max_terms)})
    index = {p: i for i, p in enumerate(polys)}
    scalings = [1 if not p else field.p - 1 for p in polys]
    perm_maps = []
    for sigma in permutations(range(num_vars)):
        images = []
        for p in polys:
            q = [(tuple(m[sigma[i]] for i in range(num_vars)), c) for m, c in p]
            images.append(index[normalize(field, q)])
        perm_maps.append(images)
    for combo in combinations_with_replacement(range(len(polys)), num_gens):
        images = {tuple(sorted(pm[i] for i in combo)) for pm in perm_maps}
        if min(images) != combo:
            continue
        size = 0
        for img in images:
            arrangements = factorial(num_gens)
            for mult in Counter(img).values():
                arrangements //= factorial(mult)
            scale = 1
            for i in img:
                scale *= scalings[i]
            size += arrangements * scale
        yield FamilyMember(num_vars, tuple(polys[i] for i in combo), size)


def family_size(field: PrimeField, num_vars: int, num_gens: int, max_deg: int = 2, max_terms: int = 2):
    return len(all_polys(field, num_vars, max_deg, max_terms)) ** num_gens

"""Double coset combinatorics for the Hecke operators attached to dominant coweights.

For dominant ``lam`` the double coset ``C lam(p) C`` splits into
``p^{deg lam}`` left cosets, with representatives

    X(lam) = prod over positive alpha of U_alpha(Z_p) / U_alpha(p^{<lam, alpha>} Z_p).

Representatives are kept as abstract residue tuples indexed by root
"slots"; the matrix realization lives in :mod:`derivedhecke.finitegroup`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .reports import Report
from .rootdata import RootDatum, deg_coweight, is_dominant, pairing

REP_BOUND = 10**6


def _check_prime(p: int):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def coset_count(d: RootDatum, lam, p: int) -> int:
    _check_prime(p)
    return p ** deg_coweight(d, lam)


def rep_slots(d: RootDatum, lam):
    """``(root index, copy, exponent)`` for each positive root with ``<lam, alpha> > 0``.

    Ordered by nondecreasing height, then by root, then by copy.
    """
    slots = []
    for i in d.positive_indices:
        e = pairing(lam, d.roots[i])
        if e > 0:
            slots.extend((i, k, e) for k in range(d.dims[i]))
    return slots


@dataclass
class CosetRepSet:
    lam: tuple
    prime: int
    slots: list
    reps: list

    def __len__(self):
        return len(self.reps)

    def to_dict(self):
        return {
            "lambda": list(self.lam),
            "prime": self.prime,
            "slots": [list(s) for s in self.slots],
            "reps": [list(r) for r in self.reps],
        }


def coset_representatives(d: RootDatum, lam, p: int, bound: int = REP_BOUND) -> CosetRepSet:
    """All residue tuples in lexicographic order."""
    count = coset_count(d, lam, p)
    if count > bound:
        raise ValueError(f"{count} representatives exceed the bound {bound}")
    slots = rep_slots(d, lam)
    reps = list(product(*[range(p**e) for _, _, e in slots]))
    assert len(reps) == count
    return CosetRepSet(tuple(lam), p, slots, reps)


@dataclass
class CosetCountReport:
    lam: tuple
    prime: int
    predicted: int
    oracle_count: int | None = None

    @property
    def match(self):
        return self.oracle_count is None or self.oracle_count == self.predicted

    def to_dict(self):
        return {
            "lambda": list(self.lam),
            "prime": self.prime,
            "predicted": self.predicted,
            "oracle_count": self.oracle_count,
            "match": self.match,
        }


def coset_count_report(d: RootDatum, lam, p: int, oracle=None) -> CosetCountReport:
    """``oracle(lam)`` may supply an independent count (e.g. finite enumeration)."""
    rep = CosetCountReport(tuple(lam), p, coset_count(d, lam, p))
    if oracle is not None:
        rep.oracle_count = oracle(tuple(lam))
    return rep


def product_identity_check(d: RootDatum, lam, lam2, p: int, set_check=None) -> Report:
    """Check additivity of deg and multiplicativity of coset counts.

    ``set_check(lam, lam2)`` may run a set-level identity and return a Report.
    """
    inputs = {"lambda": list(lam), "lambda_prime": list(lam2), "prime": p}
    for name, v in (("lambda", lam), ("lambda_prime", lam2)):
        if not is_dominant(d, v):
            return Report("product_identity", False, {**inputs, "reason": f"{name} not dominant"}, list(v))
    total = tuple(a + b for a, b in zip(lam, lam2))
    deg1, deg2, deg12 = (deg_coweight(d, v) for v in (lam, lam2, total))
    c1, c2, c12 = (coset_count(d, v, p) for v in (lam, lam2, total))
    details = {**inputs, "deg": [deg1, deg2, deg12], "counts": [c1, c2, c12]}
    ok = deg12 == deg1 + deg2 and c12 == c1 * c2
    if set_check is not None:
        sub = set_check(tuple(lam), tuple(lam2))
        details["set_check"] = sub.to_dict()
        ok = ok and sub.passed
    return Report("product_identity", ok, details)


def dominant_coweights(d: RootDatum, max_deg: int, normalize_last: bool = True, bound: int = 6):
    """Dominant coweights with ``deg <= max_deg`` for GL-type data.

    With ``normalize_last`` the last coordinate is 0 (central twists change
    nothing), plus (1, ..., 1) when it is central.
    """
    n = d.rank
    out = set()
    rng = range(0, bound + 1) if normalize_last else range(-bound, bound + 1)
    for head in product(rng, repeat=n - 1 if normalize_last else n):
        lam = tuple(head) + ((0,) if normalize_last else ())
        if is_dominant(d, lam) and deg_coweight(d, lam) <= max_deg:
            out.add(lam)
    if normalize_last and deg_coweight(d, (1,) * n) == 0:
        out.add((1,) * n)
    return sorted(out, key=lambda v: (deg_coweight(d, v), tuple(-x for x in v)))

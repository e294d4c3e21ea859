"""Split root data and their combinatorial invariants.

Lattice vectors are plain integer tuples. Characters (elements of X^*)
and cocharacters (elements of X_*) live in dual bases, so the pairing is
the dot product.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd

from .linalg import QQ, row_reduce
from .reports import Report

WEYL_BOUND = 10_000

Weight = tuple
Coweight = tuple


def pairing(lam, mu) -> int:
    """Perfect pairing X_* x X^* -> Z."""
    if len(lam) != len(mu):
        raise ValueError(f"rank mismatch: {len(lam)} vs {len(mu)}")
    return sum(a * b for a, b in zip(lam, mu))


def _solve_in_simple(simple_roots, vec):
    """Coordinates of ``vec`` in the span of ``simple_roots`` (rationals), or None."""
    k = len(simple_roots)
    n = len(vec)
    rows = [[simple_roots[j][i] for j in range(k)] + [vec[i]] for i in range(n)]
    R, pivots = row_reduce(rows, QQ, k + 1)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for row, pc in zip(R, pivots):
        coeffs[pc] = row[k]
    return coeffs


@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: tuple
    coroots: tuple
    simple: tuple
    dims: tuple = None
    torus_rank: int = None
    name: str = "custom"

    def __post_init__(self):
        roots = tuple(tuple(int(x) for x in a) for a in self.roots)
        coroots = tuple(tuple(int(x) for x in a) for a in self.coroots)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "coroots", coroots)
        object.__setattr__(self, "simple", tuple(self.simple))
        dims = tuple(self.dims) if self.dims is not None else (1,) * len(roots)
        object.__setattr__(self, "dims", dims)
        if self.torus_rank is None:
            object.__setattr__(self, "torus_rank", self.rank)
        self._validate()

    def _validate(self):
        if self.rank < 1:
            raise ValueError("lattice rank must be positive")
        if len(self.roots) != len(self.coroots) or len(self.dims) != len(self.roots):
            raise ValueError("roots, coroots and dims must have equal length")
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("duplicate roots")
        for a, c in zip(self.roots, self.coroots):
            if len(a) != self.rank or len(c) != self.rank:
                raise ValueError("vector of wrong length")
            if pairing(c, a) != 2:
                raise ValueError(f"<coroot, root> != 2 for root {a}")
        index = {a: i for i, a in enumerate(self.roots)}
        for i, a in enumerate(self.roots):
            neg = tuple(-x for x in a)
            if neg not in index:
                raise ValueError(f"root {a} has no negative")
            j = index[neg]
            if self.coroots[j] != tuple(-x for x in self.coroots[i]):
                raise ValueError(f"coroot of -{a} is not the negative coroot")
            if self.dims[i] != self.dims[j] or self.dims[i] < 1:
                raise ValueError(f"d_alpha must be positive and match d_-alpha for {a}")
        for s in self.simple:
            a, c = self.roots[s], self.coroots[s]
            for b in self.roots:
                image = tuple(x - pairing(c, b) * y for x, y in zip(b, a))
                if image not in index:
                    raise ValueError(f"roots not closed under reflection in {a}")
        simple_roots = [self.roots[s] for s in self.simple]
        for a in self.roots:
            coeffs = _solve_in_simple(simple_roots, a)
            if coeffs is None or any(x.denominator != 1 for x in coeffs):
                raise ValueError(f"root {a} is not an integral combination of simple roots")
            if not (all(x >= 0 for x in coeffs) or all(x <= 0 for x in coeffs)):
                raise ValueError(f"root {a} has mixed-sign simple coordinates")

    @cached_property
    def _simple_coords(self):
        simple_roots = [self.roots[s] for s in self.simple]
        return tuple(tuple(int(x) for x in _solve_in_simple(simple_roots, a)) for a in self.roots)

    @cached_property
    def positive_indices(self):
        """Indices of positive roots, ordered by height then lexicographically."""
        idx = [i for i, c in enumerate(self._simple_coords) if sum(c) > 0]
        return tuple(sorted(idx, key=lambda i: (sum(self._simple_coords[i]), self.roots[i])))

    @property
    def positive_roots(self):
        return [self.roots[i] for i in self.positive_indices]

    def height(self, i: int) -> int:
        return sum(self._simple_coords[i])

    def root_index(self, alpha) -> int:
        try:
            return self.roots.index(tuple(alpha))
        except ValueError:
            raise ValueError(f"{tuple(alpha)} is not a root") from None

    def coroot(self, alpha):
        return self.coroots[self.root_index(alpha)]

    @property
    def num_positive(self) -> int:
        return len(self.positive_indices)

    @property
    def dim_lie_t(self) -> int:
        return self.torus_rank

    @property
    def dim_lie_u(self) -> int:
        return sum(self.dims[i] for i in self.positive_indices)

    @property
    def dim_lie_b(self) -> int:
        return self.dim_lie_t + self.dim_lie_u

    @property
    def dim_lie_g(self) -> int:
        return self.dim_lie_b + self.dim_lie_u

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "roots": [list(a) for a in self.roots],
            "coroots": [list(a) for a in self.coroots],
            "simple": list(self.simple),
            "dims": list(self.dims),
        }

    @classmethod
    def from_json(cls, doc: dict, name: str = "custom") -> "RootDatum":
        return cls(
            rank=doc["rank"],
            roots=doc["roots"],
            coroots=doc["coroots"],
            simple=doc["simple"],
            dims=doc.get("dims"),
            name=doc.get("name", name),
        )


def _parse_preset(name: str, n: int | None):
    m = re.fullmatch(r"\s*(GL|SL|Sp)_?(\d+)?\s*", name, flags=re.IGNORECASE)
    if not m:
        raise ValueError(f"unknown preset {name!r}")
    family = {"gl": "GL", "sl": "SL", "sp": "Sp"}[m.group(1).lower()]
    size = int(m.group(2)) if m.group(2) else n
    if size is None:
        raise ValueError(f"preset {name!r} needs a size")
    if n is not None and m.group(2) and int(m.group(2)) != n:
        raise ValueError(f"conflicting sizes in {name!r} and n={n}")
    return family, size


def build_preset(name: str, n: int | None = None) -> RootDatum:
    """Build ``GL_n``, ``SL_n`` or ``Sp_4``; accepts ``"GL3"``, ``"GL_3"`` or ``("GL", 3)``."""
    family, n = _parse_preset(name, n)
    if family in ("GL", "SL") and n < 2:
        raise ValueError(f"{family}_n needs n >= 2")
    if family == "GL":
        roots, coroots, simple = [], [], []
        for i in range(n):
            for j in range(n):
                if i != j:
                    v = [0] * n
                    v[i], v[j] = 1, -1
                    if j == i + 1:
                        simple.append(len(roots))
                    roots.append(tuple(v))
                    coroots.append(tuple(v))
        return RootDatum(n, roots, coroots, simple, name=f"GL{n}")
    if family == "SL":
        # X_* has the simple coroots as basis, X^* the fundamental weights.
        r = n - 1
        cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]
        roots, coroots, simple = [], [], []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                lo, hi, sign = (i, j, 1) if i < j else (j, i, -1)
                co = [sign if lo <= k < hi else 0 for k in range(r)]
                root = [sign * sum(cartan[k][t] for k in range(lo, hi)) for t in range(r)]
                if j == i + 1:
                    simple.append(len(roots))
                roots.append(tuple(root))
                coroots.append(tuple(co))
        return RootDatum(r, roots, coroots, simple, name=f"SL{n}")
    if n != 4:
        raise ValueError("only Sp_4 is available")
    roots = [(1, -1), (-1, 1), (0, 2), (0, -2), (1, 1), (-1, -1), (2, 0), (-2, 0)]
    coroots = [(1, -1), (-1, 1), (0, 1), (0, -1), (1, 1), (-1, -1), (1, 0), (-1, 0)]
    return RootDatum(2, roots, coroots, (0, 2), name="Sp4")


@dataclass(frozen=True)
class WeylElement:
    """``matrix`` acts on X^*; ``comatrix`` is its contragredient on X_*."""

    matrix: tuple
    comatrix: tuple
    word: tuple = ()

    def act_weight(self, mu):
        return tuple(sum(r[k] * mu[k] for k in range(len(mu))) for r in self.matrix)

    def act_coweight(self, lam):
        return tuple(sum(r[k] * lam[k] for k in range(len(lam))) for r in self.comatrix)

    @property
    def is_identity(self):
        n = len(self.matrix)
        return all(self.matrix[i][j] == (i == j) for i in range(n) for j in range(n))


def _mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))) for i in range(len(A)))


def simple_reflection(d: RootDatum, s: int) -> WeylElement:
    a, c = d.roots[s], d.coroots[s]
    n = d.rank
    # s(mu) = mu - <c, mu> a ; s(lam) = lam - <lam, a> c
    M = tuple(tuple((i == j) - a[i] * c[j] for j in range(n)) for i in range(n))
    C = tuple(tuple((i == j) - c[i] * a[j] for j in range(n)) for i in range(n))
    return WeylElement(M, C, (s,))


def weyl_group(d: RootDatum, bound: int = WEYL_BOUND) -> list:
    """All Weyl group elements, by breadth-first closure over simple reflections.

    Words are shortest (BFS order); output is in BFS discovery order.
    """
    n = d.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens = [simple_reflection(d, s) for s in d.simple]
    seen = {ident: WeylElement(ident, ident, ())}
    queue = deque([seen[ident]])
    while queue:
        w = queue.popleft()
        for g in gens:
            M = _mat_mul(w.matrix, g.matrix)
            if M in seen:
                continue
            elem = WeylElement(M, _mat_mul(w.comatrix, g.comatrix), w.word + g.word)
            seen[M] = elem
            if len(seen) > bound:
                raise RuntimeError(f"Weyl group exceeds {bound} elements; malformed datum?")
            queue.append(elem)
    return list(seen.values())


def is_dominant(d: RootDatum, lam, strict: bool = False) -> bool:
    for a in d.positive_roots:
        v = pairing(lam, a)
        if v < 0 or (strict and v == 0):
            return False
    return True


def is_strictly_dominant(d: RootDatum, lam) -> bool:
    return is_dominant(d, lam, strict=True)


def deg_coweight(d: RootDatum, lam) -> int:
    """``sum over positive roots of <lam, alpha> d_alpha``; the log_p of the double coset size."""
    if not is_dominant(d, lam):
        raise ValueError(f"{tuple(lam)} is not dominant")
    return sum(pairing(lam, d.roots[i]) * d.dims[i] for i in d.positive_indices)


def alpha_star(d: RootDatum, alpha):
    """Return ``(m_alpha, m_alpha * alpha^vee)``."""
    i = d.root_index(alpha)
    m = reduce(gcd, (abs(x) for x in d.roots[i]))
    return m, tuple(m * x for x in d.coroots[i])


class GroupAlgebraElement:
    """Finitely supported integer combinations of e^{lam}, lam in X_*."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, v in (terms or {}).items():
            if v:
                clean[tuple(k)] = clean.get(tuple(k), 0) + v
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def monomial(cls, lam, coeff=1):
        return cls({tuple(lam): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElement(out)

    def __neg__(self):
        return GroupAlgebraElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return GroupAlgebraElement(out)

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def act(self, w: WeylElement):
        return GroupAlgebraElement({w.act_coweight(k): v for k, v in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*e^{k}" for k, v in self.sorted_terms())


def discriminant(d: RootDatum) -> GroupAlgebraElement:
    """``prod over all roots of (1 - e^{alpha*})``."""
    zero = (0,) * d.rank
    f = GroupAlgebraElement.monomial(zero)
    for a in d.roots:
        _, star = alpha_star(d, a)
        f = f * (GroupAlgebraElement.monomial(zero) - GroupAlgebraElement.monomial(star))
    return f


@dataclass(frozen=True)
class UnramifiedCharacter:
    """Values on the standard basis of X_*, extended multiplicatively."""

    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(v == 0 for v in vals):
            raise ValueError("character values must be nonzero")
        object.__setattr__(self, "values", vals)

    def __call__(self, lam) -> Fraction:
        if len(lam) != len(self.values):
            raise ValueError("rank mismatch")
        out = Fraction(1)
        for v, k in zip(self.values, lam):
            out *= v**k
        return out

    def twist(self, w: WeylElement) -> "UnramifiedCharacter":
        """``lam -> chi(w lam)``."""
        n = len(self.values)
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return UnramifiedCharacter(tuple(self(w.act_coweight(e)) for e in basis))


@dataclass
class RegularityReport:
    reflection_test: bool
    stabilizer_test: bool
    failing_roots: list = field(default_factory=list)
    stabilizer: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.reflection_test == self.stabilizer_test

    def to_report(self) -> Report:
        return Report(
            "strong_regularity",
            self.agree,
            {
                "reflection_test": self.reflection_test,
                "stabilizer_test": self.stabilizer_test,
                "failing_roots": self.failing_roots,
                "stabilizer_words": self.stabilizer,
            },
        )


def is_strongly_regular(chi: UnramifiedCharacter, d: RootDatum) -> RegularityReport:
    failing = [a for a in d.roots if chi(alpha_star(d, a)[1]) == 1]
    stab = [w.word for w in weyl_group(d) if not w.is_identity and chi.twist(w) == chi]
    return RegularityReport(not failing, not stab, failing, stab)

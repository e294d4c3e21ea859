"""Finite-level oracle for congruence subgroups of GL_n(Z_p).

Everything here is exhaustive: we enumerate the image of ``I(b, c)`` in
``GL_n(Z/p^N)`` and verify coset identities element by element. Matrices
are flat tuples of length ``n*n`` internally; :class:`ModMatrix` wraps them
at the API surface.

Conjugation by ``xi = lam(p) = diag(p^lam_1, ..., p^lam_n)`` multiplies
entry ``(i, j)`` by ``p^(lam_j - lam_i)``. When the exponent is negative
we divide exactly and track the lost precision, so a membership verdict is
never read off digits we do not know.
"""

from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .heckecomb import coset_representatives
from .reports import Report
from .rootdata import build_preset

ORDER_GUARD = 10**6
ORBIT_GUARD = 10**5


class SizeGuardError(ValueError):
    pass


# ---------------------------------------------------------------- matrices

def mat_mul(A, B, n, M):
    if n == 2:
        a0, a1, a2, a3 = A
        b0, b1, b2, b3 = B
        return ((a0 * b0 + a1 * b2) % M, (a0 * b1 + a1 * b3) % M,
                (a2 * b0 + a3 * b2) % M, (a2 * b1 + a3 * b3) % M)
    if n == 3:
        a0, a1, a2, a3, a4, a5, a6, a7, a8 = A
        b0, b1, b2, b3, b4, b5, b6, b7, b8 = B
        return ((a0 * b0 + a1 * b3 + a2 * b6) % M, (a0 * b1 + a1 * b4 + a2 * b7) % M,
                (a0 * b2 + a1 * b5 + a2 * b8) % M, (a3 * b0 + a4 * b3 + a5 * b6) % M,
                (a3 * b1 + a4 * b4 + a5 * b7) % M, (a3 * b2 + a4 * b5 + a5 * b8) % M,
                (a6 * b0 + a7 * b3 + a8 * b6) % M, (a6 * b1 + a7 * b4 + a8 * b7) % M,
                (a6 * b2 + a7 * b5 + a8 * b8) % M)
    return tuple(
        sum(A[i * n + k] * B[k * n + j] for k in range(n)) % M
        for i in range(n)
        for j in range(n)
    )


def _minor(A, n, r, c):
    return tuple(A[i * n + j] for i in range(n) if i != r for j in range(n) if j != c)


def det(A, n):
    if n == 1:
        return A[0]
    if n == 2:
        return A[0] * A[3] - A[1] * A[2]
    return sum((-1) ** j * A[j] * det(_minor(A, n, 0, j), n - 1) for j in range(n))


def mat_inv(A, n, M):
    """Inverse modulo ``M`` via the adjugate; raises if the determinant is not a unit."""
    d = det(A, n) % M
    dinv = pow(d, -1, M)
    if n == 1:
        return (dinv,)
    adj = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            adj[j * n + i] = (-1) ** (i + j) * det(_minor(A, n, i, j), n - 1)
    return tuple(x * dinv % M for x in adj)


def identity(n):
    return tuple(int(i == j) for i in range(n) for j in range(n))


@dataclass(frozen=True)
class ModMatrix:
    n: int
    modulus: int
    entries: tuple

    def __post_init__(self):
        ent = tuple(int(x) % self.modulus for x in self.entries)
        if len(ent) != self.n * self.n:
            raise ValueError("wrong number of entries")
        object.__setattr__(self, "entries", ent)
        if gcd(det(ent, self.n), self.modulus) != 1:
            raise ValueError("determinant is not a unit")

    @classmethod
    def from_rows(cls, rows, modulus):
        return cls(len(rows), modulus, tuple(x for r in rows for x in r))

    def rows(self):
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __mul__(self, other):
        return ModMatrix(self.n, self.modulus, mat_mul(self.entries, other.entries, self.n, self.modulus))

    def inverse(self):
        return ModMatrix(self.n, self.modulus, mat_inv(self.entries, self.n, self.modulus))


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class CongSubgroup:
    """``I(b, c)`` inside ``GL_n(Z_p)``, seen at level ``p^N``.

    ``kind="central"``: mod p^b the matrix is scalar times upper unitriangular.
    ``kind="iwahori"``: mod p^b only upper triangular (the Iwahori subgroup
    when b = 1). In both cases the matrix is upper triangular mod p^c.
    """

    n: int
    p: int
    b: int
    c: int
    N: int = None
    kind: str = "central"

    def __post_init__(self):
        if self.N is None:
            object.__setattr__(self, "N", self.c)
        if not 1 <= self.b <= self.c <= self.N:
            raise ValueError(f"need 1 <= b <= c <= N, got b={self.b}, c={self.c}, N={self.N}")
        if self.kind not in ("central", "iwahori"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    def at_level(self, N):
        return CongSubgroup(self.n, self.p, self.b, self.c, N, self.kind)

    def order(self, N=None) -> int:
        N = self.N if N is None else N
        n, p = self.n, self.p
        low = n * (n - 1) // 2
        units = (p - 1) * p ** (N - 1)
        if self.kind == "central":
            diag = units * p ** ((N - self.b) * (n - 1))
        else:
            diag = units**n
        return p ** ((N - self.c) * low) * p ** (N * low) * diag

    def member_residues(self, g) -> bool:
        """Membership for a flat integer matrix known at least mod p^c."""
        n, p = self.n, self.p
        pc, pb = p**self.c, p**self.b
        for i in range(n):
            for j in range(i):
                if g[i * n + j] % pc:
                    return False
        d0 = g[0]
        for i in range(n):
            if g[i * n + i] % p == 0:
                return False
            if self.kind == "central" and (g[i * n + i] - d0) % pb:
                return False
        return True

    def contains(self, g) -> bool:
        """``g``: ModMatrix, rows, or flat tuple of integers (taken as exact lifts)."""
        if isinstance(g, ModMatrix):
            if g.modulus % self.p**self.c:
                raise ValueError(f"modulus {g.modulus} does not determine membership")
            return self.member_residues(g.entries)
        flat = _flatten(g)
        if any(isinstance(x, Fraction) for x in flat):
            return self.contains_rational(flat)
        return self.member_residues(tuple(int(x) for x in flat))

    def contains_rational(self, g) -> bool:
        """Membership for an exact rational matrix (p-integral entries only)."""
        flat = _flatten(g)
        M = self.p**self.c
        res = []
        for x in flat:
            x = Fraction(x)
            if x.denominator % self.p == 0:
                return False
            res.append(x.numerator * pow(x.denominator, -1, M) % M)
        return self.member_residues(tuple(res))


def _flatten(g):
    if isinstance(g, ModMatrix):
        return g.entries
    g = list(g)
    if g and isinstance(g[0], (list, tuple)):
        return tuple(x for r in g for x in r)
    return tuple(g)


def _iter_flat(spec: CongSubgroup, N: int):
    """Structured enumeration of ``I(b, c)`` mod p^N in lexicographic order."""
    n, p = spec.n, spec.p
    M = p**N
    ranges = []
    for i in range(n):
        for j in range(n):
            if i > j:
                ranges.append(range(0, M, p ** min(spec.c, N)))
            elif i < j:
                ranges.append(range(M))
            else:
                ranges.append(None)
    units = [x for x in range(M) if x % p]
    diag_positions = [i * n + i for i in range(n)]
    for vals in product(*[r if r is not None else [0] for r in ranges]):
        base = list(vals)
        if spec.kind == "iwahori":
            diag_choices = product(units, repeat=n)
        else:
            step = p ** min(spec.b, N)
            diag_choices = (
                (d0,) + rest
                for d0 in units
                for rest in product(*[range(d0 % step, M, step)] * (n - 1))
            )
        for ds in diag_choices:
            for pos, d in zip(diag_positions, ds):
                base[pos] = d
            yield tuple(base)


def _guard(spec: CongSubgroup, N: int, guard: int):
    size = spec.order(N)
    if size > guard:
        raise SizeGuardError(f"|I({spec.b},{spec.c}) mod {spec.p}^{N}| = {size} exceeds guard {guard}")
    return size


def enumerate_flat(spec: CongSubgroup, N: int | None = None, guard: int = ORDER_GUARD):
    N = spec.N if N is None else N
    _guard(spec, N, guard)
    elems = sorted(_iter_flat(spec, N))
    return elems


def enumerate_subgroup(spec: CongSubgroup, guard: int = ORDER_GUARD, seed: int = 0, spot_checks: int = 1000):
    """Exact element list of ``I(b, c)`` mod p^N, as ModMatrix objects.

    Multiplicative closure is spot-checked on ``spot_checks`` random pairs.
    """
    elems = enumerate_flat(spec, guard=guard)
    M = spec.p**spec.N
    rng = random.Random(seed)
    for _ in range(spot_checks if len(elems) > 1 else 0):
        a, b = rng.choice(elems), rng.choice(elems)
        if not spec.member_residues(mat_mul(a, b, spec.n, M)):
            raise AssertionError(f"product of {a} and {b} left the subgroup")
    return [ModMatrix(spec.n, M, e) for e in elems]


def enumerate_by_filter(spec: CongSubgroup, guard: int = 10**7):
    """Brute force: filter every n x n matrix mod p^N. Oracle for small cases."""
    M = spec.p**spec.N
    if M ** (spec.n * spec.n) > guard:
        raise SizeGuardError("brute-force filter too large")
    return [
        g
        for g in product(range(M), repeat=spec.n * spec.n)
        if gcd(det(g, spec.n), spec.p) == 1 and spec.member_residues(g)
    ]


def closure_report(spec: CongSubgroup, seed: int = 0, pairs: int = 1000) -> Report:
    """Exhaustive inversion closure and sampled multiplication closure."""
    elems = enumerate_flat(spec)
    M = spec.p**spec.N
    n = spec.n
    as_set = set(elems)
    for g in elems:
        if mat_inv(g, n, M) not in as_set:
            return Report("closure", False, {"order": len(elems)}, {"not_inverted": list(g)})
    rng = random.Random(seed)
    for _ in range(pairs):
        a, b = rng.choice(elems), rng.choice(elems)
        if mat_mul(a, b, n, M) not in as_set:
            return Report("closure", False, {"order": len(elems)}, {"a": list(a), "b": list(b)})
    return Report("closure", True, {"order": len(elems), "predicted_order": spec.order(), "pairs": pairs})


# ---------------------------------------------------------------- conjugation

class PrecisionError(ValueError):
    pass


def required_level(spec: CongSubgroup, lam) -> int:
    """Smallest N at which membership of ``xi^-1 g xi`` in C is determined by g mod p^N.

    At this level the kernel of reduction mod p^N also lies in ``C cap xi C xi^-1``.
    """
    n = spec.n
    need = spec.c
    for i in range(n):
        for j in range(n):
            e = lam[j] - lam[i]
            if i < j:
                need = max(need, -e)
            elif i > j:
                need = max(need, spec.c - e)
    return max(need, 1)


def conj_member(spec: CongSubgroup, g, lam, N) -> bool:
    """Is ``xi^-1 g xi`` in C, for ``g`` known mod p^N?"""
    n, p = spec.n, spec.p
    out = list(g)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            e = lam[j] - lam[i]
            x = g[i * n + j]
            prec = N + e
            if e >= 0:
                out[i * n + j] = x * p**e
            else:
                if N < -e:
                    raise PrecisionError(f"entry ({i},{j}) needs level >= {-e}")
                if x % p ** (-e):
                    return False
                out[i * n + j] = x // p ** (-e)
            if i > j and prec < spec.c:
                raise PrecisionError(f"entry ({i},{j}) known only mod p^{prec}")
    return spec.member_residues(tuple(out))


def conjugate_exact(g, lam, p, n):
    """``xi^-1 g xi`` over the rationals for an integer lift ``g``."""
    return tuple(
        Fraction(g[i * n + j]) * Fraction(p) ** (lam[j] - lam[i]) for i in range(n) for j in range(n)
    )


# ---------------------------------------------------------------- cosets

@dataclass
class CosetPartition:
    """Left cosets ``g H`` of ``H = C cap xi C xi^-1`` in C, i.e. the left C-cosets in ``C xi C``."""

    spec: CongSubgroup
    lam: tuple
    N: int
    reps: list
    rep_invs: list
    class_sizes: list
    order: int

    def class_of(self, g):
        M = self.spec.p**self.N
        for k, ri in enumerate(self.rep_invs):
            if conj_member(self.spec, mat_mul(ri, g, self.spec.n, M), self.lam, self.N):
                return k
        return None

    def __len__(self):
        return len(self.reps)


def coset_partition(spec: CongSubgroup, lam, N: int | None = None, guard: int = ORDER_GUARD,
                    orbit_guard: int = ORBIT_GUARD, elements=None) -> CosetPartition:
    """Partition ``C mod p^N`` into classes ``g H`` by testing ``r^-1 g`` against each rep."""
    lam = tuple(lam)
    if len(lam) != spec.n:
        raise ValueError("coweight length does not match n")
    N = max(spec.N if N is None else N, required_level(spec, lam))
    M = spec.p**N
    n = spec.n
    elems = elements if elements is not None else enumerate_flat(spec, N, guard)
    reps, invs, sizes = [], [], []
    for g in elems:
        for k, ri in enumerate(invs):
            if conj_member(spec, mat_mul(ri, g, n, M), lam, N):
                sizes[k] += 1
                break
        else:
            reps.append(g)
            invs.append(mat_inv(g, n, M))
            sizes.append(1)
            if len(reps) > orbit_guard:
                raise SizeGuardError(f"more than {orbit_guard} cosets")
    return CosetPartition(spec, lam, N, reps, invs, sizes, len(elems))


@lru_cache(maxsize=64)
def cached_partition(spec: CongSubgroup, lam: tuple, guard: int = ORDER_GUARD) -> CosetPartition:
    return coset_partition(spec, lam, guard=guard)


def double_coset_count(spec: CongSubgroup, lam, guard: int = ORDER_GUARD) -> int:
    """Number of left C-cosets in ``C xi C`` by exhaustive enumeration."""
    part = coset_partition(spec, lam, guard=guard)
    if len(set(part.class_sizes)) > 1:
        raise AssertionError("coset classes of unequal size")
    return len(part)


def _root_position(alpha):
    i = next(k for k, x in enumerate(alpha) if x == 1)
    j = next(k for k, x in enumerate(alpha) if x == -1)
    return i, j


def unipotent_from_rep(n, slots, roots, rep, M):
    """``prod over slots (I + r E_ij)`` in slot order."""
    u = identity(n)
    for (ridx, _, _), r in zip(slots, rep):
        i, j = _root_position(roots[ridx])
        x = list(identity(n))
        x[i * n + j] = r % M
        u = mat_mul(u, tuple(x), n, M)
    return u


def verify_rep_formula(spec: CongSubgroup, lam, guard: int = ORDER_GUARD) -> Report:
    """Check that ``u(r) xi C`` over the abstract representatives are exactly the cosets in ``C xi C``."""
    lam = tuple(lam)
    d = build_preset("GL", spec.n)
    reps = coset_representatives(d, lam, spec.p)
    part = coset_partition(spec, lam, guard=guard)
    M = spec.p**part.N
    hit = {}
    details = {"lambda": list(lam), "prime": spec.p, "level": part.N, "num_reps": len(reps),
               "num_cosets": len(part)}
    for rep in reps.reps:
        u = unipotent_from_rep(spec.n, reps.slots, d.roots, rep, M)
        k = part.class_of(u)
        if k is None:
            return Report("rep_formula", False, details, {"rep": list(rep), "reason": "outside C xi C"})
        if k in hit:
            return Report("rep_formula", False, details,
                          {"rep": list(rep), "same_coset_as": list(hit[k]), "reason": "not distinct"})
        hit[k] = rep
    ok = len(hit) == len(part)
    return Report("rep_formula", ok, details, None if ok else {"reason": "not exhaustive",
                                                                "missed": len(part) - len(hit)})


def _nonneg_shift(lam):
    m = min(lam)
    return tuple(x - m for x in lam)


def _z_member(spec: CongSubgroup, k_inv, y, mu, P):
    """Is ``(k xi_mu)^-1 y = xi_mu^-1 k^-1 y`` in C?

    ``y`` is an exact integer matrix and ``k_inv`` is known mod ``P``, with
    ``P >= p^(c + max mu)`` so the quotient rows are still known mod p^c.
    """
    n, p = spec.n, spec.p
    w = mat_mul(k_inv, tuple(x % P for x in y), n, P)
    z = []
    for i in range(n):
        q = p ** mu[i]
        for j in range(n):
            if w[i * n + j] % q:
                return False
            z.append(w[i * n + j] // q)
    return spec.member_residues(tuple(z))


def product_set_check(spec: CongSubgroup, lam, lam2, guard: int = ORDER_GUARD) -> Report:
    """Set identity ``C xi C xi' C = C xi xi' C`` and the same with the factors swapped."""
    lam = _nonneg_shift(tuple(lam))
    lam2 = _nonneg_shift(tuple(lam2))
    mu = tuple(a + b for a, b in zip(lam, lam2))
    n, p = spec.n, spec.p
    P = p ** (spec.c + max(mu))
    parts = {v: cached_partition(spec, v, guard) for v in {lam, lam2, mu}}
    target = parts[mu]
    k_invs = [mat_inv(k, n, P) for k in target.reps]
    details = {"lambda": list(lam), "lambda_prime": list(lam2), "prime": p,
               "target_cosets": len(target)}
    for first, second in ((lam, lam2), (lam2, lam)):
        found = set()
        for g in parts[first].reps:
            for h in parts[second].reps:
                y = _int_mul(_times_xi(g, first, p, n), _times_xi(h, second, p, n), n)
                k = next((idx for idx, ki in enumerate(k_invs) if _z_member(spec, ki, y, mu, P)), None)
                if k is None:
                    return Report("product_set", False, details,
                                  {"g": list(g), "h": list(h), "order": [list(first), list(second)]})
                found.add(k)
        if len(found) != len(target):
            return Report("product_set", False, details,
                          {"order": [list(first), list(second)], "missing": len(target) - len(found)})
    details["products_checked"] = 2 * len(parts[lam]) * len(parts[lam2])
    return Report("product_set", True, details)


def _times_xi(g, lam, p, n):
    return tuple(g[i * n + j] * p ** lam[j] for i in range(n) for j in range(n))


def _int_mul(A, B, n):
    return tuple(sum(A[i * n + k] * B[k * n + j] for k in range(n)) for i in range(n) for j in range(n))


def verify_up_factorization(n: int, b: int, c: int, lam, p: int, kind: str = "central",
                            guard: int = ORDER_GUARD) -> Report:
    """``I(b,c) xi I(b,c) = I(b,c-1) xi I(b,c)``: every coset of the right side meets I(b,c)."""
    if c - 1 < b:
        raise ValueError("need c - 1 >= b")
    lam = tuple(lam)
    small = CongSubgroup(n, p, b, c, kind=kind)
    big = CongSubgroup(n, p, b, c - 1, c, kind=kind)
    N = max(c, required_level(small, lam))
    big_elems = enumerate_flat(big, N, guard)
    # cosets g xi I(b,c) for g in I(b,c-1): classes of big mod (big cap xi small xi^-1)
    part = coset_partition(small, lam, N, elements=big_elems)
    reached = set()
    for g in enumerate_flat(small, N, guard):
        reached.add(part.class_of(g))
    details = {"b": b, "c": c, "lambda": list(lam), "prime": p, "level": N,
               "cosets_right": len(part), "cosets_left": len(reached)}
    if len(reached) == len(part):
        return Report("up_factorization", True, details)
    missing = next(k for k in range(len(part)) if k not in reached)
    return Report("up_factorization", False, details, {"unreached_rep": list(part.reps[missing])})


# ---------------------------------------------------------------- diamonds

def _unit_group_generators(p, b):
    """Cyclic decomposition of ``1 + pZ/p^b``: list of (generator, order)."""
    if b <= 1:
        return []
    M = p**b
    if p != 2:
        return [(1 + p, p ** (b - 1))]
    if b == 2:
        return [(M - 1, 2)]
    return [(M - 1, 2), (5, 2 ** (b - 2))]


@dataclass(frozen=True)
class DiamondQuotient:
    """``T(Z/p^b)_p`` for the diagonal torus of GL_n: tuples of units = 1 mod p."""

    n: int
    p: int
    b: int
    c: int = None

    @property
    def order(self):
        return self.p ** ((self.b - 1) * self.n)

    def cyclic_factors(self):
        """``(coordinate, generator, order)`` for the invariant-factor decomposition."""
        return [(i, g, o) for i in range(self.n) for g, o in _unit_group_generators(self.p, self.b)]

    def elements(self):
        M = self.p**self.b
        ones = [x for x in range(M) if x % self.p == 1]
        return list(product(ones, repeat=self.n))

    def dlog_table(self):
        """Map each element of ``1 + pZ/p^b`` to its exponent vector on the generators."""
        M = self.p**self.b
        gens = _unit_group_generators(self.p, self.b)
        table = {}
        for exps in product(*[range(o) for _, o in gens]):
            x = 1
            for (g, _), e in zip(gens, exps):
                x = x * pow(g, e, M) % M
            table[x % M] = exps
        return table


@dataclass(frozen=True)
class TorusHom:
    """Homomorphism ``T_b -> Z/p^m`` given by its values on the cyclic factors."""

    quotient: DiamondQuotient
    m: int
    values: tuple

    def __post_init__(self):
        pm = self.quotient.p**self.m
        for (_, _, o), v in zip(self.quotient.cyclic_factors(), self.values):
            if (o * v) % pm:
                raise ValueError(f"value {v} is not killed by the generator order {o}")

    def __call__(self, diag):
        q = self.quotient
        M = q.p**q.b
        table = _dlog_cache(q.p, q.b)
        per = len(_unit_group_generators(q.p, q.b))
        total = 0
        for i, x in enumerate(diag):
            exps = table[x % M]
            for k, e in enumerate(exps):
                total += e * self.values[i * per + k]
        return total % q.p**self.m

    def is_trivial(self):
        return all(v == 0 for v in self.values)


_DLOG = {}


def _dlog_cache(p, b):
    if (p, b) not in _DLOG:
        _DLOG[(p, b)] = DiamondQuotient(1, p, b).dlog_table()
    return _DLOG[(p, b)]


def hom_group(q: DiamondQuotient, m: int, guard: int = ORDER_GUARD) -> list:
    """All of ``Hom(T_b, Z/p^m)``; size is the product of gcd(order, p^m) over cyclic factors."""
    pm = q.p**m
    choices = []
    size = 1
    for _, _, o in q.cyclic_factors():
        g = gcd(o, pm)
        step = pm // g
        choices.append(range(0, pm, step))
        size *= g
    if size > guard:
        raise SizeGuardError(f"{size} homomorphisms exceed guard")
    return [TorusHom(q, m, vals) for vals in product(*choices)]


def _pro_p_exponent(p, c):
    """``e`` with ``x -> x^e`` the projection of ``(Z/p^c)^x`` onto ``1 + pZ/p^c``."""
    if p == 2:
        return 1
    pk = p ** (c - 1)
    # e = 0 mod (p-1), e = 1 mod p^(c-1)
    for e in range(0, (p - 1) * pk, p - 1):
        if e % pk == 1 % pk:
            return e
    raise AssertionError("CRT failed")


@dataclass(frozen=True)
class InflatedCharacter:
    """``g -> phi(<diag(g) mod p^b>)``, the inflation of a TorusHom to ``I(*, c)``."""

    hom: TorusHom

    def __call__(self, g, n):
        q = self.hom.quotient
        M = q.p**q.b
        e = _pro_p_exponent(q.p, q.b)
        diag = tuple(pow(int(g[i * n + i]) % M, e, M) for i in range(n))
        return self.hom(diag)

    def describe(self):
        return {"kind": "torus", "values": list(self.hom.values), "m": self.hom.m}


@dataclass(frozen=True)
class UnipotentCoordinate:
    """Deliberately non-toric: ``g -> g[0,1] * g[0,0]^-1 mod p``."""

    p: int

    def __call__(self, g, n):
        return int(g[1]) * pow(int(g[0]), -1, self.p) % self.p

    def describe(self):
        return {"kind": "unipotent_coordinate", "p": self.p}


def diamond_conjugation_check(spec: CongSubgroup, lam, F, guard: int = ORDER_GUARD) -> Report:
    """``F(xi^-1 g xi) = F(g)`` for all g in ``I cap xi I xi^-1``.

    Elements are integer lifts mod p^(N+B), B the largest positive pairing of
    lam with a positive root; conjugates are formed over the rationals and
    must be integral before they are tested.
    """
    lam = tuple(lam)
    n, p = spec.n, spec.p
    B = max([lam[i] - lam[j] for i in range(n) for j in range(i + 1, n)] + [0])
    L = spec.N + B
    checked = 0
    for g in enumerate_flat(spec, L, guard):
        x = conjugate_exact(g, lam, p, n)
        if any(v.denominator != 1 for v in x):
            continue
        if not spec.contains_rational(x):
            continue
        xi = tuple(int(v) for v in x)
        checked += 1
        if F(xi, n) != F(g, n):
            return Report("diamond_conjugation", False,
                          {"lambda": list(lam), "F": F.describe(), "level": L, "checked": checked},
                          {"g": list(g), "conjugate": list(xi), "F(g)": F(g, n), "F(conj)": F(xi, n)})
    return Report("diamond_conjugation", True,
                  {"lambda": list(lam), "F": F.describe(), "level": L, "checked": checked})


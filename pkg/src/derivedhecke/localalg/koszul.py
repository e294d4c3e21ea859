"""Koszul complexes, Ext over a local power-series ring, and the exterior action.

Setting: ``Lambda = k[[X_1, ..., X_r]]`` with maximal ideal ``m`` and a
sequence ``f_1, ..., f_n`` in ``m``. Write ``A`` for the n x r matrix of
linear parts (the map ``I/mI -> m/m^2``). The Koszul complex ``K(f)``
computes ``Ext^*(Lambda/I, k)`` when the sequence is regular; its dual
``Hom(K(f), k)`` has zero differentials because every ``f_i`` lies in m,
so ``dim Ext^i = C(n, i)``.

``Ext^1(k, k) = Hom(m/m^2, k)`` acts on ``Ext^*(Lambda/I, k) = wedge (k^n)^dual``
by ``c -> c wedge (A^T eta)``. The chain-level route recomputes this from a
division ``f_i = sum_j a_ij X_j`` and the comparison map ``wedge(a)`` from
``K(f)`` to the Koszul resolution of k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from ..linalg import in_span, nullspace, rank
from ..reports import Report
from .exterior import apply_power, exterior_power, merge_sign, subsets, wedge
from .poly import Poly, PolyRing


@dataclass
class LocalSequence:
    ring: PolyRing
    gens: list

    def __post_init__(self):
        self.gens = [self.ring.parse(g) for g in self.gens]
        for g in self.gens:
            if g.constant_term() != 0:
                raise ValueError(f"generator {g} is not in the maximal ideal")

    @property
    def n(self):
        return len(self.gens)

    @property
    def r(self):
        return self.ring.num_vars

    @property
    def field(self):
        return self.ring.field

    def linear_part_matrix(self):
        return [g.linear_part() for g in self.gens]

    @classmethod
    def from_strings(cls, num_vars, gens, field=None):
        ring = PolyRing(num_vars, field) if field is not None else PolyRing(num_vars)
        return cls(ring, list(gens))


def linear_part(f: Poly):
    return f.linear_part()


def is_part_of_regular_system(seq: LocalSequence) -> bool:
    """``rank A = n``: the linear parts are independent in ``m/m^2``."""
    if seq.n == 0:
        raise ValueError("empty sequence")
    if seq.n > seq.r:
        raise ValueError(f"{seq.n} generators exceed {seq.r} variables")
    return rank(seq.linear_part_matrix(), seq.field) == seq.n


@dataclass
class KoszulComplex:
    """``d_i : K_i -> K_{i-1}`` as Poly matrices (rows: basis of K_{i-1})."""

    seq: LocalSequence
    bases: list
    differentials: dict

    @classmethod
    def build(cls, seq: LocalSequence, check: bool = True):
        n = seq.n
        bases = [subsets(n, i) for i in range(n + 1)]
        diffs = {}
        zero = seq.ring.zero()
        for i in range(1, n + 1):
            index = {S: k for k, S in enumerate(bases[i - 1])}
            mat = [[zero for _ in bases[i]] for _ in bases[i - 1]]
            for col, S in enumerate(bases[i]):
                for k, s in enumerate(S):
                    T = S[:k] + S[k + 1:]
                    g = seq.gens[s] if k % 2 == 0 else -seq.gens[s]
                    mat[index[T]][col] = mat[index[T]][col] + g
            diffs[i] = mat
        out = cls(seq, bases, diffs)
        if check:
            out.check_square_zero()
        return out

    def check_square_zero(self):
        zero = self.seq.ring.zero()
        for i in range(2, self.seq.n + 1):
            A, B = self.differentials[i - 1], self.differentials[i]
            for r_ in range(len(A)):
                for c in range(len(B[0])):
                    s = zero
                    for k in range(len(B)):
                        s = s + A[r_][k] * B[k][c]
                    if not s.is_zero():
                        raise AssertionError(f"d_{i - 1} d_{i} != 0 at ({r_}, {c})")
        return True

    def dual_differential_mod_m(self, i):
        """Matrix of ``Hom(K_i, k) -> Hom(K_{i+1}, k)`` (transpose of d_{i+1} mod m)."""
        d = self.differentials[i + 1]
        return [[d[r_][c].constant_term() for r_ in range(len(d))] for c in range(len(d[0]))]


def koszul_ext_dims(seq: LocalSequence, complex_: KoszulComplex | None = None):
    """Homology ranks of ``Hom(K(f), k)``; asserts the closed form ``C(n, i)``."""
    K = complex_ or KoszulComplex.build(seq)
    n = seq.n
    F = seq.field
    ranks = {}
    for i in range(n):
        M = K.dual_differential_mod_m(i)
        ranks[i] = rank(M, F)
    dims = []
    for i in range(n + 1):
        size = comb(n, i)
        out_rank = ranks.get(i, 0)
        in_rank = ranks.get(i - 1, 0)
        dims.append(size - out_rank - in_rank)
    expected = [comb(n, i) for i in range(n + 1)]
    if dims != expected:
        raise AssertionError(f"Ext dims {dims} differ from binomials {expected}")
    return dims


@dataclass
class ExtReport:
    dims: list
    linear_part_matrix: list
    action_matrices: dict
    generated_over_bottom: bool
    failing_degree: int | None = None
    action_ranks: dict = field(default_factory=dict)
    field_name: str = "Q"
    note: str = ("surjectivity of A^T in degree 1 implies surjectivity of every exterior power, "
                 "so generation over the bottom degree is decided in degree 1")

    def to_dict(self):
        return {
            "field": self.field_name,
            "dims": self.dims,
            "linear_part_matrix": self.linear_part_matrix,
            "action_matrices": {str(k): v for k, v in self.action_matrices.items()},
            "action_ranks": {str(k): v for k, v in self.action_ranks.items()},
            "generated_over_bottom": self.generated_over_bottom,
            "failing_degree": self.failing_degree,
            "note": self.note,
        }


def generation_verdict(seq: LocalSequence) -> ExtReport:
    """Is ``Ext^*(Lambda/I, k)`` generated over ``Ext^0`` by the exterior action?

    Each degree i is checked separately: the image of ``wedge^i A^T`` applied
    to the generator of Ext^0 must be all of ``Ext^i``. The first failing
    degree is recorded.
    """
    F = seq.field
    dims = koszul_ext_dims(seq)
    A = seq.linear_part_matrix()
    actions, ranks = {}, {}
    failing = None
    for i in range(1, seq.n + 1):
        # wedge^i A: columns indexed by i-subsets of the r variables, rows by i-subsets of n
        M = exterior_power(A, i, F) if seq.r >= i else [[] for _ in subsets(seq.n, i)]
        actions[i] = M
        rk = rank(M, F) if M and M[0] else 0
        ranks[i] = rk
        if rk != dims[i] and failing is None:
            failing = i
    return ExtReport(dims, A, actions, failing is None, failing, ranks, F.name)


# ------------------------------------------------------------------ division

def canonical_division(f: Poly, order=None):
    """Write ``f = sum_j a_j X_j``: each monomial goes to its first variable in ``order``."""
    r = f.ring.num_vars
    order = list(range(r)) if order is None else list(order)
    if f.constant_term() != 0:
        raise ValueError("division needs zero constant term")
    parts = [{} for _ in range(r)]
    for e, c in f.terms.items():
        j = next((v for v in order if e[v] > 0), None)
        if j is None:
            raise AssertionError("monomial without variables in a constant-free polynomial")
        q = list(e)
        q[j] -= 1
        parts[j][tuple(q)] = c
    quotients = [Poly(f.ring, p) for p in parts]
    check = f.ring.zero()
    for j, a in enumerate(quotients):
        check = check + a * f.ring.var(j)
    if check != f:
        raise AssertionError("division does not reproduce f")
    return quotients


def random_division(f: Poly, rng: random.Random):
    """A division where every monomial picks a random variable it contains."""
    r = f.ring.num_vars
    parts = [{} for _ in range(r)]
    for e, c in f.terms.items():
        choices = [v for v in range(r) if e[v] > 0]
        j = rng.choice(choices)
        q = list(e)
        q[j] -= 1
        parts[j][tuple(q)] = c
    return [Poly(f.ring, p) for p in parts]


def comparison_matrix(seq: LocalSequence, order=None, rng=None):
    """Poly matrix ``a`` with ``f_i = sum_j a_ij X_j``."""
    if rng is not None:
        return [random_division(g, rng) for g in seq.gens]
    return [canonical_division(g, order) for g in seq.gens]


def check_comparison_chain_map(seq: LocalSequence, a) -> bool:
    """``d^X wedge^i(a) = wedge^{i-1}(a) d^f`` for the comparison map K(f) -> K(X)."""
    ring = seq.ring
    r = seq.r
    Kf = KoszulComplex.build(seq, check=False)
    Kx = KoszulComplex.build(LocalSequence(ring, ring.gens()), check=False)

    def wedge_a(i):
        rows = subsets(r, i)
        cols = subsets(seq.n, i)
        out = []
        for L in rows:
            row = []
            for S in cols:
                row.append(_poly_det([[a[s][l] for l in L] for s in S], ring))
            out.append(row)
        return out

    for i in range(1, min(seq.n, r + 1) + 1):
        right = _poly_matmul(wedge_a(i - 1), Kf.differentials[i], ring)
        if i <= r:
            left = _poly_matmul(Kx.differentials[i], wedge_a(i), ring)
        else:
            left = [[ring.zero() for _ in row] for row in right]
        if left != right:
            return False
    return True


def _poly_det(M, ring):
    if not M:
        return ring.one()
    if len(M) == 1:
        return M[0][0]
    out = ring.zero()
    for j in range(len(M)):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _poly_det(minor, ring)
        out = out + term if j % 2 == 0 else out - term
    return out


def _poly_matmul(A, B, ring):
    if not A or not B:
        return [[ring.zero() for _ in range(len(B[0]) if B else 0)] for _ in A]
    out = []
    for row in A:
        new = []
        for c in range(len(B[0])):
            s = ring.zero()
            for k, x in enumerate(row):
                if not x.is_zero():
                    s = s + x * B[k][c]
            new.append(s)
        out.append(new)
    return out


# ------------------------------------------------------------------ Yoneda action

def _as_form(cls, field):
    if isinstance(cls, dict):
        return {tuple(k): field.coerce(v) for k, v in cls.items() if field.coerce(v) != 0}
    raise TypeError("class must be a dict {subset tuple: coefficient}")


def action_closed_form(seq: LocalSequence, eta, cls: dict) -> dict:
    """``c wedge (A^T eta)``."""
    F = seq.field
    A = seq.linear_part_matrix()
    image = [F.coerce(sum(A[j][l] * eta[l] for l in range(seq.r))) for j in range(seq.n)]
    return wedge(_as_form(cls, F), {(j,): x for j, x in enumerate(image) if x != 0}, F)


def action_chain_route(seq: LocalSequence, eta, cls: dict, a) -> dict:
    """Evaluate on each basis element e_T of K(f)_{i+1}.

    Contract e_T by the cocycle c (a chain map K(f) -> K(f)[-i]), push the
    degree-1 part through the comparison map ``a``, reduce mod m, pair with eta.
    """
    F = seq.field
    c = _as_form(cls, F)
    degs = {len(S) for S in c}
    if len(degs) > 1:
        raise ValueError("class must be homogeneous")
    i = degs.pop() if degs else 0
    out = {}
    for T in combinations(range(seq.n), i + 1):
        total = F.zero
        for S in combinations(T, i):
            x = c.get(S)
            if not x:
                continue
            (j,) = tuple(t for t in T if t not in S)
            sgn = merge_sign(S, (j,))
            # phi_1(e_j) = sum_l a_jl eps_l, reduced mod m, paired with eta
            val = sum(a[j][l].constant_term() * eta[l] for l in range(seq.r))
            total = F.coerce(total + sgn * x * val)
        if total != 0:
            out[T] = total
    return out


def yoneda_action(seq: LocalSequence, eta, cls: dict, order=None, rng=None) -> dict:
    """Action of ``eta in Hom(m/m^2, k)`` on a class in ``wedge^i (k^n)^dual``.

    Computes both routes and raises if they disagree.
    """
    F = seq.field
    eta = [F.coerce(x) for x in eta]
    if len(eta) != seq.r:
        raise ValueError("eta has wrong length")
    a = comparison_matrix(seq, order, rng)
    chain = action_chain_route(seq, eta, cls, a)
    closed = action_closed_form(seq, eta, cls)
    if chain != closed:
        raise AssertionError(f"Yoneda routes disagree: {chain} vs {closed}")
    return closed


def action_of_form(seq: LocalSequence, omega: dict, cls: dict) -> dict:
    """Action of a higher form ``omega`` in ``wedge^j Hom(m/m^2, k)``: ``c wedge wedge^j(A^T) omega``."""
    F = seq.field
    A = seq.linear_part_matrix()
    degs = {len(S) for S in omega}
    out = {}
    for j in degs:
        part = {S: v for S, v in omega.items() if len(S) == j}
        img = apply_power(A, j, part, F)
        for k, v in wedge(_as_form(cls, F), img, F).items():
            out[k] = F.coerce(out.get(k, 0) + v)
    return {k: v for k, v in out.items() if v != 0}


# ------------------------------------------------------------------ regularity probe

def _monomials_upto(r, D):
    out = []
    for d in range(D + 1):
        for e in product(range(d + 1), repeat=r):
            if sum(e) == d:
                out.append(e)
    return out


def graded_regularity_probe(seq: LocalSequence, degree_bound: int) -> Report:
    """Look for first Koszul homology in total degree at most D.

    Certified routes: independent linear parts, or pure powers of distinct
    variables. Otherwise cycles ``sum g_i f_i = 0`` with ``deg g_i + deg f_i <= D``
    are compared with Koszul boundaries built from multipliers of degree up to
    ``D + max deg f``. Works in the polynomial ring, so non-homogeneous
    sequences are only probed, never certified.
    """
    F = seq.field
    maxdeg = max(g.degree() for g in seq.gens)
    if degree_bound < maxdeg:
        raise ValueError(f"degree bound {degree_bound} below generator degree {maxdeg}")
    limitation = ("probe works in the polynomial ring up to a total-degree bound; "
                  "absence of a witness is not a proof of regularity")
    base = {"degree_bound": degree_bound, "limitation": limitation}
    if seq.n <= seq.r and is_part_of_regular_system(seq):
        return Report("regularity_probe", True, {**base, "status": "certified", "route": "linear"})
    pure = []
    for g in seq.gens:
        if len(g.terms) == 1:
            (e,) = g.terms
            support = [i for i, k in enumerate(e) if k]
            if len(support) == 1:
                pure.append(support[0])
    if len(pure) == seq.n and len(set(pure)) == seq.n:
        return Report("regularity_probe", True, {**base, "status": "certified", "route": "monomial"})

    n, r = seq.n, seq.r
    big = degree_bound + maxdeg
    mons = _monomials_upto(r, big)
    coord = {(i, m): k for k, (i, m) in enumerate((i, m) for i in range(n) for m in mons)}
    # cycle unknowns: coefficient of monomial m in g_i, deg m <= D - deg f_i
    unknowns = [(i, m) for i in range(n) for m in mons if sum(m) + seq.gens[i].degree() <= degree_bound]
    out_mons = {}
    eqs = {}
    for col, (i, m) in enumerate(unknowns):
        for e, c in seq.gens[i].terms.items():
            t = tuple(x + y for x, y in zip(m, e))
            row = out_mons.setdefault(t, len(out_mons))
            eqs.setdefault(row, {})[col] = c
    matrix = [[eqs[row_].get(col, 0) for col in range(len(unknowns))] for row_ in range(len(out_mons))]
    cycles = nullspace(matrix, F, len(unknowns)) if matrix else \
        [[F.one if i == j else F.zero for i in range(len(unknowns))] for j in range(len(unknowns))]

    def embed(vec_pairs):
        v = [F.zero] * len(coord)
        for (i, m), c in vec_pairs:
            v[coord[(i, m)]] = F.coerce(v[coord[(i, m)]] + c)
        return v

    boundaries = []
    for i, j in combinations(range(n), 2):
        fi, fj = seq.gens[i], seq.gens[j]
        for h in mons:
            if sum(h) + fi.degree() + fj.degree() > big:
                continue
            pairs = []
            for e, c in fj.terms.items():
                pairs.append(((i, tuple(x + y for x, y in zip(h, e))), c))
            for e, c in fi.terms.items():
                pairs.append(((j, tuple(x + y for x, y in zip(h, e))), -c))
            boundaries.append(embed(pairs))
    for vec in cycles:
        v = embed([(unknowns[k], c) for k, c in enumerate(vec) if c != 0])
        if not in_span(boundaries, v, F):
            witness = {}
            for k, c in enumerate(vec):
                if c != 0:
                    i, m = unknowns[k]
                    witness.setdefault(f"g{i + 1}", []).append([str(c), list(m)])
            return Report("regularity_probe", False, {**base, "status": "witness"}, witness)
    return Report("regularity_probe", True, {**base, "status": "no obstruction up to bound"})


# ------------------------------------------------------------------ cohomology table

@dataclass
class DegreeTable:
    table: dict
    multiplicity: int
    pattern_ok: bool
    flagged_multiplicity: bool

    def to_dict(self):
        return {
            "table": {str(k): v for k, v in self.table.items()},
            "multiplicity": self.multiplicity,
            "pattern_ok": self.pattern_ok,
            "flagged_multiplicity": self.flagged_multiplicity,
        }


def cohomology_degree_map(l0: int, q0: int, dims) -> DegreeTable:
    """Place ``Ext^i`` in cohomological degree ``q0 + i`` and test ``dims[i] = m C(l0, i)``."""
    dims = list(dims)
    if len(dims) != l0 + 1:
        raise ValueError(f"expected {l0 + 1} dimensions, got {len(dims)}")
    m = dims[0]
    table = {q0 + i: d for i, d in enumerate(dims)}
    ok = all(d == m * comb(l0, i) for i, d in enumerate(dims))
    return DegreeTable(table, m, ok, m != 1)

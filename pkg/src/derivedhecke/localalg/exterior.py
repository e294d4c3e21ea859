"""Exterior algebra on a finite basis, and exterior powers of matrices.

A form is a dict from strictly increasing index tuples to field elements.
"""

from __future__ import annotations

from itertools import combinations

from ..linalg import Field, determinant


def subsets(n: int, k: int):
    return list(combinations(range(n), k))


def merge_sign(S, T):
    """Sign of the permutation sorting the concatenation ``S + T`` (0 if they overlap)."""
    if set(S) & set(T):
        return 0
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


def wedge(a: dict, b: dict, field: Field) -> dict:
    out = {}
    for S, x in a.items():
        for T, y in b.items():
            sgn = merge_sign(S, T)
            if sgn:
                U = tuple(sorted(S + T))
                out[U] = field.coerce(out.get(U, 0) + sgn * x * y)
    return {k: v for k, v in out.items() if v != 0}


def vector_to_form(v, field: Field) -> dict:
    return {(i,): field.coerce(x) for i, x in enumerate(v) if field.coerce(x) != 0}


def form_to_vector(form: dict, n: int, k: int, field: Field):
    return [form.get(S, field.zero) for S in subsets(n, k)]


def exterior_power(A, k: int, field: Field):
    """Matrix of ``wedge^k A`` in the subset bases: entry (J, L) is ``det A[J, L]``."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out = []
    for J in subsets(rows, k):
        row = []
        for L in subsets(cols, k):
            if k == 0:
                row.append(field.one)
            else:
                row.append(determinant([[A[j][l] for l in L] for j in J], field))
        out.append(row)
    return out


def apply_power(A, k: int, form: dict, field: Field) -> dict:
    """Image of a degree-k form under ``wedge^k A``; A maps column space to row space."""
    rows = len(A)
    out = {}
    for L, x in form.items():
        for J in subsets(rows, k):
            m = determinant([[A[j][l] for l in L] for j in J], field) if k else field.one
            if m != 0:
                out[J] = field.coerce(out.get(J, 0) + m * x)
    return {k_: v for k_, v in out.items() if v != 0}

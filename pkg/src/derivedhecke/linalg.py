"""Exact linear algebra over the rationals and prime fields.

Matrices are lists of rows. Entries are coerced through a :class:`Field`
so the same elimination code serves ``Q`` (``Fraction``) and ``F_p``
(``int`` reduced mod p).
"""

from __future__ import annotations

from fractions import Fraction


class Field:
    name = "field"

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


class Rationals(Field):
    name = "Q"

    def coerce(self, x):
        if type(x) is Fraction:
            return x
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self):
        return f"Fp:{self.p}"

    def coerce(self, x):
        if type(x) is int:
            return x % self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def parse_field(spec: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:<p>"``."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return QQ
    if spec.startswith("Fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}; expected 'Q' or 'Fp:<p>'")


def row_reduce(rows, field: Field, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    R = [[field.coerce(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = field.inv(R[r][col])
        R[r] = [field.coerce(x * inv) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][col] != 0:
                f = R[i][col]
                R[i] = [field.coerce(a - f * b) for a, b in zip(R[i], R[r])]
        pivots.append(col)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(rows, field: Field) -> int:
    if not rows or not rows[0]:
        return 0
    return len(row_reduce(rows, field)[1])


def nullspace(rows, field: Field, ncols: int | None = None):
    """Basis of ``{x : M x = 0}`` as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = row_reduce(rows, field, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.coerce(-R[i][fcol])
        basis.append(v)
    return basis


def in_span(vectors, v, field: Field) -> bool:
    if not vectors:
        return all(field.coerce(x) == 0 for x in v)
    return rank(list(vectors) + [list(v)], field) == rank(list(vectors), field)


def determinant(M, field: Field):
    n = len(M)
    A = [[field.coerce(x) for x in row] for row in M]
    det = field.one
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            return field.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = field.coerce(-det)
        det = field.coerce(det * A[col][col])
        inv = field.inv(A[col][col])
        for i in range(col + 1, n):
            if A[i][col] != 0:
                f = field.coerce(A[i][col] * inv)
                A[i] = [field.coerce(a - f * b) for a, b in zip(A[i], A[col])]
    return det


def inverse(M, field: Field):
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = row_reduce(aug, field, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def matmul(A, B, field: Field | None = None):
    out = [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
    if field is not None:
        out = [[field.coerce(x) for x in row] for row in out]
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]

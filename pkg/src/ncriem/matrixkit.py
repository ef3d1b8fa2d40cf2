"""Dense matrices over any scalar backend.

Indices are 0-based throughout.  ``kron`` uses the block layout
``kron(A, B)[i*rB + k, j*cB + l] = A[i, j] * B[k, l]``, so a basis of
``V (x) W`` is ordered with the first factor as the slow index.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import GAUSS, Field, field_by_name

__all__ = [
    "Mat",
    "BackendMismatch",
    "NotSquare",
    "DimensionMismatch",
    "identity",
    "zeros",
    "kron",
    "det",
    "rref",
    "rank",
    "kernel_basis",
    "adjoint",
    "is_unitary",
    "is_eigenpair",
    "braid_defect",
    "solve_affine",
]


class BackendMismatch(TypeError):
    pass


class NotSquare(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class Mat:
    """Immutable row-major matrix tagged with its scalar field."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries: Iterable, field: Field = GAUSS):
        entries = tuple(field.coerce(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def _raw(rows: int, cols: int, entries: tuple, field: Field) -> "Mat":
        m = object.__new__(Mat)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        object.__setattr__(m, "field", field)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = GAUSS) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, [x for row in rows for x in row], field)

    @classmethod
    def column(cls, vec: Sequence, field: Field = GAUSS) -> "Mat":
        return cls(len(vec), 1, vec, field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def _check(self, other: "Mat"):
        if self.field.name != other.field.name:
            raise BackendMismatch(f"{self.field.name} vs {other.field.name}")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Mat._raw(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)), self.field)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Mat._raw(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)), self.field)

    def __neg__(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, tuple(-a for a in self.entries), self.field)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        return Mat._raw(self.rows, self.cols, tuple(c * a for a in self.entries), self.field)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        zero = self.field.zero
        A, B = self.entries, other.entries
        # sparse rows of B, skipping exact zeros (the matrices here are mostly zero)
        brows = [[(j, B[k * p + j]) for j in range(p) if B[k * p + j] != 0] for k in range(m)]
        out = []
        for i in range(n):
            acc = [zero] * p
            touched = [False] * p
            for k in range(m):
                a = A[i * m + k]
                if a == 0:
                    continue
                for j, b in brows[k]:
                    if touched[j]:
                        acc[j] = acc[j] + a * b
                    else:
                        acc[j] = a * b
                        touched[j] = True
            out.extend(acc)
        return Mat._raw(n, p, tuple(out), self.field)

    def apply(self, vec: Sequence) -> list:
        """Matrix times a plain list treated as a column vector."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape}")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            acc = zero
            for a, v in zip(self.row(i), vec):
                if a != 0 and v != 0:
                    acc = acc + a * v
            out.append(acc)
        return out

    def __pow__(self, k: int) -> "Mat":
        if self.rows != self.cols:
            raise NotSquare("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "Mat":
        return Mat._raw(self.cols, self.rows, tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)), self.field)

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def conj(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, tuple(self.field.conj(a) for a in self.entries), self.field)

    def map(self, fn, field: Field | None = None) -> "Mat":
        field = field or self.field
        return Mat(self.rows, self.cols, [fn(a) for a in self.entries], field)

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(self.field.is_zero(a) for a in self.entries)

    def equals(self, other: "Mat") -> bool:
        self._check(other)
        return self.shape == other.shape and (self - other).is_zero()

    def max_abs(self) -> float:
        return max((self.field.magnitude(a) for a in self.entries), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field.name == other.field.name and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.field.name})"

    def pretty(self) -> str:
        cells = [[self.field.format(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "backend": self.field.name,
            "entries": [self.field.format(x) for x in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict, tol: float = 1e-9) -> "Mat":
        field = field_by_name(data["backend"], tol)
        return cls(int(data["rows"]), int(data["cols"]), [field.parse(s) for s in data["entries"]], field)


def identity(n: int, field: Field = GAUSS) -> Mat:
    one, zero = field.one, field.zero
    return Mat._raw(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)), field)


def zeros(rows: int, cols: int, field: Field = GAUSS) -> Mat:
    return Mat._raw(rows, cols, (field.zero,) * (rows * cols), field)


def kron(A: Mat, B: Mat) -> Mat:
    A._check(B)
    rB, cB = B.rows, B.cols
    rows, cols = A.rows * rB, A.cols * cB
    zero = A.field.zero
    out = [zero] * (rows * cols)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A[i, j]
            if a == 0:
                continue
            for k in range(rB):
                base = (i * rB + k) * cols + j * cB
                for l in range(cB):
                    b = B.entries[k * cB + l]
                    if b != 0:
                        out[base + l] = a * b
    return Mat._raw(rows, cols, tuple(out), A.field)


def det(A: Mat):
    """Determinant.

    Exact backends use fraction-free (Bareiss) elimination with row swaps;
    the numeric backend uses partial pivoting.
    """
    if A.rows != A.cols:
        raise NotSquare(f"det of a {A.rows}x{A.cols} matrix")
    n = A.rows
    F = A.field
    if n == 0:
        return F.one
    M = [list(A.row(i)) for i in range(n)]
    if not F.exact:
        sign = 1
        acc = F.one
        for k in range(n):
            piv = max(range(k, n), key=lambda r: abs(M[r][k]))
            if abs(M[piv][k]) == 0:
                return F.zero
            if piv != k:
                M[k], M[piv] = M[piv], M[k]
                sign = -sign
            acc = acc * M[k][k]
            for i in range(k + 1, n):
                f = M[i][k] / M[k][k]
                if f != 0:
                    for j in range(k + 1, n):
                        M[i][j] = M[i][j] - f * M[k][j]
        return acc * sign
    sign = 1
    prev = F.one
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((r for r in range(k + 1, n) if M[r][k]), None)
            if swap is None:
                return F.zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) / prev
            M[i][k] = F.zero
        prev = pivot
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def rref(A: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    F = A.field
    M = [list(A.row(i)) for i in range(A.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(A.cols):
        if r >= A.rows:
            break
        if F.exact:
            piv = next((i for i in range(r, A.rows) if M[i][c]), None)
        else:
            cand = max(range(r, A.rows), key=lambda i: abs(M[i][c]), default=None)
            piv = cand if cand is not None and not F.is_zero(M[cand][c]) else None
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(A.rows):
            if i != r and not F.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return Mat(A.rows, A.cols, [x for row in M for x in row], F), pivots


def rank(A: Mat) -> int:
    return len(rref(A)[1])


def kernel_basis(A: Mat) -> list[list]:
    """Basis of the null space, one vector per free column.

    Each vector has a 1 in its free column and zeros in the other free
    columns, so the basis is in reduced column-echelon form.
    """
    R, pivots = rref(A)
    F = A.field
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * A.cols
        v[f] = F.one
        for r, p in enumerate(pivots):
            v[p] = -R[r, f]
        basis.append(v)
    return basis


def solve_affine(A: Mat, b: Sequence) -> list | None:
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    F = A.field
    aug = Mat(A.rows, A.cols + 1, [x for i in range(A.rows) for x in (*A.row(i), b[i])], F)
    R, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [F.zero] * A.cols
    for r, p in enumerate(pivots):
        x[p] = R[r, A.cols]
    return x


def adjoint(A: Mat) -> Mat:
    return A.transpose().conj()


def is_unitary(A: Mat) -> bool:
    if A.rows != A.cols:
        return False
    return (adjoint(A) @ A).equals(identity(A.rows, A.field))


def is_eigenpair(A: Mat, v: Sequence, lam) -> bool:
    F = A.field
    Av = A.apply(list(v))
    return all(F.is_zero(x - lam * y) for x, y in zip(Av, v))


def braid_defect(S: Mat, n: int) -> Mat:
    """(S x I)(I x S)(S x I) - (I x S)(S x I)(I x S) on the n^3-dimensional space."""
    if S.rows != n * n or S.cols != n * n:
        raise DimensionMismatch(f"S is {S.shape}, expected {n * n}x{n * n}")
    In = identity(n, S.field)
    A = kron(S, In)
    B = kron(In, S)
    return A @ B @ A - B @ A @ B

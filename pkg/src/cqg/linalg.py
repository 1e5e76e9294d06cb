"""Exact dense matrices over an arbitrary (possibly noncommutative) ring.

Entries only need ``+``, ``-`` and ``*``; products keep the left/right order
``A[i,k] * B[k,j]``.  Tensor indices are flattened as ``row = 2*i + k``
(0-based) for factor indices ``(i, k)``, so ``(A (x) B)[(i,k),(j,l)] =
A[i,j] * B[k,l]``.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .scalar import ONE, ZERO, NotAUnit, Scalar

__all__ = [
    "RingMatrix",
    "DimensionMismatch",
    "NotTriangularizable",
    "NonMonomialPivot",
    "kron",
    "matmul",
    "identity",
    "permutation_matrix",
    "slot_embed",
    "slot_embed_index_loop",
    "triangular_inverse",
]


class DimensionMismatch(ValueError):
    pass


class NotTriangularizable(ValueError):
    pass


class NonMonomialPivot(ArithmeticError):
    pass


class RingMatrix:
    __slots__ = ("rows", "cols", "entries", "zero")

    def __init__(self, rows: int, cols: int, entries: Sequence, zero=ZERO):
        entries = tuple(entries)
        if rows <= 0 or cols <= 0 or rows * cols != len(entries):
            raise DimensionMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.zero = zero

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], zero=ZERO) -> "RingMatrix":
        r = len(rows)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, [x for row in rows for x in row], zero)

    @classmethod
    def build(cls, rows: int, cols: int, fn: Callable[[int, int], object], zero=ZERO) -> "RingMatrix":
        return cls(rows, cols, [fn(i, j) for i in range(rows) for j in range(cols)], zero)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def map(self, fn: Callable, zero=None) -> "RingMatrix":
        return RingMatrix(self.rows, self.cols, [fn(x) for x in self.entries],
                          self.zero if zero is None else zero)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same(other)
        return RingMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.zero)

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same(other)
        return RingMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.zero)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return matmul(self, other)

    def scale(self, c, left: bool = True) -> "RingMatrix":
        return self.map((lambda x: c * x) if left else (lambda x: x * c))

    def transpose(self) -> "RingMatrix":
        return RingMatrix.build(self.cols, self.rows, lambda i, j: self[j, i], self.zero)

    def is_zero(self) -> bool:
        return all(not x for x in self.entries)

    def nonzero_entries(self) -> list[tuple[int, int, object]]:
        return [(i, j, self[i, j]) for i in range(self.rows) for j in range(self.cols) if self[i, j]]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in self.row(i)] for i in range(self.rows)]

    def __repr__(self):
        return f"RingMatrix({self.to_json()!r})"


def identity(n: int, one=ONE, zero=ZERO) -> RingMatrix:
    return RingMatrix.build(n, n, lambda i, j: one if i == j else zero, zero)


def matmul(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    out = []
    for i in range(A.rows):
        arow = A.row(i)
        for j in range(B.cols):
            acc = A.zero
            for k in range(A.cols):
                a = arow[k]
                if not a:
                    continue
                b = B.entries[k * B.cols + j]
                if not b:
                    continue
                acc = acc + a * b
            out.append(acc)
    return RingMatrix(A.rows, B.cols, out, A.zero)


def kron(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    rB, cB = B.shape

    def entry(r, c):
        i, k = divmod(r, rB)
        j, l = divmod(c, cB)
        a, b = A[i, j], B[k, l]
        if not a or not b:
            return A.zero
        return a * b

    return RingMatrix.build(A.rows * rB, A.cols * cB, entry, A.zero)


def permutation_matrix(n: int = 2, one=ONE, zero=ZERO) -> RingMatrix:
    """Swap ``P (x (x) y) = y (x) x`` on ``n^2``-dimensional basis vectors."""
    dim = n * n
    return RingMatrix.build(dim, dim, lambda r, c: one if (r % n, r // n) == divmod(c, n) else zero, zero)


def slot_embed(R: RingMatrix, slots: str, local_dim: int = 2, one=ONE, zero=ZERO) -> RingMatrix:
    """Embed a two-slot operator into three tensor slots (``"12"``, ``"13"`` or ``"23"``)."""
    n = local_dim
    if R.shape != (n * n, n * n):
        raise DimensionMismatch(f"expected a {n*n}x{n*n} matrix, got {R.shape}")
    ident = identity(n, one, zero)
    if slots == "12":
        return kron(R, ident)
    if slots == "23":
        return kron(ident, R)
    if slots == "13":
        P = permutation_matrix(n, one, zero)
        P23 = kron(ident, P)
        return matmul(matmul(P23, kron(R, ident)), P23)
    raise ValueError(f"unknown slot pair {slots!r}")


def slot_embed_index_loop(R: RingMatrix, slots: str, local_dim: int = 2, zero=ZERO) -> RingMatrix:
    """Direct index formula for :func:`slot_embed`, kept as an independent oracle."""
    n = local_dim
    pos = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}[slots]
    other = ({0, 1, 2} - set(pos)).pop()
    dim = n ** 3
    entries = []
    for r in range(dim):
        ri = (r // (n * n), (r // n) % n, r % n)
        for c in range(dim):
            ci = (c // (n * n), (c // n) % n, c % n)
            if ri[other] != ci[other]:
                entries.append(zero)
                continue
            entries.append(R[ri[pos[0]] * n + ri[pos[1]], ci[pos[0]] * n + ci[pos[1]]])
    return RingMatrix(dim, dim, entries, zero)


def _triangular_order(M: RingMatrix) -> list[int] | None:
    """Ordering of indices making ``M`` lower triangular after simultaneous permutation."""
    n = M.rows
    remaining = set(range(n))
    order: list[int] = []
    # repeatedly pick an index whose row has no off-diagonal support on the remaining set
    while remaining:
        pick = None
        for i in sorted(remaining):
            if all(not M[i, j] for j in remaining if j != i):
                pick = i
                break
        if pick is None:
            return None
        order.append(pick)
        remaining.discard(pick)
    return order


def triangular_inverse(M: RingMatrix) -> RingMatrix:
    """Exact inverse of a permuted-triangular Scalar matrix with monomial pivots.

    The result is checked against ``M`` by multiplication on both sides.
    """
    n = M.rows
    if M.cols != n:
        raise DimensionMismatch("square matrix required")
    order = _triangular_order(M)
    if order is None:
        raise NotTriangularizable("no simultaneous permutation makes the matrix triangular")
    pivots_inv = {}
    for i in range(n):
        d = M[i, i]
        try:
            pivots_inv[i] = Scalar.coerce(d).invert()
        except NotAUnit as exc:
            raise NonMonomialPivot(f"pivot ({i},{i}) = {d} is not a monomial") from exc
    # forward substitution in triangular order: X[i,j] = d_i^-1 (delta_ij - sum_{k before i} M[i,k] X[k,j])
    X: dict[tuple[int, int], Scalar] = {}
    for pos, i in enumerate(order):
        before = order[:pos]
        for j in range(n):
            acc = ONE if i == j else ZERO
            for k in before:
                if M[i, k]:
                    acc = acc - M[i, k] * X[k, j]
            X[i, j] = pivots_inv[i] * acc
    inv = RingMatrix.build(n, n, lambda i, j: X[i, j])
    ident = identity(n)
    if matmul(M, inv) != ident or matmul(inv, M) != ident:
        raise ArithmeticError("triangular inverse failed its self-check")
    return inv

"""Smith normal form and integer lattice helpers.

All matrices are numpy object arrays of Python ints, so entries never wrap
around. `smith_normal_form` returns (U, S, V) with U·M·V = S.
"""

from collections.abc import Iterable, Sequence

import numpy as np
import sympy

import bredoncalc.exceptions as exc


def as_integer_matrix(matrix: object, *, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Copy a matrix-like value into a 2-D object array of Python ints.

    Args:
        matrix: Nested sequence or numpy array
        shape: Shape to use when the input is empty and carries no shape of its own,
            as with a bare []

    Raises:
        ValidationError: If the input is not two-dimensional or has non-integer entries
    """
    array = np.array(matrix, dtype=object)
    if array.size == 0:
        if array.ndim == 2:
            return np.zeros(array.shape, dtype=object)
        return np.zeros(shape if shape is not None else (0, 0), dtype=object)
    if array.ndim != 2:
        raise exc.ValidationError("matrix", f"must be two-dimensional, got {array.ndim} dims")
    result = np.empty(array.shape, dtype=object)
    for idx, value in np.ndenumerate(array):
        if int(value) != value:
            raise exc.ValidationError("matrix", f"entry {value!r} is not an integer")
        result[idx] = int(value)
    return result


def identity(n: int) -> np.ndarray:
    result = np.zeros((n, n), dtype=object)
    for i in range(n):
        result[i, i] = 1
    return result


class SmithNormalForm:
    """Smith normal form by elementary row and column operations.

    Every row operation is mirrored on the left transform and every column
    operation on the right transform, so left @ M @ right == snf.
    """

    def __init__(self, matrix: object, *, transforms: bool = True):
        self._A = as_integer_matrix(matrix)
        rows, cols = self._A.shape
        self._left = identity(rows) if transforms else None
        self._right = identity(cols) if transforms else None
        self._reduce()

    @property
    def snf(self) -> np.ndarray:
        return self._A

    @property
    def left(self) -> np.ndarray:
        if self._left is None:
            raise exc.ValidationError("transforms", "were not tracked for this form")
        return self._left

    @property
    def right(self) -> np.ndarray:
        if self._right is None:
            raise exc.ValidationError("transforms", "were not tracked for this form")
        return self._right

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(int(self._A[i, i]) for i in range(min(self._A.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def _swap_rows(self, i: int, j: int) -> None:
        self._A[[i, j], :] = self._A[[j, i], :]
        if self._left is not None:
            self._left[[i, j], :] = self._left[[j, i], :]

    def _swap_columns(self, i: int, j: int) -> None:
        self._A[:, [i, j]] = self._A[:, [j, i]]
        if self._right is not None:
            self._right[:, [i, j]] = self._right[:, [j, i]]

    def _add_rows(self, target: int, source: int, k: int) -> None:
        # row[target] += k * row[source]
        self._A[target, :] = self._A[target, :] + k * self._A[source, :]
        if self._left is not None:
            self._left[target, :] = self._left[target, :] + k * self._left[source, :]

    def _add_columns(self, target: int, source: int, k: int) -> None:
        self._A[:, target] = self._A[:, target] + k * self._A[:, source]
        if self._right is not None:
            self._right[:, target] = self._right[:, target] + k * self._right[:, source]

    def _negate_row(self, i: int) -> None:
        self._A[i, :] = -self._A[i, :]
        if self._left is not None:
            self._left[i, :] = -self._left[i, :]

    def _reduce(self) -> None:
        A = self._A
        rows, cols = A.shape
        for s in range(min(rows, cols)):
            nonzero = np.argwhere(A[s:, s:] != 0)
            if len(nonzero) == 0:
                return
            i, j = min(nonzero, key=lambda ij: abs(A[s + ij[0], s + ij[1]]))
            self._swap_rows(s, s + int(i))
            self._swap_columns(s, s + int(j))
            self._clear(s)
            if A[s, s] < 0:
                self._negate_row(s)

    def _clear(self, s: int) -> None:
        A = self._A
        while True:
            below = np.flatnonzero(A[s + 1 :, s] != 0)
            if len(below):
                i = s + 1 + int(below[0])
                self._add_rows(i, s, -(A[i, s] // A[s, s]))
                if A[i, s] != 0:
                    # remainder is smaller than the pivot in absolute value
                    self._swap_rows(s, i)
                continue
            right = np.flatnonzero(A[s, s + 1 :] != 0)
            if len(right):
                j = s + 1 + int(right[0])
                self._add_columns(j, s, -(A[s, j] // A[s, s]))
                if A[s, j] != 0:
                    self._swap_columns(s, j)
                continue
            rest = A[s + 1 :, s + 1 :]
            if rest.size:
                bad = np.argwhere(rest % A[s, s] != 0)
                if len(bad):
                    self._add_rows(s, s + 1 + int(bad[0][0]), 1)
                    continue
            return


def smith_normal_form(matrix: object) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Compute (U, S, V) with U·M·V = S, U and V unimodular.

    S is diagonal with non-negative entries d₁ | d₂ | …, zeros last.
    """
    form = SmithNormalForm(matrix)
    return form.left, form.snf, form.right


def invariant_factors(matrix: object) -> tuple[int, ...]:
    """The nonzero diagonal of the Smith normal form, without tracking transforms."""
    return tuple(d for d in SmithNormalForm(matrix, transforms=False).diagonal if d != 0)


def rank(matrix: object) -> int:
    return len(invariant_factors(matrix))


def integer_determinant(matrix: object) -> int:
    """Exact determinant of a square integer matrix."""
    array = as_integer_matrix(matrix)
    if array.shape[0] != array.shape[1]:
        raise exc.ValidationError("matrix", f"must be square, got shape {array.shape}")
    if array.shape[0] == 0:
        return 1
    return int(sympy.Matrix(array.tolist()).det())


def is_unimodular(matrix: object) -> bool:
    array = as_integer_matrix(matrix)
    return array.shape[0] == array.shape[1] and abs(integer_determinant(array)) == 1


def kernel_basis(matrix: object, *, columns: int | None = None) -> np.ndarray:
    """A basis of the integer kernel, as the columns of the returned matrix.

    Args:
        matrix: Integer matrix
        columns: Number of columns when the matrix has no rows
    """
    array = as_integer_matrix(matrix, shape=(0, columns or 0))
    form = SmithNormalForm(array)
    return form.right[:, form.rank :]


def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> tuple[tuple[int, ...], ...]:
    """Echelon basis of the lattice spanned by integer vectors.

    Pivots are positive and increase from row to row; entries above a pivot
    are reduced into [0, pivot).
    """
    pending = [[int(x) for x in v] for v in vectors]
    for v in pending:
        if len(v) != dim:
            raise exc.ValidationError("vectors", f"expected length {dim}, got {len(v)}")
    pending = [v for v in pending if any(v)]
    basis: list[list[int]] = []
    for col in range(dim):
        while True:
            hits = [v for v in pending if v[col] != 0]
            if len(hits) <= 1:
                break
            pivot = min(hits, key=lambda v: abs(v[col]))
            for v in hits:
                if v is not pivot:
                    q = v[col] // pivot[col]
                    for k in range(dim):
                        v[k] -= q * pivot[k]
            pending = [v for v in pending if any(v)]
        if not hits:
            continue
        row = hits[0]
        pending = [v for v in pending if v is not row]
        if row[col] < 0:
            row = [-x for x in row]
        for earlier in basis:
            q = earlier[col] // row[col]
            for k in range(dim):
                earlier[k] -= q * row[k]
        basis.append(row)
    return tuple(tuple(v) for v in basis)


def _pivot(row: Sequence[int]) -> int:
    return next(k for k, x in enumerate(row) if x != 0)


def solve_in_lattice(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of a vector in an echelon basis from `lattice_basis`.

    Raises:
        ValidationError: If the vector is not in the lattice
    """
    rest = [int(x) for x in vector]
    coords = []
    for row in basis:
        c = _pivot(row)
        q, r = divmod(rest[c], row[c])
        if r:
            raise exc.ValidationError("vector", f"{tuple(vector)} is not in the lattice")
        coords.append(q)
        rest = [a - q * b for a, b in zip(rest, row)]
    if any(rest):
        raise exc.ValidationError("vector", f"{tuple(vector)} is not in the lattice")
    return tuple(coords)


def reduce_modulo(vector: Sequence[int], basis: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Reduce a vector modulo a lattice so its pivot entries lie in [0, pivot)."""
    rest = [int(x) for x in vector]
    for row in basis:
        c = _pivot(row)
        q = rest[c] // row[c]
        rest = [a - q * b for a, b in zip(rest, row)]
    return tuple(rest)

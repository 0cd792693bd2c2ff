"""Bit-packed 0-1 matrices for set covering instances.

A matrix row is stored as one Python integer whose bit j (counting from 0)
is the entry in column j. Row overlaps then reduce to AND plus popcount,
which is what keeps the cubic-cost triple sums in the refinement module
affordable.

Rows and columns are 0-based throughout this module's API. File formats
and CLI output use 1-based indices; parse/serialize translate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError

__all__ = [
    "BinaryMatrix",
    "RowProfile",
    "OverlapTable",
    "from_rows",
    "parse_matrix",
    "serialize_matrix",
    "row_profile",
    "pair_overlap",
    "triple_overlap",
    "overlap_table",
    "permute",
    "column_masks",
]


@dataclass(frozen=True)
class BinaryMatrix:
    """Immutable m x n 0-1 matrix with bit-packed rows."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.m}x{self.n}")
        if len(self.rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(self.rows)}")
        mask = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row < 0 or row & ~mask:
                raise ValueError(f"row {i} has bits outside width {self.n}")

    def get(self, i: int, j: int) -> int:
        """Entry at row i, column j (0-based)."""
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise IndexError(f"entry ({i}, {j}) outside {self.m}x{self.n}")
        return (self.rows[i] >> j) & 1

    def row_ones(self, i: int) -> int:
        return self.rows[i].bit_count()

    def total_ones(self) -> int:
        return sum(r.bit_count() for r in self.rows)


@dataclass(frozen=True)
class RowProfile:
    """Per-row ones counts; densities are derived, never stored."""

    n: int
    ones: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.ones)

    def density(self, i: int) -> float:
        return self.ones[i] / self.n

    def densities(self) -> tuple[float, ...]:
        return tuple(d / self.n for d in self.ones)

    def density_exact(self, i: int) -> Fraction:
        return Fraction(self.ones[i], self.n)

    @property
    def max_density(self) -> float:
        return max(self.ones) / self.n

    @property
    def min_density(self) -> float:
        return min(self.ones) / self.n

    def zero_rows(self) -> tuple[int, ...]:
        """0-based indices of rows with no ones."""
        return tuple(i for i, d in enumerate(self.ones) if d == 0)


class OverlapTable:
    """Pairwise overlap counts |row_i AND row_j|, with a triple accessor.

    Pair counts are precomputed; triples are evaluated on demand from the
    stored rows. Densities are exposed as exact fractions so downstream
    count-based formulas never see rounded values.
    """

    def __init__(self, matrix: BinaryMatrix):
        self._rows = matrix.rows
        self.m = matrix.m
        self.n = matrix.n
        rows = matrix.rows
        self._pairs: list[list[int]] = [
            [(rows[i] & rows[j]).bit_count() for j in range(i + 1, self.m)]
            for i in range(self.m)
        ]

    def _norm2(self, i: int, j: int) -> tuple[int, int]:
        if i == j or not (0 <= i < self.m and 0 <= j < self.m):
            raise IndexError(f"need two distinct row indices in [0, {self.m}), got ({i}, {j})")
        return (i, j) if i < j else (j, i)

    def pair(self, i: int, j: int) -> int:
        i, j = self._norm2(i, j)
        return self._pairs[i][j - i - 1]

    def triple(self, i: int, j: int, k: int) -> int:
        if len({i, j, k}) != 3:
            raise IndexError(f"need three distinct row indices, got ({i}, {j}, {k})")
        self._norm2(i, j)
        self._norm2(j, k)
        return (self._rows[i] & self._rows[j] & self._rows[k]).bit_count()

    def pair_density(self, i: int, j: int) -> Fraction:
        return Fraction(self.pair(i, j), self.n)

    def triple_density(self, i: int, j: int, k: int) -> Fraction:
        return Fraction(self.triple(i, j, k), self.n)


def from_rows(bits: Iterable[str]) -> BinaryMatrix:
    """Build a matrix from strings of '0'/'1' characters (test convenience)."""
    rows = []
    width = None
    for line in bits:
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ValueError("ragged rows")
        rows.append(_bits_to_int(line))
    if not rows or not width:
        raise ValueError("need at least one non-empty row")
    return BinaryMatrix(len(rows), width, tuple(rows))


def _bits_to_int(chars: str) -> int:
    value = 0
    for j, ch in enumerate(chars):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid character {ch!r}")
    return value


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse an instance in the dense or sparse format.

    Dense: header "m n", then m lines of exactly n characters from {0,1}.
    Sparse: header "m n", then m lines "i: j1 j2 ..." with strictly
    increasing 1-based column indices ("i:" for an empty row).
    Lines starting with '#' and blank lines are ignored.
    """
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty input")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"header must be 'm n', got {header!r}", header_no)
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"header must be two integers, got {header!r}", header_no) from None
    if m < 1 or n < 1:
        raise ParseError(f"dimensions must be positive, got {m} {n}", header_no)

    body = lines[1:]
    if len(body) < m:
        raise ParseError(f"expected {m} rows, found {len(body)}", lines[-1][0])
    if len(body) > m:
        raise ParseError("trailing content after last row", body[m][0])

    sparse = ":" in body[0][1]
    rows = []
    for idx, (no, line) in enumerate(body):
        if sparse != (":" in line):
            raise ParseError("mixed dense and sparse rows", no)
        rows.append(_parse_sparse_row(line, idx, n, no) if sparse else _parse_dense_row(line, n, no))
    return BinaryMatrix(m, n, tuple(rows))


def _parse_dense_row(line: str, n: int, no: int) -> int:
    if len(line) != n:
        raise ParseError(f"row has {len(line)} characters, expected {n}", no)
    try:
        return _bits_to_int(line)
    except ValueError as exc:
        raise ParseError(str(exc), no) from None


def _parse_sparse_row(line: str, idx: int, n: int, no: int) -> int:
    head, _, tail = line.partition(":")
    try:
        row_label = int(head)
    except ValueError:
        raise ParseError(f"row label must be an integer, got {head!r}", no) from None
    if row_label != idx + 1:
        raise ParseError(f"expected row {idx + 1}, got row {row_label}", no)
    value = 0
    prev = 0
    for token in tail.split():
        try:
            col = int(token)
        except ValueError:
            raise ParseError(f"column index must be an integer, got {token!r}", no) from None
        if not 1 <= col <= n:
            raise ParseError(f"column index {col} outside 1..{n}", no)
        if col <= prev:
            raise ParseError(f"column indices must be strictly increasing at {col}", no)
        prev = col
        value |= 1 << (col - 1)
    return value


def serialize_matrix(matrix: BinaryMatrix, fmt: str = "dense") -> str:
    """Serialize to the dense or sparse format; re-parses to an equal matrix."""
    out = [f"{matrix.m} {matrix.n}"]
    if fmt == "dense":
        for row in matrix.rows:
            out.append("".join("1" if (row >> j) & 1 else "0" for j in range(matrix.n)))
    elif fmt == "sparse":
        for i, row in enumerate(matrix.rows, start=1):
            cols = [str(j + 1) for j in range(matrix.n) if (row >> j) & 1]
            out.append(f"{i}: {' '.join(cols)}" if cols else f"{i}:")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(out) + "\n"


def row_profile(matrix: BinaryMatrix) -> RowProfile:
    """Ones count per row. Zero rows are allowed here; bounds reject them."""
    return RowProfile(matrix.n, tuple(r.bit_count() for r in matrix.rows))


def pair_overlap(matrix: BinaryMatrix, i: int, j: int) -> int:
    """Number of columns where rows i and j (0-based, distinct) both have a 1."""
    if i == j or not (0 <= i < matrix.m and 0 <= j < matrix.m):
        raise IndexError(f"need two distinct row indices in [0, {matrix.m}), got ({i}, {j})")
    return (matrix.rows[i] & matrix.rows[j]).bit_count()


def triple_overlap(matrix: BinaryMatrix, i: int, j: int, k: int) -> int:
    """Number of columns where rows i, j and k all have a 1."""
    if len({i, j, k}) != 3 or not all(0 <= x < matrix.m for x in (i, j, k)):
        raise IndexError(f"need three distinct row indices in [0, {matrix.m}), got ({i}, {j}, {k})")
    return (matrix.rows[i] & matrix.rows[j] & matrix.rows[k]).bit_count()


def overlap_table(matrix: BinaryMatrix) -> OverlapTable:
    return OverlapTable(matrix)


def _check_permutation(perm: Sequence[int], size: int, what: str) -> None:
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise ValueError(f"{what} is not a permutation of 0..{size - 1}")


def permute(matrix: BinaryMatrix, row_perm: Sequence[int], col_perm: Sequence[int]) -> BinaryMatrix:
    """Reindexed copy: result[i][j] = matrix[row_perm[i]][col_perm[j]]."""
    _check_permutation(row_perm, matrix.m, "row_perm")
    _check_permutation(col_perm, matrix.n, "col_perm")
    rows = []
    for i in range(matrix.m):
        src = matrix.rows[row_perm[i]]
        rows.append(sum(((src >> col_perm[j]) & 1) << j for j in range(matrix.n)))
    return BinaryMatrix(matrix.m, matrix.n, tuple(rows))


def column_masks(matrix: BinaryMatrix) -> tuple[int, ...]:
    """Column-major view: mask j has bit i set iff matrix[i][j] = 1."""
    masks = [0] * matrix.n
    for i, row in enumerate(matrix.rows):
        bit = 1 << i
        while row:
            j = (row & -row).bit_length() - 1
            masks[j] |= bit
            row &= row - 1
    return tuple(masks)

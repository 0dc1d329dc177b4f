"""Core domain types: array parameters, column-major arrays, balance vectors,
subset and tuple enumeration, and the on-disk text format."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

ColumnSubset = tuple[int, ...]  # strictly increasing column indices


class ArrayFormatError(ValueError):
    """Raised when array text cannot be parsed into a valid array."""


@dataclass(frozen=True)
class CaParams:
    """The (N, t, k, v, lambda) tuple identifying a covering-array specification."""

    rows: int
    strength: int
    cols: int
    alphabet: int
    index: int = 1

    def __post_init__(self):
        if self.rows < 1:
            raise ValueError(f"rows must be positive, got {self.rows}")
        if self.strength < 1:
            raise ValueError(f"strength must be >= 1, got {self.strength}")
        if self.cols < 0:
            raise ValueError(f"cols must be >= 0, got {self.cols}")
        if self.alphabet < 2:
            raise ValueError(f"alphabet must be >= 2, got {self.alphabet}")
        if self.index < 1:
            raise ValueError(f"index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class BalanceVectors:
    """Per-size lower (alpha) and upper (beta) tuple-multiplicity bounds."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if len(self.alpha) != len(self.beta):
            raise ValueError(
                f"alpha and beta must have equal length, got {len(self.alpha)} and {len(self.beta)}"
            )
        if not self.alpha:
            raise ValueError("balance vectors must be non-empty")
        for i, (a, b) in enumerate(zip(self.alpha, self.beta)):
            if a < 0 or b < 0:
                raise ValueError(f"balance bounds must be non-negative at position {i}")
            if a > b:
                raise ValueError(f"alpha[{i}]={a} exceeds beta[{i}]={b}")

    @property
    def strength(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class Array:
    """An N x k matrix over {0,..,v-1}, stored column-major and immutable.

    Columns are the unit of work: searches extend arrays one column at a
    time, so copy-and-extend is the only mutation idiom.
    """

    columns: tuple[tuple[int, ...], ...]
    alphabet: int
    n_rows: int = field(init=False)

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if self.alphabet < 2:
            raise ValueError(f"alphabet must be >= 2, got {self.alphabet}")
        if cols:
            n = len(cols[0])
        else:
            n = 0
        for j, col in enumerate(cols):
            if len(col) != n:
                raise ValueError(f"column {j} has {len(col)} entries, expected {n}")
            for x in col:
                if not 0 <= x < self.alphabet:
                    raise ValueError(f"symbol {x} in column {j} outside [0, {self.alphabet})")
        object.__setattr__(self, "n_rows", n)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], alphabet: int) -> "Array":
        row_list = [tuple(r) for r in rows]
        if not row_list:
            raise ValueError("array needs at least one row")
        return cls(tuple(zip(*row_list)), alphabet)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.columns)) if self.columns else ()

    def row_sorted(self) -> "Array":
        """Copy with rows reordered lexicographically ascending."""
        if self.n_cols == 0:
            return self
        return Array.from_rows(sorted(self.rows()), self.alphabet)

    def append_column(self, col: Iterable[int]) -> "Array":
        return Array(self.columns + (tuple(col),), self.alphabet)

    def select_columns(self, indices: Iterable[int]) -> "Array":
        return Array(tuple(self.columns[j] for j in indices), self.alphabet)

    def packed_columns(self) -> tuple[int, ...]:
        """Binary columns packed as integers, bit (N-1-r) holding row r.

        Derived representation only; numeric order of the packed words
        matches lexicographic order of the column tuples.
        """
        if self.alphabet != 2:
            raise ValueError("packed representation requires a binary alphabet")
        return tuple(pack_column(c) for c in self.columns)


def pack_column(col: Iterable[int]) -> int:
    word = 0
    for x in col:
        word = (word << 1) | x
    return word


def unpack_column(word: int, n_rows: int) -> tuple[int, ...]:
    return tuple((word >> (n_rows - 1 - r)) & 1 for r in range(n_rows))


def enumerate_subsets(k: int, size: int) -> Iterator[ColumnSubset]:
    """All size-subsets of columns {0,..,k-1} in lexicographic order."""
    return itertools.combinations(range(k), size)


def row_tuple(a: Array, row: int, subset: ColumnSubset) -> int:
    """Mixed-radix code of the row's tuple on the subset, in [0, v^i)."""
    code = 0
    for j in subset:
        code = code * a.alphabet + a.columns[j][row]
    return code


def decode_tuple(code: int, size: int, alphabet: int) -> tuple[int, ...]:
    """Inverse of row_tuple's encoding for a tuple of the given size."""
    digits = []
    for _ in range(size):
        code, d = divmod(code, alphabet)
        digits.append(d)
    return tuple(reversed(digits))


def parse_array(text: str) -> Array:
    """Parse the text format: header "N k v", then N rows of k symbols.

    Lines starting with '#' are comments; trailing whitespace is tolerated.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ArrayFormatError("empty array text")
    header = lines[0].split()
    if len(header) != 3:
        raise ArrayFormatError(f"header must be 'N k v', got {lines[0]!r}")
    try:
        n, k, v = (int(x) for x in header)
    except ValueError as exc:
        raise ArrayFormatError(f"non-integer header field in {lines[0]!r}") from exc
    if len(lines) - 1 != n:
        raise ArrayFormatError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            row = tuple(int(x) for x in ln.split())
        except ValueError as exc:
            raise ArrayFormatError(f"non-integer symbol in row {ln!r}") from exc
        if len(row) != k:
            raise ArrayFormatError(f"row {ln!r} has {len(row)} entries, expected {k}")
        rows.append(row)
    try:
        return Array.from_rows(rows, v)
    except ValueError as exc:
        raise ArrayFormatError(str(exc)) from exc


def format_array(a: Array) -> str:
    out = [f"{a.n_rows} {a.n_cols} {a.alphabet}"]
    for row in a.rows():
        out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


def read_array(path) -> Array:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_array(fh.read())


def write_array(path, a: Array) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_array(a))

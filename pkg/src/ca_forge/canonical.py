"""Lex-leader canonical forms under the covering-array equivalence group:
row permutations x column permutations x per-column symbol permutations.

Row permutations are factored out by row-sorting, which shrinks the searched
group from N!*k!*(v!)^k to k!*(v!)^k.  Candidate images are compared by the
column-major reading of the row-sorted matrix.  With that reading, choosing
image columns left to right yields exact comparison prefixes, so branches
prune the moment a partial image differs from the reference, and deleting
the last column of a canonical array provably yields a canonical array
(the parent map that orderly generation relies on).

The search state is an ordered partition of rows: rows in one block are
tied (equal image prefix) and may still be reordered freely.  Appending an
image column reads out, per block, the chosen column's values in ascending
order, and splits blocks by value.  Binary alphabets get a packed fast
path: blocks are bitmasks, a readout within a block is 0^z 1^o, and readout
comparison reduces to comparing per-block popcounts.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .model import Array

Partition = tuple[tuple[int, ...], ...]


def _mapped_variants(columns: Sequence[Sequence[int]], v: int) -> list[list[tuple[int, ...]]]:
    """All distinct per-column images under symbol permutations."""
    perms = list(itertools.permutations(range(v)))
    out = []
    for col in columns:
        seen = {tuple(p[x] for x in col) for p in perms}
        out.append(sorted(seen))
    return out


def _readout(col: Sequence[int], partition: Partition, v: int):
    """Column read in final row order: per block, values ascending.

    Returns (readout tuple, refined partition).
    """
    readout: list[int] = []
    refined: list[tuple[int, ...]] = []
    for block in partition:
        if len(block) == 1:
            r = block[0]
            readout.append(col[r])
            refined.append(block)
            continue
        buckets: list[list[int]] = [[] for _ in range(v)]
        for r in block:
            buckets[col[r]].append(r)
        for val in range(v):
            rows = buckets[val]
            if rows:
                readout.extend([val] * len(rows))
                refined.append(tuple(rows))
    return tuple(readout), tuple(refined)


def _min_columns_generic(columns, v: int):
    """Orbit-minimum matrix as a tuple of columns (any alphabet size).

    Depth-first search over image columns; at each node only the choices
    achieving the minimal readout can start the minimal completion, so all
    others are pruned.  States reached along different tie branches often
    coincide, hence the memo on (available columns, partition).
    """
    k = len(columns)
    n = len(columns[0])
    variants = _mapped_variants(columns, v)
    memo: dict = {}

    def best_suffix(avail: frozenset, partition: Partition) -> tuple:
        if not avail:
            return ()
        key = (avail, partition)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best_read = None
        children = []
        for s in sorted(avail):
            for mv in variants[s]:
                read, refined = _readout(mv, partition, v)
                if best_read is None or read < best_read:
                    best_read = read
                    children = [(s, refined)]
                elif read == best_read:
                    children.append((s, refined))
        best_rest = None
        for s, refined in children:
            rest = best_suffix(avail - {s}, refined)
            if best_rest is None or rest < best_rest:
                best_rest = rest
        result = (best_read,) + best_rest
        memo[key] = result
        return result

    root: Partition = (tuple(range(n)),)
    return best_suffix(frozenset(range(k)), root)


def _smaller_exists_generic(columns, v: int) -> bool:
    """True iff some image compares strictly below the matrix itself."""
    k = len(columns)
    n = len(columns[0])
    variants = _mapped_variants(columns, v)
    memo: dict = {}

    def smaller(avail: frozenset, partition: Partition, depth: int) -> bool:
        if not avail:
            return False
        key = (avail, partition)
        hit = memo.get(key)
        if hit is not None:
            return hit
        ref = columns[depth]
        result = False
        for s in sorted(avail):
            for mv in variants[s]:
                read, refined = _readout(mv, partition, v)
                if read < ref:
                    result = True
                    break
                if read == ref and smaller(avail - {s}, refined, depth + 1):
                    result = True
                    break
            if result:
                break
        memo[key] = result
        return result

    root: Partition = (tuple(range(n)),)
    return smaller(frozenset(range(k)), root, 0)


# -- binary fast path ---------------------------------------------------------
#
# Rows are bits of an int mask (bit r = row r).  A partition is a tuple of
# disjoint masks covering all rows, in final row order.  For a candidate
# column word c, the readout inside a block b is 0^z 1^o with o =
# popcount(b & c), so comparing readouts is comparing the per-block
# popcount vectors, and refinement is (b & ~c, b & c).


def _pack_lsb(col) -> int:
    word = 0
    for r, x in enumerate(col):
        word |= x << r
    return word


def _bin_variants(columns) -> list[list[int]]:
    n = len(columns[0])
    full = (1 << n) - 1
    out = []
    for col in columns:
        w = _pack_lsb(col)
        out.append(sorted({w, w ^ full}))
    return out


def _bin_readout_key(word: int, partition: tuple[int, ...]) -> tuple[int, ...]:
    return tuple((word & b).bit_count() for b in partition)


def _bin_refine(word: int, partition: tuple[int, ...]) -> tuple[int, ...]:
    refined = []
    for b in partition:
        ones = b & word
        zeros = b & ~word
        if zeros:
            refined.append(zeros)
        if ones:
            refined.append(ones)
    return tuple(refined)


def _expand_key(key: tuple[int, ...], sizes: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for ones, size in zip(key, sizes):
        out.extend([0] * (size - ones))
        out.extend([1] * ones)
    return tuple(out)


def _min_columns_binary(columns):
    k = len(columns)
    n = len(columns[0])
    variants = _bin_variants(columns)
    memo: dict = {}

    def best_suffix(avail: frozenset, partition: tuple[int, ...]) -> tuple:
        if not avail:
            return ()
        state = (avail, partition)
        hit = memo.get(state)
        if hit is not None:
            return hit
        best_key = None
        children = []
        for s in sorted(avail):
            for w in variants[s]:
                if best_key is None:
                    best_key = _bin_readout_key(w, partition)
                    children = [(s, w)]
                    continue
                # Lazy blockwise comparison; most candidates lose early.
                partial = []
                verdict = 0
                for i, b in enumerate(partition):
                    c = (w & b).bit_count()
                    partial.append(c)
                    if c != best_key[i]:
                        verdict = -1 if c < best_key[i] else 1
                        break
                if verdict > 0:
                    continue
                if verdict == 0:
                    children.append((s, w))
                else:
                    for b in partition[len(partial):]:
                        partial.append((w & b).bit_count())
                    best_key = tuple(partial)
                    children = [(s, w)]
        best_rest = None
        seen_children = set()
        for s, w in children:
            refined = _bin_refine(w, partition)
            child = (s, refined)
            if child in seen_children:
                continue
            seen_children.add(child)
            rest = best_suffix(avail - {s}, refined)
            if best_rest is None or rest < best_rest:
                best_rest = rest
        sizes = tuple(b.bit_count() for b in partition)
        result = (_expand_key(best_key, sizes),) + best_rest
        memo[state] = result
        return result

    root = ((1 << n) - 1,)
    return best_suffix(frozenset(range(k)), root)


def _smaller_exists_binary(columns) -> bool:
    k = len(columns)
    n = len(columns[0])
    variants = _bin_variants(columns)
    # Per depth: first-one index and ones prefix sums of the reference column,
    # so a candidate block readout compares against the reference in O(1).
    nxt1 = []
    pre1 = []
    for col in columns:
        pre = [0]
        for x in col:
            pre.append(pre[-1] + x)
        pre1.append(pre)
        nx = [n] * (n + 1)
        for r in range(n - 1, -1, -1):
            nx[r] = r if col[r] else nx[r + 1]
        nxt1.append(nx)
    memo: dict = {}

    def smaller(avail: frozenset, partition: tuple[int, ...], depth: int) -> bool:
        if not avail:
            return False
        state = (avail, partition)
        hit = memo.get(state)
        if hit is not None:
            return hit
        pre = pre1[depth]
        nxt = nxt1[depth]
        sizes = [b.bit_count() for b in partition]
        result = False
        for s in sorted(avail):
            if result:
                break
            for w in variants[s]:
                # Compare candidate readout against reference column blockwise.
                pos = 0
                verdict = 0  # -1 smaller, 0 equal so far, +1 larger
                for b, size in zip(partition, sizes):
                    z = size - (b & w).bit_count()
                    seg_lead0 = min(nxt[pos], pos + size) - pos
                    if seg_lead0 > z:
                        verdict = 1  # ref has 0 where readout has 1
                        break
                    if seg_lead0 < z:
                        verdict = -1  # readout has 0 where ref has 1
                        break
                    if pre[pos + size] - pre[pos] != size - z:
                        verdict = 1  # ref falls back to 0 after its first 1
                        break
                    pos += size
                if verdict == -1:
                    result = True
                    break
                if verdict == 0 and smaller(avail - {s}, _bin_refine(w, partition), depth + 1):
                    result = True
                    break
        memo[state] = result
        return result

    root = ((1 << n) - 1,)
    return smaller(frozenset(range(k)), root, 0)


# -- public operations --------------------------------------------------------


def canonical_form(a: Array) -> Array:
    """The orbit-minimum representative of a's equivalence class."""
    if a.n_cols == 0:
        return a
    if a.alphabet == 2:
        cols = _min_columns_binary(a.columns)
    else:
        cols = _min_columns_generic(a.columns, a.alphabet)
    return Array(cols, a.alphabet)


def is_lex_leader(a: Array) -> bool:
    """True iff a equals its own canonical form.

    Runs the image search against a itself as the reference, answering as
    soon as any strictly smaller image prefix turns up; branches whose
    prefix is already larger are dropped immediately.
    """
    if a.n_cols == 0:
        return True
    if a.rows() != tuple(sorted(a.rows())):
        return False  # canonical forms are row-sorted
    if a.alphabet == 2:
        return not _smaller_exists_binary(a.columns)
    return not _smaller_exists_generic(a.columns, a.alphabet)


def are_equivalent(a: Array, b: Array) -> bool:
    """True iff the two arrays lie in the same equivalence orbit."""
    if (a.n_rows, a.n_cols, a.alphabet) != (b.n_rows, b.n_cols, b.alphabet):
        raise ValueError(
            f"shape mismatch: {(a.n_rows, a.n_cols, a.alphabet)} vs {(b.n_rows, b.n_cols, b.alphabet)}"
        )
    return canonical_form(a) == canonical_form(b)


def apply_group_element(
    a: Array,
    row_perm: Sequence[int],
    col_perm: Sequence[int],
    symbol_maps: Sequence[Sequence[int]],
) -> Array:
    """Image of a under (row permutation, column permutation, per-column
    symbol permutations); symbol_maps[j] applies to output column j."""
    cols = []
    for j in range(a.n_cols):
        src = a.columns[col_perm[j]]
        m = symbol_maps[j]
        cols.append(tuple(m[src[row_perm[r]]] for r in range(a.n_rows)))
    return Array(tuple(cols), a.alphabet)


def random_group_element(n_rows: int, n_cols: int, v: int, rng: random.Random):
    """A uniformly random (row_perm, col_perm, symbol_maps) triple."""
    row_perm = list(range(n_rows))
    rng.shuffle(row_perm)
    col_perm = list(range(n_cols))
    rng.shuffle(col_perm)
    maps = []
    for _ in range(n_cols):
        m = list(range(v))
        rng.shuffle(m)
        maps.append(tuple(m))
    return tuple(row_perm), tuple(col_perm), tuple(maps)

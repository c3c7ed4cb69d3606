"""k-bit Gray codes as Hamiltonian paths of the k-cube graph.

A Gray code here is a k x 2^k binary matrix whose columns run through all of
{0,1}^k, consecutive columns differing in a single bit.  There is no
wrap-around condition.  Codes are stored by their start column and the
sequence of flipped row indices; row ``r`` of a column is bit ``r`` of the
integer used internally for cube vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .errors import ParameterError, ResourceError

MAX_K = 6
# full lists of codes are only materialized up to this k (k=5 has ~5.9e9 paths per start)
MATERIALIZE_MAX_K = 4

Column = tuple[int, ...]


def check_k(k) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1 or k > MAX_K:
        raise ParameterError(f"k must be an integer in 1..{MAX_K}, got {k!r}")
    return k


def as_column(col, k: int) -> Column:
    """Coerce ``'010'``, ``[0, 1, 0]`` or ``(0, 1, 0)`` into a bit tuple of length k."""
    if isinstance(col, str):
        col = col.strip()
        if any(ch not in "01" for ch in col):
            raise ParameterError(f"bit column must consist of 0/1, got {col!r}")
        bits = tuple(int(ch) for ch in col)
    else:
        bits = tuple(int(b) for b in col)
        if any(b not in (0, 1) for b in bits):
            raise ParameterError(f"bit column must consist of 0/1, got {col!r}")
    if len(bits) != k:
        raise ParameterError(f"bit column {col!r} does not have length {k}")
    return bits


def column_to_int(col: Sequence[int]) -> int:
    return sum(b << r for r, b in enumerate(col))


def int_to_column(v: int, k: int) -> Column:
    return tuple((v >> r) & 1 for r in range(k))


def column_str(col: Sequence[int]) -> str:
    return "".join(map(str, col))


@dataclass(frozen=True)
class GrayCode:
    k: int
    start: Column
    flips: tuple[int, ...]

    @classmethod
    def from_vertices(cls, k: int, vertices: Sequence[int]) -> "GrayCode":
        flips = tuple((a ^ b).bit_length() - 1 for a, b in zip(vertices, vertices[1:]))
        return cls(k, int_to_column(vertices[0], k), flips)

    @classmethod
    def from_rows(cls, rows) -> "GrayCode":
        rows = _as_rows(rows)
        if not is_gray_code(rows):
            raise ParameterError("matrix is not a Gray code")
        k = len(rows)
        cols = list(zip(*rows))
        return cls.from_vertices(k, [column_to_int(c) for c in cols])

    @classmethod
    def parse(cls, text: str, start="") -> "GrayCode":
        """Read the comma-separated flip serialization or k lines of bits."""
        text = text.strip()
        if "," in text or text == "0":
            flips = tuple(int(t) for t in text.split(","))
            k = (len(flips) + 1).bit_length() - 1
            if len(flips) != 2**k - 1:
                raise ParameterError("flip sequence length must be 2^k - 1")
            check_k(k)
            code = cls(k, as_column(start or "0" * k, k), flips)
            if any(f < 0 or f >= k for f in flips) or not is_gray_code(code.rows):
                raise ParameterError("flip sequence is not a Hamiltonian path")
            return code
        return cls.from_rows(text.split())

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        v = column_to_int(self.start)
        out = [v]
        for f in self.flips:
            v ^= 1 << f
            out.append(v)
        return tuple(out)

    @property
    def columns(self) -> tuple[Column, ...]:
        return tuple(int_to_column(v, self.k) for v in self.vertices)

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple((v >> r) & 1 for v in self.vertices) for r in range(self.k))

    @property
    def end(self) -> Column:
        return int_to_column(self.vertices[-1], self.k)

    @cached_property
    def transitions(self) -> tuple[int, ...]:
        counts = [0] * self.k
        for f in self.flips:
            counts[f] += 1
        return tuple(counts)

    def flip_string(self) -> str:
        return ",".join(map(str, self.flips))

    def to_text(self) -> str:
        return "\n".join(column_str(r) for r in self.rows)


def _as_rows(m) -> tuple[tuple[int, ...], ...]:
    if isinstance(m, str):
        m = m.split()
    rows = []
    for row in m:
        if isinstance(row, str):
            row = row.replace(" ", "")
            if any(ch not in "01" for ch in row):
                raise ParameterError(f"row {row!r} is not binary")
            rows.append(tuple(int(ch) for ch in row))
        else:
            r = tuple(int(b) for b in row)
            if any(b not in (0, 1) for b in r):
                raise ParameterError(f"row {row!r} is not binary")
            rows.append(r)
    if not rows or not rows[0]:
        raise ParameterError("matrix must be non-empty")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParameterError("rows have unequal lengths")
    return tuple(rows)


def transition_counts(m) -> tuple[int, ...]:
    """Per-row number of adjacent unequal entries, no wrap-around."""
    rows = _as_rows(m)
    return tuple(sum(a != b for a, b in zip(r, r[1:])) for r in rows)


def is_gray_code(m) -> bool:
    rows = _as_rows(m)
    k = len(rows)
    if len(rows[0]) != 2**k:
        raise ParameterError(f"a {k}-bit Gray code needs {2**k} columns, got {len(rows[0])}")
    cols = [column_to_int(c) for c in zip(*rows)]
    if len(set(cols)) != len(cols):
        return False
    return all(bin(a ^ b).count("1") == 1 for a, b in zip(cols, cols[1:]))


def iter_gray_codes(k: int, start="") -> Iterator[GrayCode]:
    """Yield Hamiltonian paths from ``start`` in lexicographic order of flip sequences."""
    check_k(k)
    start = as_column(start or "0" * k, k)
    n = 1 << k
    seen = bytearray(n)
    flips: list[int] = []

    def walk(v):
        if len(flips) == n - 1:
            yield GrayCode(k, start, tuple(flips))
            return
        for f in range(k):
            u = v ^ (1 << f)
            if not seen[u]:
                seen[u] = 1
                flips.append(f)
                yield from walk(u)
                flips.pop()
                seen[u] = 0

    v0 = column_to_int(start)
    seen[v0] = 1
    yield from walk(v0)


def enumerate_gray_codes(k: int, start="") -> list[GrayCode]:
    if check_k(k) > MATERIALIZE_MAX_K:
        raise ResourceError(f"cannot list all {k}-bit Gray codes; use iter_gray_codes")
    return list(iter_gray_codes(k, start))


@lru_cache(maxsize=None)
def codes_from(k: int, v0: int) -> tuple[GrayCode, ...]:
    """Memoized enumeration keyed by the start vertex as an integer."""
    if k > MATERIALIZE_MAX_K:
        raise ResourceError(f"cannot store all {k}-bit Gray codes; the limit is k={MATERIALIZE_MAX_K}")
    return tuple(iter_gray_codes(k, int_to_column(v0, k)))


@dataclass(frozen=True)
class GrayClass:
    representative: GrayCode
    members: tuple[GrayCode, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def transition_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.representative.transitions, reverse=True))


def _class_key(code: GrayCode) -> tuple:
    # rows permuted, then each row inverted where needed to restore the start column
    best = None
    for perm in permutations(range(code.k)):
        rows = tuple(
            tuple(b ^ code.rows[p][0] ^ code.start[i] for b in code.rows[p])
            for i, p in enumerate(perm)
        )
        if best is None or rows < best:
            best = rows
    return best


def gray_classes(k: int, start="") -> list[GrayClass]:
    """Partition the codes from ``start`` into row-permutation classes."""
    codes = enumerate_gray_codes(k, start)
    groups: dict[tuple, list[GrayCode]] = {}
    for code in codes:
        groups.setdefault(_class_key(code), []).append(code)
    out = []
    for key in sorted(groups):
        members = groups[key]
        rep = GrayCode.from_rows(key)
        out.append(GrayClass(rep, tuple(members)))
    return out

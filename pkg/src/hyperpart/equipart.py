"""Equiparting matrices: chained Gray codes with prescribed row transition counts.

Two matrices are equivalent when one arises from the other by permuting rows
and inverting rows.  Classes are produced two ways:

* ``enumerate_classes`` searches chains of Gray-code blocks with the first
  column fixed to zero and keeps only matrices whose rows are already in
  increasing order (the canonical member of each class);
* ``count_classes`` is a transfer-matrix fold over (end column, accumulated
  transition vector) states, divided by k! at the end.

The division is exact because a Gray code never has two equal rows, so row
permutations act freely on first-column-normalized matrices.
"""

from __future__ import annotations

import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

from .errors import InvariantError, ParameterError, ResourceError
from .graycode import (
    MAX_K,
    GrayCode,
    _as_rows,
    as_column,
    codes_from,
    column_str,
    column_to_int,
    int_to_column,
    is_gray_code,
    transition_counts,
)

DEFAULT_CLASS_CAP = 10**6


def class_cap() -> int:
    env = os.environ.get("EQUIPART_CLASS_CAP")
    return int(env) if env else DEFAULT_CLASS_CAP


@dataclass(frozen=True)
class ParamTriple:
    j: int
    k: int
    d: int
    ell: int

    def __post_init__(self):
        for name in ("j", "k", "d", "ell"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParameterError(f"{name} must be an integer, got {v!r}")
        if self.j < 1 or self.k < 1 or self.d < 1 or self.ell < 0:
            raise ParameterError(f"j, k, d must be positive and ell non-negative: {self}")
        if self.k > MAX_K:
            raise ParameterError(f"k={self.k} exceeds the supported cap {MAX_K}")
        if self.d * self.k != (2**self.k - 1) * self.j + self.ell:
            raise ParameterError(f"d*k != (2^k-1)*j + ell for {self}")
        if self.ell > self.d - 1:
            raise ParameterError(f"ell must be at most d-1: {self}")

    @property
    def width(self) -> int:
        return self.j * 2**self.k

    @property
    def target(self) -> tuple[int, ...]:
        """Sorted transition-count multiset every valid matrix must have."""
        return tuple(sorted([self.d - self.ell] + [self.d] * (self.k - 1)))

    def as_dict(self) -> dict:
        return {"j": self.j, "k": self.k, "d": self.d, "ell": self.ell}


@dataclass(frozen=True)
class EquipartingMatrix:
    params: ParamTriple
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = _as_rows(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.params.k or len(rows[0]) != self.params.width:
            raise ParameterError(
                f"expected {self.params.k} rows of length {self.params.width}, "
                f"got {len(rows)} x {len(rows[0])}"
            )

    @property
    def k(self) -> int:
        return self.params.k

    def block(self, i: int) -> tuple[tuple[int, ...], ...]:
        n = 2**self.k
        return tuple(r[i * n:(i + 1) * n] for r in self.rows)

    def blocks(self):
        return [self.block(i) for i in range(self.params.j)]

    @property
    def transitions(self) -> tuple[int, ...]:
        return transition_counts(self.rows)

    @property
    def first_column(self) -> tuple[int, ...]:
        return tuple(r[0] for r in self.rows)

    def to_text(self, sep: str = " ") -> str:
        n = 2**self.k
        lines = []
        for r in self.rows:
            s = column_str(r)
            lines.append(sep.join(s[i:i + n] for i in range(0, len(s), n)))
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({**self.params.as_dict(), "rows": [column_str(r) for r in self.rows]})

    @classmethod
    def from_json(cls, text: str | dict) -> "EquipartingMatrix":
        obj = json.loads(text) if isinstance(text, str) else text
        try:
            params = ParamTriple(int(obj["j"]), int(obj["k"]), int(obj["d"]), int(obj["ell"]))
            rows = obj["rows"]
        except KeyError as exc:
            raise ParameterError(f"matrix JSON lacks field {exc}") from None
        return cls(params, rows)

    @classmethod
    def from_text(cls, text: str, params: ParamTriple | None = None) -> "EquipartingMatrix":
        """Read k lines of bits; spaces are ignored.

        Without ``params`` the triple is inferred: j from the width, d as the
        largest row transition count, ell from d*k = (2^k-1)*j + ell.
        """
        lines = [ln.replace(" ", "") for ln in text.strip().splitlines() if ln.strip()]
        rows = _as_rows(lines)
        if params is None:
            k = len(rows)
            if k > MAX_K or len(rows[0]) % 2**k:
                raise ParameterError(f"width {len(rows[0])} is not a multiple of 2^{k}")
            j = len(rows[0]) // 2**k
            d = max(transition_counts(rows))
            params = ParamTriple(j, k, d, d * k - (2**k - 1) * j)
        return cls(params, rows)

    @classmethod
    def from_codes(cls, params: ParamTriple, codes) -> "EquipartingMatrix":
        rows = tuple(sum((c.rows[r] for c in codes), ()) for r in range(params.k))
        return cls(params, rows)


@dataclass(frozen=True)
class Diagnostic:
    ok: bool
    clause: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(m: EquipartingMatrix) -> Diagnostic:
    """Check the block, chaining and transition-count clauses, in that order."""
    p = m.params
    blocks = m.blocks()
    for i, b in enumerate(blocks):
        if not is_gray_code(b):
            return Diagnostic(False, "gray", f"block {i + 1} is not a Gray code")
    for i in range(p.j - 1):
        last = tuple(r[-1] for r in blocks[i])
        first = tuple(r[0] for r in blocks[i + 1])
        if last != first:
            return Diagnostic(False, "chain", f"chaining break between blocks {i + 1} and {i + 2}")
    tc = tuple(sorted(m.transitions))
    if tc != p.target:
        return Diagnostic(
            False, "transitions", f"transition counts {m.transitions} do not match {p.target}"
        )
    return Diagnostic(True)


def normalize(m: EquipartingMatrix) -> EquipartingMatrix:
    """Invert the rows whose first bit is 1."""
    rows = tuple(tuple(b ^ r[0] for b in r) for r in m.rows)
    return EquipartingMatrix(m.params, rows)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: str
    rows: tuple[tuple[int, ...], ...]

    def matrix(self, params: ParamTriple) -> EquipartingMatrix:
        return EquipartingMatrix(params, self.rows)


def canonical_form(m: EquipartingMatrix) -> CanonicalForm:
    # all rows have equal length, so the least row-concatenation is the sorted row order
    rows = tuple(sorted(normalize(m).rows))
    return CanonicalForm("".join(column_str(r) for r in rows), rows)


def canonical_form_bruteforce(m: EquipartingMatrix) -> CanonicalForm:
    rows = normalize(m).rows
    best = min(
        ("".join(column_str(rows[i]) for i in perm), perm) for perm in permutations(range(len(rows)))
    )
    return CanonicalForm(best[0], tuple(rows[i] for i in best[1]))


@lru_cache(maxsize=None)
def _max_row_transitions(k: int) -> int:
    return max(max(c.transitions) for c in codes_from(k, 0))


def _search(p: ParamTriple, first: tuple[GrayCode, ...], cap: int) -> list[tuple[GrayCode, ...]]:
    k, j, d, ell = p.k, p.j, p.d, p.ell
    target = list(p.target)
    max_row = _max_row_transitions(k)
    found: list[tuple[GrayCode, ...]] = []
    counts = [0] * k
    # order[r] is True once row r is known to be strictly below row r+1
    order = [False] * (k - 1)
    chain: list[GrayCode] = []

    def rec(v: int, depth: int):
        if depth == j:
            if sorted(counts) == target:
                found.append(tuple(chain))
                if len(found) > cap:
                    raise ResourceError(
                        f"more than {cap} classes for {p}; use count_classes instead"
                    )
            return
        rem = j - depth - 1
        for code in first if depth == 0 else codes_from(k, v):
            new = [c + t for c, t in zip(counts, code.transitions)]
            if max(new) > d:
                continue
            short = sum(1 for c in new if c + rem * max_row < d)
            if short > (1 if ell else 0) or min(new) + rem * max_row < d - ell:
                continue
            saved = order[:]
            rows = code.rows
            bad = False
            for r in range(k - 1):
                if not order[r]:
                    if rows[r] > rows[r + 1]:
                        bad = True
                        break
                    if rows[r] < rows[r + 1]:
                        order[r] = True
            if not bad:
                old = counts[:]
                counts[:] = new
                chain.append(code)
                rec(code.vertices[-1], depth + 1)
                chain.pop()
                counts[:] = old
            order[:] = saved

    rec(0, 0)
    return found


def _search_branch(args):
    p, idx, cap = args
    return _search(p, (codes_from(p.k, 0)[idx],), cap)


def enumerate_classes(p: ParamTriple, cap: int | None = None,
                      threads: int = 1) -> list[EquipartingMatrix]:
    """One canonical representative per class, sorted by canonical form.

    With ``threads > 1`` the first-block choices are searched in worker
    processes; the merged list is sorted, so the output does not depend on
    the worker count.
    """
    cap = class_cap() if cap is None else cap
    first = codes_from(p.k, 0)
    if threads > 1 and len(first) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(_search_branch, [(p, i, cap) for i in range(len(first))])
            chains = [ch for part in parts for ch in part]
        if len(chains) > cap:
            raise ResourceError(f"more than {cap} classes for {p}; use count_classes instead")
    else:
        chains = _search(p, first, cap)
    out = [EquipartingMatrix.from_codes(p, ch) for ch in chains]
    out.sort(key=lambda m: canonical_form(m).key)
    return out


@dataclass(frozen=True)
class ProfileTable:
    """For each start vertex: multiplicities of (end vertex, transition vector)."""

    k: int
    table: dict

    def _vertex(self, start) -> int:
        return start if isinstance(start, int) else column_to_int(as_column(start, self.k))

    def total(self, start) -> int:
        return sum(self.table[self._vertex(start)].values())

    def entries(self, start) -> dict:
        v = self._vertex(start)
        return {(column_str(int_to_column(e, self.k)), w): m for (e, w), m in self.table[v].items()}


@lru_cache(maxsize=None)
def build_profile_table(k: int) -> ProfileTable:
    table = {}
    for v in range(2**k):
        agg: dict = defaultdict(int)
        for code in codes_from(k, v):
            agg[(code.vertices[-1], code.transitions)] += 1
        table[v] = dict(agg)
    return ProfileTable(k, table)


def count_classes(p: ParamTriple) -> int:
    """Exact number of classes via a fold over (end column, transition vector) states."""
    k, d = p.k, p.d
    profile = build_profile_table(k).table
    states: dict = {(0, (0,) * k): 1}
    for _ in range(p.j):
        nxt: dict = defaultdict(int)
        for (c, vec), mult in states.items():
            for (e, w), m2 in profile[c].items():
                nv = tuple(a + b for a, b in zip(vec, w))
                if max(nv) <= d:
                    nxt[(e, nv)] += mult * m2
        states = nxt
    target = p.target
    raw = sum(m for (_, vec), m in states.items() if tuple(sorted(vec)) == target)
    q, r = divmod(raw, factorial(k))
    if r:
        raise InvariantError(f"raw count {raw} for {p} is not divisible by {k}!")
    return q

"""Combinatorial cell model of the join configuration space S(R^{(d+1) x k}).

A symbol (sigma | I | S) names the cone of matrices x with

    0 <_{i_1} s_1 x_{sigma_1} <_{i_2} s_2 x_{sigma_2} ... <_{i_k} s_k x_{sigma_k}

where y <_i y' means y and y' agree in the first i-1 coordinates and
y_i < y'_i, and <_{d+2} is equality.  Cells are these cones intersected with
the unit sphere; everything here works with cones, since all predicates are
scale invariant.  Column indices in symbols are 1-based, as in the usual
notation; matrices are lists of rows (d+1 rows, k columns).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .errors import ParameterError, ResourceError

DEFAULT_SYMBOL_CAP = 2_000_000


@dataclass(frozen=True, order=True)
class CellSymbol:
    d: int
    k: int
    sigma: tuple[int, ...]
    I: tuple[int, ...]
    S: tuple[int, ...]

    def __post_init__(self):
        d, k = self.d, self.k
        if d < 0 or k < 1:
            raise ParameterError("need d >= 0 and k >= 1")
        if sorted(self.sigma) != list(range(1, k + 1)):
            raise ParameterError(f"sigma {self.sigma} is not a permutation of 1..{k}")
        if len(self.I) != k or any(not 1 <= i <= d + 2 for i in self.I):
            raise ParameterError(f"indices {self.I} must lie in 1..{d + 2}")
        if len(self.S) != k or any(s not in (1, -1) for s in self.S):
            raise ParameterError(f"signs {self.S} must be +1/-1")

    @property
    def is_origin(self) -> bool:
        return all(i == self.d + 2 for i in self.I)

    @property
    def cone_dim(self) -> int:
        return (self.d + 2) * self.k - sum(self.I)

    def __str__(self) -> str:
        sig = "".join(map(str, self.sigma)) if self.k < 10 else ",".join(map(str, self.sigma))
        return (f"sigma={sig};I={','.join(map(str, self.I))};"
                f"S={','.join('+' if s > 0 else '-' for s in self.S)};d={self.d};k={self.k}")

    @classmethod
    def parse(cls, text: str) -> "CellSymbol":
        try:
            fields = dict(part.split("=", 1) for part in text.strip().split(";") if part)
            d, k = int(fields["d"]), int(fields["k"])
            sig = fields["sigma"]
            sigma = tuple(int(c) for c in (sig.split(",") if "," in sig else sig))
            I = tuple(int(c) for c in fields["I"].split(","))
            S = tuple(1 if c.strip() == "+" else -1 if c.strip() == "-" else int(c)
                      for c in fields["S"].split(","))
        except (KeyError, ValueError) as exc:
            raise ParameterError(f"cannot parse cell {text!r}: {exc}") from None
        return cls(d, k, sigma, I, S)


def symbol(d: int, k: int, sigma, I, S) -> CellSymbol:
    """Convenience constructor accepting '2143', '+-+-' style strings."""
    if isinstance(sigma, str):
        sigma = tuple(int(c) for c in sigma)
    if isinstance(S, str):
        S = tuple(1 if c == "+" else -1 for c in re.sub(r"[ ,]", "", S))
    return CellSymbol(d, k, tuple(sigma), tuple(I), tuple(S))


def _column(x, c: int) -> list:
    return [row[c] for row in x]


def _check_matrix(sym: CellSymbol, x) -> None:
    if len(x) != sym.d + 1 or any(len(row) != sym.k for row in x):
        raise ParameterError(f"matrix must be {sym.d + 1} x {sym.k}")


def _chain_ok(sym: CellSymbol, x, weak: bool) -> bool:
    d = sym.d
    prev = [0] * (d + 1)
    for t in range(sym.k):
        y = [sym.S[t] * v for v in _column(x, sym.sigma[t] - 1)]
        i = sym.I[t]
        if i == d + 2:
            if y != prev:
                return False
        else:
            if prev[:i - 1] != y[:i - 1]:
                return False
            if weak:
                if not prev[i - 1] <= y[i - 1]:
                    return False
            elif not prev[i - 1] < y[i - 1]:
                return False
        prev = y
    return True


def contains(sym: CellSymbol, x) -> bool:
    """Membership of the matrix x in the open cone named by ``sym``."""
    _check_matrix(sym, x)
    return _chain_ok(sym, x, weak=False)


def closure_contains(sym: CellSymbol, x) -> bool:
    """Membership in the closed cone: every strict comparison relaxed to <=."""
    _check_matrix(sym, x)
    return _chain_ok(sym, x, weak=True)


def canonical_symbol(sym: CellSymbol) -> CellSymbol:
    """Block normal form.

    The chain splits into maximal runs glued by index d+2.  A leading run of
    zero columns gets ascending columns and + signs; any other run is sorted
    by column, keeping signs, and the run's incoming index moves to its new
    first entry.
    """
    d, k = sym.d, sym.k
    top = d + 2
    sigma, I, S = list(sym.sigma), list(sym.I), list(sym.S)
    t = 0
    if I[0] == top:
        while t < k and I[t] == top:
            t += 1
        sigma[:t] = sorted(sigma[:t])
        S[:t] = [1] * t
    while t < k:
        start = t
        t += 1
        while t < k and I[t] == top:
            t += 1
        entries = sorted(zip(sigma[start:t], S[start:t]))
        sigma[start:t] = [e[0] for e in entries]
        S[start:t] = [e[1] for e in entries]
    return CellSymbol(d, k, tuple(sigma), tuple(I), tuple(S))


@dataclass(frozen=True, order=True)
class Cell:
    symbol: CellSymbol

    @property
    def d(self) -> int:
        return self.symbol.d

    @property
    def k(self) -> int:
        return self.symbol.k

    @property
    def dim(self) -> int:
        return self.symbol.cone_dim - 1

    @property
    def nonfree(self) -> bool:
        return any(i == self.d + 2 for i in self.symbol.I)

    def __str__(self) -> str:
        return str(self.symbol)


def canonicalize(sym: CellSymbol) -> Cell:
    return Cell(canonical_symbol(sym))


def cell(d: int, k: int, sigma, I, S) -> Cell:
    return canonicalize(symbol(d, k, sigma, I, S))


@lru_cache(maxsize=None)
def representative(c: Cell) -> tuple[tuple[int, ...], ...]:
    """An integer matrix in the open cone: each chain step adds a unit vector at its index."""
    sym = c.symbol
    d, k = sym.d, sym.k
    cols: list = [None] * k
    y = [0] * (d + 1)
    for t in range(k):
        i = sym.I[t]
        if i <= d + 1:
            y = y[:]
            y[i - 1] += 1
        cols[sym.sigma[t] - 1] = [sym.S[t] * v for v in y]
    return tuple(tuple(cols[c_][r] for c_ in range(k)) for r in range(d + 1))


def locate(x, d: int, k: int) -> Cell:
    """The cell containing x: make columns lex-positive, sort, record first differences."""
    if len(x) != d + 1 or any(len(row) != k for row in x):
        raise ParameterError(f"matrix must be {d + 1} x {k}")
    cols = [tuple(_column(x, c)) for c in range(k)]
    signed = []
    for c, v in enumerate(cols):
        nz = next((a for a in v if a != 0), 0)
        r = -1 if nz < 0 else 1
        signed.append((tuple(r * a for a in v), c + 1, r))
    signed.sort()
    I = []
    prev = (0,) * (d + 1)
    for y, _, _ in signed:
        diff = next((m for m in range(d + 1) if prev[m] != y[m]), None)
        I.append(d + 2 if diff is None else diff + 1)
        prev = y
    sym = CellSymbol(d, k, tuple(s[1] for s in signed), tuple(I), tuple(s[2] for s in signed))
    return canonicalize(sym)


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """Element (beta, pi) of (Z/2)^k x| S_k.

    It sends column i of a matrix to column pi(i) and then negates every
    column t with beta[t] = 1.  ``pi`` is 1-based: pi[i-1] = pi(i).
    """

    pi: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)) or len(self.beta) != len(self.pi):
            raise ParameterError("malformed signed permutation")

    @property
    def k(self) -> int:
        return len(self.pi)

    @classmethod
    def identity(cls, k: int) -> "SignedPermutation":
        return cls(tuple(range(1, k + 1)), (0,) * k)

    @classmethod
    def epsilon(cls, k: int, t: int) -> "SignedPermutation":
        beta = [0] * k
        beta[t - 1] = 1
        return cls(tuple(range(1, k + 1)), tuple(beta))

    @classmethod
    def tau(cls, k: int, r: int, s: int) -> "SignedPermutation":
        pi = list(range(1, k + 1))
        pi[r - 1], pi[s - 1] = s, r
        return cls(tuple(pi), (0,) * k)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (self * other) . x = self . (other . x)
        k = self.k
        pi = tuple(self.pi[other.pi[i] - 1] for i in range(k))
        inv = self.inverse_pi()
        beta = tuple((self.beta[t] + other.beta[inv[t] - 1]) % 2 for t in range(k))
        return SignedPermutation(pi, beta)

    def inverse_pi(self) -> tuple[int, ...]:
        inv = [0] * self.k
        for i, p in enumerate(self.pi, start=1):
            inv[p - 1] = i
        return tuple(inv)

    def inverse(self) -> "SignedPermutation":
        inv = self.inverse_pi()
        # beta' must undo the flips after moving back: beta'[t] = beta[pi(t)]
        beta = tuple(self.beta[self.pi[t] - 1] for t in range(self.k))
        return SignedPermutation(inv, beta)

    def apply(self, x):
        """Act on a (d+1) x k matrix given as rows."""
        k = self.k
        inv = self.inverse_pi()
        return tuple(
            tuple((-1) ** self.beta[t] * row[inv[t] - 1] for t in range(k)) for row in x
        )


def group_elements(k: int):
    for pi in permutations(range(1, k + 1)):
        for beta in product((0, 1), repeat=k):
            yield SignedPermutation(pi, beta)


def generators(k: int) -> list[SignedPermutation]:
    gens = [SignedPermutation.epsilon(k, t) for t in range(1, k + 1)]
    gens += [SignedPermutation.tau(k, r, r + 1) for r in range(1, k)]
    return gens


def act(g: SignedPermutation, c: Cell | CellSymbol) -> Cell:
    """Image of a cell: sigma -> pi o sigma, and each chain position's sign picks up
    the flip of the column it lands on."""
    sym = c.symbol if isinstance(c, Cell) else c
    if g.k != sym.k:
        raise ParameterError("group and cell have different k")
    sigma = tuple(g.pi[s - 1] for s in sym.sigma)
    S = tuple(s * (-1) ** g.beta[p - 1] for s, p in zip(sym.S, sigma))
    return canonicalize(CellSymbol(sym.d, sym.k, sigma, sym.I, S))


def epsilon_literal(t: int, c: Cell | CellSymbol) -> Cell:
    """The symbol rule that negates s_t at chain position t, whatever column sits there.

    Kept for comparison with ``act``: it agrees with the geometric action
    only when sigma fixes t.
    """
    sym = c.symbol if isinstance(c, Cell) else c
    S = list(sym.S)
    S[t - 1] = -S[t - 1]
    return canonicalize(CellSymbol(sym.d, sym.k, sym.sigma, sym.I, tuple(S)))


def _symbol_count(d: int, k: int) -> int:
    return (d + 2) ** k * factorial(k) * 2**k


@lru_cache(maxsize=None)
def _all_cells(d: int, k: int, cap: int) -> tuple[Cell, ...]:
    if _symbol_count(d, k) > cap:
        raise ResourceError(f"{_symbol_count(d, k)} symbols for (d={d}, k={k}) exceed cap {cap}")
    seen = set()
    for sigma in permutations(range(1, k + 1)):
        for I in product(range(1, d + 3), repeat=k):
            if all(i == d + 2 for i in I):
                continue
            for S in product((1, -1), repeat=k):
                seen.add(canonicalize(CellSymbol(d, k, sigma, I, S)))
    return tuple(sorted(seen, key=lambda c: (c.dim, c.symbol)))


def enumerate_cells(d: int, k: int, cap: int = DEFAULT_SYMBOL_CAP) -> dict[int, list[Cell]]:
    """All cells except the origin, grouped by dimension in a fixed order."""
    out: dict[int, list[Cell]] = {}
    for c in _all_cells(d, k, cap):
        out.setdefault(c.dim, []).append(c)
    return out


def all_cells(d: int, k: int, cap: int = DEFAULT_SYMBOL_CAP) -> tuple[Cell, ...]:
    return _all_cells(d, k, cap)


def orbit(c: Cell) -> frozenset[Cell]:
    gens = generators(c.k)
    seen = {c}
    todo = [c]
    while todo:
        x = todo.pop()
        for g in gens:
            y = act(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def orbits(cells) -> list[frozenset[Cell]]:
    left = set(cells)
    out = []
    for c in sorted(left):
        if c in left:
            o = orbit(c)
            out.append(o)
            left -= o
    return out


@dataclass(frozen=True)
class ComplexStats:
    d: int
    k: int
    cells_by_dim: dict
    orbits_by_dim: dict
    orbit_sizes_by_dim: dict
    nonfree_cells_by_dim: dict
    euler: int

    @property
    def top_dim(self) -> int:
        return (self.d + 1) * self.k - 1

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "top_dim": self.top_dim,
            "euler": self.euler,
            "cells_by_dim": {str(k): v for k, v in self.cells_by_dim.items()},
            "orbits_by_dim": {str(k): v for k, v in self.orbits_by_dim.items()},
            "orbit_sizes_by_dim": {str(k): v for k, v in self.orbit_sizes_by_dim.items()},
            "nonfree_cells_by_dim": {str(k): v for k, v in self.nonfree_cells_by_dim.items()},
        }


def stats(d: int, k: int, cap: int = DEFAULT_SYMBOL_CAP) -> ComplexStats:
    by_dim = enumerate_cells(d, k, cap)
    cells_by_dim = {dim: len(cs) for dim, cs in sorted(by_dim.items())}
    orbits_by_dim, sizes = {}, {}
    for dim, cs in sorted(by_dim.items()):
        obs = orbits(cs)
        orbits_by_dim[dim] = len(obs)
        sizes[dim] = sorted(len(o) for o in obs)
    nonfree = {dim: sum(c.nonfree for c in cs) for dim, cs in sorted(by_dim.items())}
    euler = sum((-1) ** dim * n for dim, n in cells_by_dim.items())
    return ComplexStats(d, k, cells_by_dim, orbits_by_dim, sizes, nonfree, euler)


def facets(c: Cell, cap: int = DEFAULT_SYMBOL_CAP) -> list[Cell]:
    """Cells one dimension down that lie in the closure of c (closure-membership scan)."""
    if c.dim == 0:
        return []
    candidates = enumerate_cells(c.d, c.k, cap).get(c.dim - 1, [])
    return [f for f in candidates if closure_contains(c.symbol, representative(f))]


def theta(d: int, k: int, ell: int) -> Cell:
    """The cell 0 <_{ell+1} x_1 <_1 x_2 <_1 ... <_1 x_k."""
    if d < 1 or k < 2 or not 0 <= ell <= d - 1:
        raise ParameterError("theta needs d >= 1, k >= 2 and 0 <= ell <= d-1")
    return cell(d, k, tuple(range(1, k + 1)), (ell + 1,) + (1,) * (k - 1), (1,) * k)


def theta_facets(d: int, k: int, ell: int) -> dict[str, Cell]:
    """Facets of ``theta`` by the direct symbolic rule, keyed by their usual names.

    The equality x_{ell+1,1} = 0 gives gamma_1, gamma_2; each equality between
    first coordinates of consecutive columns gives a pair, except that for
    ell = 1 the equality 0 = x_{1,1} = x_{1,2} gives the four cells gamma_3,
    gamma_31, gamma_32, gamma_33.
    """
    theta(d, k, ell)
    ident = tuple(range(1, k + 1))
    plus = (1,) * k
    lead = ell + 1

    def swapped(r):
        s = list(ident)
        s[r - 2], s[r - 1] = s[r - 1], s[r - 2]
        return tuple(s)

    def with_two_at(r):
        I = [lead] + [1] * (k - 1)
        I[r - 1] = 2
        return tuple(I)

    out = {
        "gamma_1": cell(d, k, ident, (lead + 1,) + (1,) * (k - 1), plus),
        "gamma_2": cell(d, k, ident, (lead + 1,) + (1,) * (k - 1), (-1,) + plus[1:]),
    }
    first = 2
    if ell == 1:
        I = (2, 2) + (1,) * (k - 2)
        out["gamma_3"] = cell(d, k, ident, I, plus)
        out["gamma_31"] = cell(d, k, ident, I, (1, -1) + plus[2:])
        out["gamma_32"] = cell(d, k, swapped(2), I, plus)
        out["gamma_33"] = cell(d, k, swapped(2), I, (-1, 1) + plus[2:])
        first = 3
    elif ell >= 2:
        I = (lead, 2) + (1,) * (k - 2)
        out["gamma_3"] = cell(d, k, ident, I, plus)
        out["gamma_4"] = cell(d, k, ident, I, (1, -1) + plus[2:])
        first = 3
    for r in range(first, k + 1):
        I = with_two_at(r) if ell else tuple(2 if t == r - 1 else 1 for t in range(k))
        out[f"gamma_{2 * r - 1}"] = cell(d, k, ident, I, plus)
        out[f"gamma_{2 * r}"] = cell(d, k, swapped(r), I, plus)
    return out


def partition_count(x, d: int, k: int, cap: int = DEFAULT_SYMBOL_CAP) -> int:
    """Number of canonical cells (origin included) whose open cone contains x."""
    cells = list(all_cells(d, k, cap))
    origin = canonicalize(CellSymbol(d, k, tuple(range(1, k + 1)), (d + 2,) * k, (1,) * k))
    return sum(contains(c.symbol, x) for c in cells + [origin])


def face_closed(d: int, k: int, cap: int = DEFAULT_SYMBOL_CAP) -> bool:
    """Whether every facet of a non-free cell is again non-free."""
    for c in all_cells(d, k, cap):
        if c.nonfree and any(not f.nonfree for f in facets(c, cap)):
            return False
    return True


def dims_histogram(cells) -> Counter:
    return Counter(c.dim for c in cells)

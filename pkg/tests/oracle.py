"""Brute-force reference implementations that share no code with the package.

Slow on purpose: they enumerate everything and compare by definition.
"""

from itertools import permutations, product
from math import comb


def hamiltonian_paths(k, start):
    """All vertex sequences of Hamiltonian paths of the k-cube from ``start`` (a tuple of bits)."""
    verts = list(product((0, 1), repeat=k))
    adj = {v: [u for u in verts if sum(a != b for a, b in zip(u, v)) == 1] for v in verts}
    out = []

    def walk(path, seen):
        if len(path) == len(verts):
            out.append(tuple(path))
            return
        for u in adj[path[-1]]:
            if u not in seen:
                seen.add(u)
                path.append(u)
                walk(path, seen)
                path.pop()
                seen.discard(u)

    walk([tuple(start)], {tuple(start)})
    return out


def matrices(j, k, start=None):
    """Every chained sequence of j Gray codes as a k x j2^k row list, from any start column."""
    starts = [start] if start is not None else list(product((0, 1), repeat=k))
    cache = {}

    def paths(v):
        if v not in cache:
            cache[v] = hamiltonian_paths(k, v)
        return cache[v]

    def rec(v, left, cols):
        if left == 0:
            yield cols
            return
        for p in paths(v):
            yield from rec(p[-1], left - 1, cols + list(p))

    for s in starts:
        for cols in rec(tuple(s), j, []):
            yield [tuple(c[r] for c in cols) for r in range(k)]


def transitions(rows):
    return [sum(a != b for a, b in zip(r, r[1:])) for r in rows]


def orbit_key(rows):
    """Least row-concatenation over all row permutations and row inversions."""
    k = len(rows)
    best = None
    for perm in permutations(range(k)):
        for flips in product((0, 1), repeat=k):
            cand = tuple(tuple(b ^ flips[i] for b in rows[perm[i]]) for i in range(k))
            if best is None or cand < best:
                best = cand
    return best


def count_classes(j, k, d, ell):
    target = sorted([d - ell] + [d] * (k - 1))
    keys = set()
    for rows in matrices(j, k):
        if sorted(transitions(rows)) == target:
            keys.add(orbit_key(rows))
    return len(keys)


def p_valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def binom_valuation(n, m, p):
    return p_valuation(comb(n, m), p)

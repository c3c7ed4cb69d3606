"""Lower bounds, parity tests and reduction bounds for Delta(j, k).

Delta(j, k) is the least d such that any j masses in R^d can be cut into
equal 2^k-ths by k hyperplanes.  The lower bound is ceil((2^k-1)j/k); it is
certified tight when the number of classes of equiparting matrices is odd
(k >= 3), by the closed-form parity and 2-adic criteria for k = 2, and always
for k = 1.  Otherwise only the reduction Delta(j, k) <= Delta(2j, k-1)
yields an upper bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .equipart import ParamTriple, count_classes
from .errors import InvariantError, ParameterError

TIGHT = "TIGHT"
UPPER_BOUND = "UPPER_BOUND"
LOWER_BOUND_ONLY = "LOWER_BOUND_ONLY"

# largest j for which decide() runs the count directly; beyond that only the reduction is used
DIRECT_MAX_J = {3: 48, 4: 4}

# reference class counts: (j, k, ell, d, number of classes)
TABLE1 = (
    (2, 3, 1, 5, 13),
    (3, 3, 0, 7, 60),
    (4, 3, 2, 10, 2015),
    (5, 3, 1, 12, 35040),
    (6, 3, 0, 14, 185130),
    (7, 3, 2, 17, 7572908),
    (8, 3, 1, 19, 132909840),
    (9, 3, 0, 21, 732952248),
    (1, 4, 1, 4, 16),
    (2, 4, 2, 8, 37964),
)


def _check_pos(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ParameterError(f"{name} must be a positive integer, got {v!r}")


def ramos_bound(j: int, k: int) -> tuple[int, int]:
    """(d, ell) with d = ceil((2^k-1)j/k) and ell = dk - (2^k-1)j."""
    _check_pos(j=j, k=k)
    n = (2**k - 1) * j
    d = -(-n // k)
    return d, d * k - n


def params_for(j: int, k: int) -> ParamTriple:
    d, ell = ramos_bound(j, k)
    return ParamTriple(j, k, d, ell)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


def kummer_valuation(n: int, m: int, p: int) -> int:
    """Number of carries when adding m and n-m in base p."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if not 0 <= m <= n:
        raise ParameterError(f"need 0 <= m <= n, got n={n}, m={m}")
    a, b = m, n - m
    carry = carries = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ParameterError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def k2_count(j: int) -> int:
    """Number of classes for k = 2: half of C(j, j/2) for even j, C(j, (j+1)/2) for odd j."""
    _check_pos(j=j)
    if j % 2 == 0:
        return comb(j, j // 2) // 2
    return comb(j, (j + 1) // 2)


@dataclass
class DeltaReport:
    j: int
    k: int
    d: int
    ell: int
    class_count: int | None
    status: str
    lower: int
    upper: int | None
    evidence: list = field(default_factory=list)
    reduction: list = field(default_factory=list)

    @property
    def bounds(self) -> tuple:
        return (self.lower, self.upper)

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "k": self.k,
            "d": self.d,
            "ell": self.ell,
            "count": None if self.class_count is None else str(self.class_count),
            "status": self.status,
            "bounds": [self.lower, self.upper],
            "evidence": list(self.evidence),
            "reduction": [list(s) for s in self.reduction],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _direct(j: int, k: int) -> tuple[int | None, bool, list]:
    """(count, tight, evidence) from the direct test, count None when out of range."""
    d, ell = ramos_bound(j, k)
    if k == 1:
        return None, True, [f"k=1: a single hyperplane bisects j={j} masses in R^{j}"]
    if k == 2:
        a = k2_count(j)
        v = valuation(a, 2)
        if ell == 0:
            return a, a % 2 == 1, [f"ell=0: count {a} is {'odd' if a % 2 else 'even'}"]
        if d % 2 == 1:
            return a, a % 2 == 1, [f"ell=1, d={d} odd: count {a} is {'odd' if a % 2 else 'even'}"]
        # d even: the obstruction survives when the count is not divisible by 4
        return a, v <= 1, [f"ell=1, d={d} even: 2-adic valuation of count {a} is {v}"]
    if j > DIRECT_MAX_J.get(k, 0):
        return None, False, [f"direct count skipped for (j={j}, k={k})"]
    n = count_classes(ParamTriple(j, k, d, ell))
    return n, n % 2 == 1, [f"count {n} is {'odd' if n % 2 else 'even'}"]


def decide(j: int, k: int, reduce: bool = True) -> DeltaReport:
    """Certify Delta(j,k) = d when possible, otherwise bound it from above by reduction."""
    _check_pos(j=j, k=k)
    d, ell = ramos_bound(j, k)
    count, tight, evidence = _direct(j, k)
    if tight:
        return DeltaReport(j, k, d, ell, count, TIGHT, d, d, evidence)
    if not reduce:
        return DeltaReport(j, k, d, ell, count, LOWER_BOUND_ONLY, d, None, evidence)
    chain = []
    jj, kk = j, k
    while kk > 1:
        jj, kk = 2 * jj, kk - 1
        chain.append((jj, kk))
        # each step only lowers the bound's argument, so the first tight link is the best
        _, ok, ev = _direct(jj, kk)
        if ok:
            up, _ = ramos_bound(jj, kk)
            evidence.append(f"reduction to (j={jj}, k={kk}): " + "; ".join(ev))
            return DeltaReport(j, k, d, ell, count, UPPER_BOUND, d, up, evidence, chain)
    raise AssertionError("reduction chains always end at k=1")


@dataclass(frozen=True)
class Table1Row:
    j: int
    k: int
    ell: int
    d: int
    expected: int
    computed: int

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


class Table1Mismatch(InvariantError):
    pass


def table1(rows=TABLE1, strict: bool = True) -> list[Table1Row]:
    """Recompute every row; with ``strict`` any mismatch raises, naming the rows."""
    out = []
    for j, k, ell, d, expected in rows:
        p = ParamTriple(j, k, d, ell)
        out.append(Table1Row(j, k, ell, d, expected, count_classes(p)))
    bad = [r for r in out if not r.ok]
    if strict and bad:
        raise Table1Mismatch(
            "; ".join(f"(j={r.j}, k={r.k}): expected {r.expected}, got {r.computed}" for r in bad)
        )
    return out

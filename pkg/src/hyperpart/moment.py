"""Hyperplane arrangements on the binomial moment curve, in exact arithmetic.

The curve is t -> (t, C(t,2), ..., C(t,d)).  Interval masses are taken with
the uniform parameter measure, so subintervals of equal parameter length
carry equal mass.  Cut points and probe points all have rational parameters
and every sign is an exact determinant sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .equipart import EquipartingMatrix, ParamTriple, validate
from .errors import DegeneracyError, InvariantError, ParameterError


def rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise ParameterError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def curve_eval(t, d: int) -> tuple[Fraction, ...]:
    """Exact point (t, C(t,2), ..., C(t,d)) on the binomial moment curve."""
    if d < 1:
        raise ParameterError("d must be at least 1")
    t = rational(t)
    out = []
    prod = Fraction(1)
    for m in range(1, d + 1):
        prod *= t - (m - 1)
        out.append(prod / factorial(m))
    return tuple(out)


def det(mat: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[rational(x) for x in row] for row in mat]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class IntervalLayout:
    params: ParamTriple
    prescribed: tuple[Fraction, ...]
    grid: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        p = self.params
        n = 2**p.k
        if len(self.prescribed) != p.ell:
            raise ParameterError(f"need exactly {p.ell} prescribed points")
        if len(self.grid) != p.j or any(len(b) != n + 1 for b in self.grid):
            raise ParameterError(f"need {p.j} blocks of {n + 1} grid points")
        flat = list(self.prescribed) + [t for b in self.grid for t in b]
        if any(b <= a for a, b in zip(flat, flat[1:])):
            raise ParameterError("layout parameters must be strictly increasing")
        for b in self.grid:
            steps = {y - x for x, y in zip(b, b[1:])}
            if len(steps) != 1:
                raise ParameterError("grid points within a block must be equally spaced")

    @property
    def d(self) -> int:
        return self.params.d

    def subintervals(self):
        """Yield (block, column, left, right) for every grid subinterval."""
        for i, b in enumerate(self.grid):
            for c in range(len(b) - 1):
                yield i, c, b[c], b[c + 1]

    def all_parameters(self) -> tuple[Fraction, ...]:
        return self.prescribed + tuple(t for b in self.grid for t in b)


def layout_points(p: ParamTriple) -> IntervalLayout:
    """Prescribed points at 0..ell-1, then j blocks of 2^k+1 consecutive integers."""
    n = 2**p.k
    prescribed = tuple(Fraction(t) for t in range(p.ell))
    grid = tuple(
        tuple(Fraction(p.ell + i * (n + 1) + c) for c in range(n + 1)) for i in range(p.j)
    )
    return IntervalLayout(p, prescribed, grid)


@dataclass(frozen=True)
class HyperplaneSpec:
    """The affine hyperplane through the curve points at ``through``, oriented."""

    through: tuple[Fraction, ...]
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "through", tuple(rational(t) for t in self.through))
        if self.orientation not in (1, -1):
            raise ParameterError("orientation must be +1 or -1")
        if len(set(self.through)) != len(self.through):
            raise ParameterError("defining parameters must be pairwise distinct")

    @property
    def d(self) -> int:
        return len(self.through)

    @cached_property
    def normal(self) -> tuple[Fraction, ...]:
        """Cofactors of the last row, so det[(1,p_1);...;(1,p_d);(1,x)] = normal . (1,x)."""
        d = self.d
        rows = [(Fraction(1),) + curve_eval(t, d) for t in self.through]
        out = []
        for m in range(d + 1):
            minor = [r[:m] + r[m + 1:] for r in rows]
            out.append((-1) ** (d + m) * det(minor))
        if not any(out):
            raise InvariantError("defining points do not span a hyperplane")
        return tuple(out)

    def flipped(self) -> "HyperplaneSpec":
        return HyperplaneSpec(self.through, -self.orientation)


def side(h: HyperplaneSpec, x: Sequence) -> int:
    """Orientation times the sign of the (d+1)x(d+1) incidence determinant."""
    x = tuple(rational(c) for c in x)
    if len(x) != h.d:
        raise ParameterError(f"point has dimension {len(x)}, hyperplane lives in R^{h.d}")
    a = h.normal
    return h.orientation * _sign(a[0] + sum(ai * xi for ai, xi in zip(a[1:], x)))


def side_by_det(h: HyperplaneSpec, x: Sequence) -> int:
    """Same as ``side`` but straight from the full determinant; used as a cross-check."""
    rows = [(1,) + curve_eval(t, h.d) for t in h.through]
    rows.append((1,) + tuple(rational(c) for c in x))
    return h.orientation * _sign(det(rows))


@dataclass(frozen=True)
class ArrangementSpec:
    d: int
    hyperplanes: tuple[HyperplaneSpec, ...]
    # matrix row encoded by each hyperplane
    rows: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if not self.rows:
            object.__setattr__(self, "rows", tuple(range(len(self.hyperplanes))))
        if sorted(self.rows) != list(range(len(self.hyperplanes))):
            raise ParameterError("rows must be a permutation of the hyperplane indices")
        if any(h.d != self.d for h in self.hyperplanes):
            raise ParameterError(f"every hyperplane needs exactly d={self.d} points")

    @property
    def k(self) -> int:
        return len(self.hyperplanes)

    def replace(self, s: int, h: HyperplaneSpec) -> "ArrangementSpec":
        hs = list(self.hyperplanes)
        hs[s] = h
        return ArrangementSpec(self.d, tuple(hs), self.rows)

    def to_json(self) -> str:
        return json.dumps({
            "d": self.d,
            "hyperplanes": [
                {"through": [rational_str(t) for t in h.through], "orientation": h.orientation}
                for h in self.hyperplanes
            ],
            "rows": list(self.rows),
        })

    @classmethod
    def from_json(cls, text: str | dict) -> "ArrangementSpec":
        try:
            obj = json.loads(text) if isinstance(text, str) else text
            hs = tuple(
                HyperplaneSpec(tuple(rational(t) for t in h["through"]),
                               int(h.get("orientation", 1)))
                for h in obj["hyperplanes"]
            )
            return cls(int(obj["d"]), hs, tuple(obj.get("rows", ())))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"malformed arrangement JSON: {exc!r}") from None


def _midpoint_point(left: Fraction, right: Fraction, d: int):
    return curve_eval((left + right) / 2, d)


def matrix_to_arrangement(m: EquipartingMatrix, layout: IntervalLayout) -> ArrangementSpec:
    """Cut through the grid point between every pair of differing adjacent entries.

    The row with transition count d-ell becomes the first hyperplane and also
    passes through the prescribed points.  Each hyperplane is oriented so that
    subintervals carrying a 0 lie on its positive side.
    """
    p = layout.params
    if m.params != p:
        raise ParameterError(f"matrix parameters {m.params} differ from layout {p}")
    diag = validate(m)
    if not diag:
        raise ParameterError(f"not an equiparting matrix: {diag.detail}")
    n = 2**p.k
    tc = m.transitions
    if p.ell:
        deficient = tc.index(p.d - p.ell)
        order = [deficient] + [r for r in range(p.k) if r != deficient]
    else:
        order = list(range(p.k))

    hyperplanes = []
    for s, r in enumerate(order):
        row = m.rows[r]
        pts = list(layout.prescribed) if s == 0 else []
        for i, block in enumerate(layout.grid):
            for c in range(n - 1):
                if row[i * n + c] != row[i * n + c + 1]:
                    pts.append(block[c + 1])
        if len(pts) != p.d:
            raise InvariantError(f"hyperplane {s + 1} would pass through {len(pts)} points, not {p.d}")
        h = HyperplaneSpec(tuple(pts), 1)
        for i, c, left, right in layout.subintervals():
            if row[i * n + c] == 0:
                raw = side(h, _midpoint_point(left, right, p.d))
                if raw == 0:
                    raise DegeneracyError("subinterval midpoint lies on the hyperplane")
                h = HyperplaneSpec(h.through, raw)
                break
        hyperplanes.append(h)
    return ArrangementSpec(p.d, tuple(hyperplanes), tuple(order))


@dataclass(frozen=True)
class EquipartitionCheck:
    ok: bool
    witness: str = ""
    orthant_mass: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _sign_vector(a: ArrangementSpec, left: Fraction, right: Fraction, where: str):
    x = _midpoint_point(left, right, a.d)
    signs = [side(h, x) for h in a.hyperplanes]
    if 0 in signs:
        raise DegeneracyError(f"midpoint of {where} lies on hyperplane {signs.index(0) + 1}")
    return signs


def verify_equipartition(a: ArrangementSpec, layout: IntervalLayout,
                         m: EquipartingMatrix) -> EquipartitionCheck:
    """Check that midpoint signs reproduce ``m`` and every orthant gets 1/2^k of each interval.

    The midpoint test is only meaningful when no hyperplane cuts the curve
    strictly inside a subinterval; that is checked first.  A hyperplane
    through d distinct curve points meets the curve nowhere else, since the
    incidence determinant is a degree-d polynomial in t.
    """
    p = layout.params
    n = 2**p.k
    if a.k != p.k or a.d != p.d:
        raise ParameterError("arrangement does not match the layout parameters")
    for s, h in enumerate(a.hyperplanes):
        for i, c, left, right in layout.subintervals():
            inside = [t for t in h.through if left < t < right]
            if inside:
                return EquipartitionCheck(
                    False, f"hyperplane {s + 1} cuts block {i + 1} inside subinterval {c + 1}"
                )
    mass: dict = {}
    for i, c, left, right in layout.subintervals():
        where = f"block {i + 1} subinterval {c + 1}"
        signs = _sign_vector(a, left, right, where)
        bits = tuple(0 if sg > 0 else 1 for sg in signs)
        for s, b in enumerate(bits):
            if m.rows[a.rows[s]][i * n + c] != b:
                return EquipartitionCheck(
                    False, f"{where}: hyperplane {s + 1} gives bit {b}, matrix has "
                    f"{m.rows[a.rows[s]][i * n + c]}"
                )
        length = layout.grid[i][-1] - layout.grid[i][0]
        key = (i, bits)
        mass[key] = mass.get(key, Fraction(0)) + (right - left) / length
    share = Fraction(1, n)
    for i in range(p.j):
        per = {bits: v for (b, bits), v in mass.items() if b == i}
        if len(per) != n or any(v != share for v in per.values()):
            return EquipartitionCheck(False, f"block {i + 1} is not split into equal orthant masses")
    return EquipartitionCheck(True, "", mass)


def arrangement_to_matrix(a: ArrangementSpec, layout: IntervalLayout) -> EquipartingMatrix:
    """Record, for every subinterval, which side of each hyperplane its midpoint is on."""
    p = layout.params
    if a.k != p.k or a.d != p.d:
        raise ParameterError("arrangement does not match the layout parameters")
    rows = [[0] * p.width for _ in range(p.k)]
    n = 2**p.k
    for i, c, left, right in layout.subintervals():
        signs = _sign_vector(a, left, right, f"block {i + 1} subinterval {c + 1}")
        for s, sg in enumerate(signs):
            rows[a.rows[s]][i * n + c] = 0 if sg > 0 else 1
    return EquipartingMatrix(p, tuple(tuple(r) for r in rows))

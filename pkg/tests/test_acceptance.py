"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; they are printed in the pytest summary
(see conftest.py) and when this file is run directly.
"""

import time

from hyperpart.admissibility import (
    TIGHT,
    UPPER_BOUND,
    decide,
    k2_count,
    kummer_valuation,
    params_for,
)
from hyperpart.cwmodel import (
    SignedPermutation,
    act,
    enumerate_cells,
    face_closed,
    facets,
    stats,
    theta,
    theta_facets,
)
from hyperpart.equipart import ParamTriple, count_classes, enumerate_classes
from hyperpart.graycode import enumerate_gray_codes, gray_classes
from hyperpart.moment import (
    arrangement_to_matrix,
    layout_points,
    matrix_to_arrangement,
    verify_equipartition,
)

import oracle

RESULTS = []


def record(n, title, failures, extra=""):
    ok = not failures
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}"
    if extra:
        line += f" ({extra})"
    if failures:
        line += " -- " + "; ".join(map(str, failures[:5]))
    RESULTS.append(line)
    print(line)
    assert ok, line


TABLE = {
    (2, 3): 13, (3, 3): 60, (4, 3): 2015, (5, 3): 35040, (6, 3): 185130,
    (7, 3): 7572908, (8, 3): 132909840, (9, 3): 732952248, (1, 4): 16, (2, 4): 37964,
}


def test_criterion_1_table():
    failures = []
    times = {3: 0.0, 4: 0.0}
    for (j, k), expected in TABLE.items():
        t = time.perf_counter()
        got = count_classes(params_for(j, k))
        times[k] += time.perf_counter() - t
        if got != expected:
            failures.append(f"({j},{k}) gave {got}, expected {expected}")
    if times[3] >= 5:
        failures.append(f"k=3 rows took {times[3]:.1f}s")
    if times[4] >= 60:
        failures.append(f"k=4 rows took {times[4]:.1f}s")
    record(1, "class-count table", failures, f"k=3 {times[3]:.2f}s, k=4 {times[4]:.2f}s")


def test_criterion_2_gray_codes():
    failures = []
    n3 = len(enumerate_gray_codes(3, "000"))
    if n3 != 18:
        failures.append(f"k=3 gave {n3} codes")
    multisets = sorted(c.transition_multiset for c in gray_classes(3, "000"))
    if multisets != [(3, 2, 2), (3, 3, 1), (4, 2, 1)]:
        failures.append(f"k=3 classes {multisets}")
    n2 = len(enumerate_gray_codes(2, "00"))
    if n2 != 2:
        failures.append(f"k=2 gave {n2} codes")
    record(2, "Gray-code counts", failures)


def _small_triples():
    # every lower-bound triple with at most 10^5 classes, k=1 truncated at j=8
    out = [params_for(j, 1) for j in range(1, 9)]
    out += [params_for(j, 2) for j in range(1, 21)]
    out += [params_for(j, 3) for j in range(2, 6)] + [params_for(1, 3)]
    out += [params_for(1, 4), params_for(2, 4)]
    return out


def test_criterion_3_oracle_equivalence():
    failures = []
    t = time.perf_counter()
    triples = _small_triples()
    for p in triples:
        n, c = len(enumerate_classes(p)), count_classes(p)
        if n != c:
            failures.append(f"{p}: enumerated {n}, counted {c}")
    # independent brute force where it is cheap
    for p in [(2, 3, 5, 1), (2, 2, 3, 0), (3, 2, 5, 1), (4, 2, 6, 0)]:
        if oracle.count_classes(*p) != count_classes(ParamTriple(*p)):
            failures.append(f"{p}: brute force disagrees")
    dt = time.perf_counter() - t
    if dt >= 60:
        failures.append(f"took {dt:.1f}s")
    record(3, "enumeration equals counting", failures, f"{len(triples)} triples, {dt:.1f}s")


def test_criterion_4_geometry():
    failures = []
    t = time.perf_counter()
    cases = [ParamTriple(2, 3, 5, 1), ParamTriple(1, 4, 4, 1)] + [params_for(j, 2) for j in range(1, 5)]
    n = 0
    for p in cases:
        lay = layout_points(p)
        for m in enumerate_classes(p):
            n += 1
            a = matrix_to_arrangement(m, lay)
            check = verify_equipartition(a, lay, m)
            if not check:
                failures.append(f"{p}: {check.witness}")
            elif arrangement_to_matrix(a, lay).rows != m.rows:
                failures.append(f"{p}: round trip changed a matrix")
    dt = time.perf_counter() - t
    if dt >= 30:
        failures.append(f"took {dt:.1f}s")
    record(4, "geometric realization and round trip", failures, f"{n} matrices, {dt:.1f}s")


def test_criterion_5_k2_closed_forms():
    failures = []
    for j in range(1, 13):
        if k2_count(j) != count_classes(params_for(j, 2)):
            failures.append(f"j={j}")
    powers = {2**t for t in range(8)}
    for j in range(1, 65):
        if j % 2 == 0:
            # half of C(j, j/2) is odd iff C(j, j/2) has exactly one factor 2
            odd = kummer_valuation(j, j // 2, 2) == 1
            expect = j in powers
        else:
            odd = kummer_valuation(j, (j + 1) // 2, 2) == 0
            expect = j + 1 in powers
        if odd != expect or odd != (k2_count(j) % 2 == 1):
            failures.append(f"parity at j={j}")
    record(5, "k=2 closed forms and parity", failures)


def test_criterion_6_kummer():
    failures = []
    for p in (2, 3, 5):
        for n in range(65):
            for m in range(n + 1):
                if kummer_valuation(n, m, p) != oracle.binom_valuation(n, m, p):
                    failures.append(f"n={n} m={m} p={p}")
    record(6, "Kummer carries equal valuations", failures)


def test_criterion_7_cell_model():
    failures = []
    t = time.perf_counter()
    for d, k in [(0, 2), (1, 2), (0, 3), (1, 3), (2, 2)]:
        s = stats(d, k)
        n1 = (d + 1) * k - 1
        if s.euler != 1 + (-1) ** n1:
            failures.append(f"({d},{k}) euler {s.euler}")
        if s.orbits_by_dim.get(n1) != 1:
            failures.append(f"({d},{k}) top orbits {s.orbits_by_dim.get(n1)}")
        if s.orbits_by_dim.get(n1 - 1) != k:
            failures.append(f"({d},{k}) codim-1 orbits {s.orbits_by_dim.get(n1 - 1)}")
        if not face_closed(d, k):
            failures.append(f"({d},{k}) non-free part not face-closed")
    sizes = {dim: len(cs) for dim, cs in enumerate_cells(0, 2).items()}
    if sizes != {0: 8, 1: 8}:
        failures.append(f"(0,2) cells {sizes}")
    dt = time.perf_counter() - t
    if dt >= 60:
        failures.append(f"took {dt:.1f}s")
    record(7, "cell model counts, orbits, Euler characteristic", failures, f"{dt:.1f}s")


def test_criterion_8_theta_facets():
    failures = []
    E, T = SignedPermutation.epsilon, SignedPermutation.tau
    for k in (2, 3):
        for d in (1, 2, 3):
            for ell in range(d):
                f = theta_facets(d, k, ell)
                scan = set(facets(theta(d, k, ell)))
                want = 2 * (k - 1) + 4 if ell == 1 else 2 * k
                tag = f"(k={k}, d={d}, ell={ell})"
                if scan != set(f.values()) or len(scan) != want:
                    failures.append(f"{tag}: {len(scan)} facets")
                if act(E(k, 1), f["gamma_1"]) != f["gamma_2"]:
                    failures.append(f"{tag}: gamma_2")
                for r in range(3 if ell else 2, k + 1):
                    if act(T(k, r - 1, r), f[f"gamma_{2 * r - 1}"]) != f[f"gamma_{2 * r}"]:
                        failures.append(f"{tag}: gamma_{2 * r}")
                if ell == 1:
                    g3 = f["gamma_3"]
                    family = {g3, act(E(k, 2), g3), act(T(k, 1, 2), g3),
                              act(T(k, 1, 2) * E(k, 1), g3)}
                    named = {f["gamma_3"], f["gamma_31"], f["gamma_32"], f["gamma_33"]}
                    if family != named or len(family) != 4:
                        failures.append(f"{tag}: four-cell family")
                if ell >= 2 and act(E(k, 2), f["gamma_3"]) != f["gamma_4"]:
                    failures.append(f"{tag}: gamma_4")
    record(8, "facets of theta and their group relations", failures)


def test_criterion_9_decisions():
    failures = []

    def expect(j, k, status, bounds):
        r = decide(j, k)
        if r.status != status or r.bounds != bounds:
            failures.append(f"({j},{k}) gave {r.status} {r.bounds}")

    expect(2, 3, TIGHT, (5, 5))
    expect(4, 3, TIGHT, (10, 10))
    for t in range(1, 7):
        base = 3 * 2 ** (t - 1)
        expect(2**t, 2, TIGHT, (base, base))
        expect(2**t - 1, 2, TIGHT, (base - 1, base - 1))
        expect(2**t + 1, 2, TIGHT, (base + 2, base + 2))
    expect(1, 4, UPPER_BOUND, (4, 5))
    expect(2, 4, UPPER_BOUND, (8, 10))
    record(9, "decision layer", failures)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass

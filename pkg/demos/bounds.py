"""What the counts say about Delta(j, k)."""

from hyperpart.admissibility import decide, k2_count, kummer_valuation, table1

for row in table1():
    print(row.j, row.k, row.ell, row.d, row.computed, "ok" if row.ok else "MISMATCH")

for j, k in [(2, 3), (4, 3), (1, 4), (2, 4), (5, 2), (6, 2)]:
    r = decide(j, k)
    print(f"Delta({j},{k}): {r.status} {r.bounds}", r.evidence)

# for k = 2 parity comes from Kummer: count carries of j/2 + j/2 in base 2
for j in (8, 12, 16):
    print(j, k2_count(j), "carries", kummer_valuation(j, j // 2, 2))

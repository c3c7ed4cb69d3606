"""Counting and listing equiparting matrices two independent ways."""

import time

from hyperpart.admissibility import params_for
from hyperpart.equipart import canonical_form, count_classes, enumerate_classes, validate

p = params_for(2, 3)
print(p)  # d=5, ell=1: one row has 4 transitions, the others 5

mats = enumerate_classes(p)
print(len(mats), "classes by search,", count_classes(p), "by the transfer count")

m = mats[0]
print(m.to_text())
print("valid:", bool(validate(m)), "transitions:", m.transitions)
print("canonical key:", canonical_form(m).key)

# the counting fold scales far beyond what the search can list
for j in range(2, 10):
    t = time.perf_counter()
    n = count_classes(params_for(j, 3))
    print(f"j={j} k=3: {n} ({time.perf_counter() - t:.3f}s)")

"""The cell model of the configuration space and its symmetry group."""

from hyperpart.cwmodel import (
    SignedPermutation,
    act,
    cell,
    enumerate_cells,
    facets,
    stats,
    theta,
    theta_facets,
)

# the circle in R^2: 8 arcs and 8 points
for dim, cells in enumerate_cells(0, 2).items():
    print(dim, [str(c) for c in cells[:3]], "...")

s = stats(1, 2)
print("cells", s.cells_by_dim, "orbits", s.orbits_by_dim, "euler", s.euler)

# two symbols for one cell
print(cell(2, 4, "2143", (2, 3, 1, 4), "+-+-"))

# the facets of theta, found by a scan and by the direct rule
th = theta(2, 3, 1)
scan = facets(th)
rule = theta_facets(2, 3, 1)
print(len(scan), "facets; scan agrees with rule:", set(scan) == set(rule.values()))

e1 = SignedPermutation.epsilon(3, 1)
print("gamma_2 = eps_1 gamma_1:", act(e1, rule["gamma_1"]) == rule["gamma_2"])

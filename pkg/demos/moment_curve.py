"""Turning a matrix into hyperplanes on the moment curve and back."""

from hyperpart.equipart import EquipartingMatrix, ParamTriple
from hyperpart.moment import (
    arrangement_to_matrix,
    curve_eval,
    layout_points,
    matrix_to_arrangement,
    verify_equipartition,
)

p = ParamTriple(2, 3, 5, 1)
m = EquipartingMatrix(p, ["00110011 11110000", "00011110 01100011", "01111000 00111001"])
lay = layout_points(p)
print("prescribed:", [str(t) for t in lay.prescribed])
print("blocks:", [[str(t) for t in b] for b in lay.grid])

a = matrix_to_arrangement(m, lay)
for s, h in enumerate(a.hyperplanes):
    print(f"H{s + 1} (row {a.rows[s] + 1}) through", [str(t) for t in h.through],
          "orientation", h.orientation)

check = verify_equipartition(a, lay, m)
print("equipartition:", check.ok)
print("each orthant gets", set(check.orthant_mass.values()), "of every block")
print("round trip exact:", arrangement_to_matrix(a, lay) == m)

# flipping one hyperplane breaks it, and the witness says where
bad = a.replace(2, a.hyperplanes[2].flipped())
print(verify_equipartition(bad, lay, m).witness)

print("a curve point:", curve_eval(7, 5))
print(a.to_json())

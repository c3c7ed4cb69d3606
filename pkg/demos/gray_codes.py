"""Gray codes as Hamiltonian paths of the cube, and their classes."""

from hyperpart.graycode import column_str, enumerate_gray_codes, gray_classes

# the two 2-bit codes that start at 00
for code in enumerate_gray_codes(2, "00"):
    print(" ".join(column_str(c) for c in code.columns))

# 18 codes from 000; up to row permutation they fall into three classes
codes = enumerate_gray_codes(3, "000")
print(len(codes), "codes from 000")
for cls in gray_classes(3, "000"):
    print("class of", cls.size, "transition counts", cls.transition_multiset)
    print(cls.representative.to_text())

"""Walk through the cusp x^2 = y^3: tree, point basis, divisors and the adjoint three ways."""

from infnear.constellation import adjoint_basis, canonical_divisor, proximity_matrix
from infnear.monomial import adjoint_howald, colength, integral_closure, parse_ideal, principalize
from infnear.toric import adjoint_via_sections

I = parse_ideal("x^2, y^3")
tree = principalize([I])
C = tree.constellation

print("ideal:", I)
for i in range(C.r):
    par = "-" if C.parents[i] is None else C.parents[i] + 1
    print(f"  point {i + 1}: parent {par}, proximate to {sorted(j + 1 for j in C.prox[i])}")

p, inv = proximity_matrix(C)
print("proximity matrix:", p)
print("inverse:         ", inv)
print("point basis:", tree.basis.basis)
print("divisor D_I:", tree.valuations())
print("canonical divisor:", canonical_divisor(C).coeffs)

print("exceptional rays:", [tree.fan.rays[j] for j in tree.fan.exceptional_rays().values()])

print("adjoint basis:", adjoint_basis(tree.basis).basis)
print("adjoint (Newton polyhedron):", adjoint_howald(I))
print("adjoint (sections on the blowup):", adjoint_via_sections(tree))
print("closure:", integral_closure(I), "colength", colength(integral_closure(I)))

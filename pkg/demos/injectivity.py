"""A full divisor whose top cohomology does not inject when the fibre is added.

Blow up the origin of the plane, then a point on E_1 (the tree of (x, y^2)).
D = 2 E_2 is full (star coordinates (0, 2)) yet h^1(O(D)) = 1 and the class
dies in O(D + nE) for every n >= 1.
"""

from infnear.constellation import DivisorStar, canonical_divisor, from_star, is_full
from infnear.monomial import parse_ideal, principalize
from infnear.toric import cech_dims, divisor_rays
from infnear.toric.cohomology import fiber_rays, injectivity_check

tree = principalize([parse_ideal("x, y^2")])
C = tree.constellation
D = from_star(DivisorStar(C, [0, 2]))
print("D =", D.coeffs, "full:", is_full(D))

a = divisor_rays(tree, D.coeffs)
rep = cech_dims(tree.fan, a)
print("h^1(O(D)) =", rep.dims[1], "at weights", list(rep.support), rep.status)
for n in (1, 2, 5):
    inj = injectivity_check(tree.fan, a, fiber_rays(tree), n)
    print(f"  n={n}: {inj.verdict}, kernel at {inj.failures}")

K = canonical_divisor(C).coeffs
KD = [k - d for k, d in zip(K, D.coeffs)]
dual = cech_dims(tree.fan, divisor_rays(tree, KD))
print("dual side K - D =", KD, "h^1 =", dual.dims[1])

# divisors of ideals behave: the same check on D_I of the cusp passes
cusp = principalize([parse_ideal("x^2, y^3")])
a = divisor_rays(cusp, cusp.valuations())
print("cusp D_I, n=1:", injectivity_check(cusp.fan, a, fiber_rays(cusp), 1).verdict)

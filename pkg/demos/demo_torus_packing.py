"""Flat-torus specialization: covolume and lattice packing bounds.

Every point of the torus R^n / dual-lattice is trivially a design of
strength t = 4 pi^2 s^2, where s is the shortest vector of the primal
lattice.  A Euclidean ball whose fundamental tone (j_{n/2-1,1}/r)^2 stays
below t must then essentially cover the torus, bounding the dual covolume
and hence the packing density of the primal lattice.
"""

import math

import designlab as dl

print("first Bessel zeros:")
for nu in (-0.5, 0.0, 0.5, 1.0, 3.0):
    print(f"  j_({nu:+.1f},1) = {dl.bessel_first_zero(nu):.12f}")

print("\ncovolume bound in dimension 1 (shortest vector 1):")
tb = dl.torus_covolume_bound(1, 1.0)
print(f"  optimal ratio rho* = {tb.rho_star:.6f} (closed form n/(n+2))")
print(f"  grid search        = {tb.rho_grid:.6f}")
print(f"  covolume bound     = {tb.covolume_bound:.9f} = 3*sqrt(3)/4")
print(f"  optimal ball radius r* = {tb.r_star:.6f}")

print("\nlattice packing density bounds vs best lattices:")
known = {
    1: ("Z", 1.0),
    2: ("hexagonal", math.pi / math.sqrt(12)),
    3: ("FCC", math.pi / math.sqrt(18)),
    4: ("D4", math.pi ** 2 / 16),
    8: ("E8", math.pi ** 4 / 384),
    24: ("Leech", math.pi ** 12 / math.factorial(12)),
}
for n, (name, density) in known.items():
    bound = dl.lattice_density_bound(n)
    print(f"  n={n:2d}: bound {bound:.6f} >= {density:.6f} ({name})")

print("\nthe bound dips below 1 (becomes informative) from dimension:")
for n in range(1, 25):
    if dl.lattice_density_bound(n) < 1:
        print(f"  n = {n}")
        break

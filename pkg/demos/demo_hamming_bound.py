"""Lower bounds on designs in the Hamming cube, and a tight example.

The bound says: a design of strength t has at least
(t - lambda(Omega))/t * N/|Omega| points, for any subset Omega whose
Dirichlet eigenvalue lambda is below t.  Sweeping balls around the origin
gives a one-parameter family of bounds; here we compare the best one with
an actual minimal design.
"""

import numpy as np

import designlab as dl

space = dl.hamming(3, 2)
spec = dl.spectral_decomposition(space)
print("H(3,2) Laplacian eigenvalues:", spec.eigenvalues)

# The even-weight code is the smallest design killing the eigenspaces at
# theta = 2 and theta = 4, i.e. a design of strength 6.
words = np.array(space.labels)
code = np.flatnonzero(words.sum(axis=1) % 2 == 0)
design = dl.make_design(code)
print("even-weight code:", [tuple(map(int, space.labels[v])) for v in code])
print("strength:", dl.design_strength(space, spec, design).strength)

reports, best = dl.design_bound_auto(space, spec, t=6)
for rep in reports:
    tag = "vacuous" if rep.vacuous else f"bound {rep.bound:.4f}"
    print(f"  {rep.omega}: lambda = {rep.lam:.6f}, {tag}")
print(f"best bound {best.bound:.4f} vs actual size {design.size}  (tight!)")

# The same machinery on the Johnson scheme: the Fano plane meets the
# radius-0 bound in J(7,3) exactly.
j73 = dl.johnson(7, 3)
jspec = dl.spectral_decomposition(j73)
rep = dl.design_bound(j73, jspec, t=15, spheres=[0])
print(f"\nJ(7,3), t=15, singleton Omega: bound {rep.bound:.4f} "
      f"(the Fano plane has 7 blocks)")

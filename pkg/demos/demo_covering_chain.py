"""The covering mechanism behind the bound, made explicit.

Around each point of a design, place a copy of a subset Omega and sum the
translated first Dirichlet eigenfunctions.  The resulting function F is
orthogonal to every low eigenspace, which forces its support (hence the
union of the copies) to fill a (t - lambda)/t fraction of the space.

The extended Hamming [8,4,4] code shows the chain with slack: 16 disjoint
radius-1 balls cover 144 of 256 vertices, comfortably above the spectral
floor of 64*sqrt(2) ~ 90.5.
"""

import math

import designlab as dl
from designlab.designs import translations_to_origin, build_F

space = dl.hamming(8, 2)
spec = dl.spectral_decomposition(space)

# the [8,4,4] extended Hamming code: dual distance 4, so strength is
# everything below theta = 8
code = []
gen = [0b0110001, 0b1010010, 0b1100100, 0b1111000]    # [7,4] rows, bit k = coord k
for mask in range(16):
    w = 0
    for i in range(4):
        if mask >> i & 1:
            w ^= gen[i]
    code.append(w | (0b10000000 if bin(w).count("1") % 2 else 0))
design = dl.make_design(sorted(code))
print("code size:", design.size)
print("strength:", dl.design_strength(space, spec, design).strength)

omega = dl.spherical_subset_eigen(space, 0, [0, 1])   # radius-1 ball
print(f"lambda(ball_1) = {omega.value:.6f}  (= 8 - 2*sqrt(2))")

report = dl.verify_cover_chain(space, spec, design, t=8, subset_eig=omega)
names = ["|D| * |Omega|", "|union of copies|", "|supp F|",
         "(t - lambda)/t * N"]
for name, value in zip(names, report.chain):
    print(f"  {name:20s} = {value:.4f}")
print(f"spectral floor exactly: 64*sqrt(2) = {64 * math.sqrt(2):.4f}")
print(f"D[F,F] = {report.dirichlet_lhs:.4f} <= "
      f"lambda <F,F> = {report.dirichlet_rhs:.4f}")
print(f"largest projection of F onto a low eigenspace: "
      f"{report.max_design_residual:.2e}")

# F itself, sphere by sphere around one codeword
F = build_F(space, omega, translations_to_origin(space, design),
            design.weights)
print("F on the ball around the origin codeword:",
      sorted({round(float(v), 6) for v in F[space.ball(0, 1)]}))

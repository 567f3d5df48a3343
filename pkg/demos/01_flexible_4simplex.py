#!/usr/bin/env python3
"""A continuous family of non-congruent 4-simplices with fixed triangle areas.

The trick: find two pseudo 4-simplices whose triangle faces all have zero
signed squared area, then travel along t*Q1 + (1/t)*Q2. Order-2 data of the
combination is t-independent (the cross term is the only survivor of the
2x2 determinant), while the full volume moves.
"""

from fractions import Fraction

from flexiplex import at, det, family_n4, q0, realize, signature, sweep

# The seed of the construction: a tetrahedron with equal squared edge lengths
# on opposite sides. Every 2-face is degenerate, the solid is not.
p0 = q0((1, 1))
print("tetrahedron with opposite-edge squares (1, 1, 4):")
for face in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
    print(f"  face {face}: signed squared area = {p0.face(face).signed_sq_volume().value}")
print(f"  full signed squared volume = {p0.signed_sq_volume().value}")

# Extend to dimension 4 by doubling a vertex on each side and pair two copies
# with independent parameters.
fam = family_n4((1, 1, -2), (2, -3, 1))
print("\nfamily t*A + (1/t)*B with a=(1,1,-2), b=(2,-3,1)")

report = sweep(fam)
print(f"grid: {[str(t) for t in report.t_grid]}")
print(f"all order-2 principal minors constant: {report.verdicts['minors_constant']}")
print(f"all 10 triangle areas constant:        {report.verdicts['face_vols_constant']}")
print(f"determinant constant:                  {report.verdicts['det_constant']}")

print("\nper-t determinant (the volume moves):")
for point in report.per_t:
    print(f"  t={str(point.t):>4}: det = {point.det}, inertia = {tuple(point.signature)}")

# det(C(t)) < 0 with all fixed areas positive forces exactly one negative
# direction: the family lives in a Lorentzian space.
c1 = at(fam, Fraction(1))
print(f"\ninertia at t=1: {tuple(signature(c1))} (three positive, one negative)")
realized = realize(c1)
print(f"realized 4 edge vectors in R^(3,1); max Gram error = {realized.max_gram_error():.2e}")

# Non-congruence: squared edge lengths of the realized simplices differ.
q_a, q_b = fam.simplex_at(1), fam.simplex_at(2)
moved = [(i, j) for i in range(5) for j in range(i + 1, 5)
         if q_a.edge(i, j) != q_b.edge(i, j)]
print(f"edges with different squared lengths between t=1 and t=2: {moved}")

#!/usr/bin/env python3
"""Matrix families for every n >= 5: rank-n symmetric matrices with all-ones
kernel whose order-2 principal minors never move.

Members of the degenerate set factor as diag(d) C diag(d) over paired-sign
block matrices C. Two such components with interleaved kernels sum to a
strict member, and t*A + (1/t)*B keeps every order-2 principal minor frozen.
"""

from fractions import Fraction

from flexiplex import (
    at,
    build_family,
    c_block_matrix,
    choose_generic_d,
    membership_D,
    membership_U0,
    minor,
    null_space,
    rank,
    sweep,
    verified_grid,
)

# The paired-sign block matrix and its shifted companion, for m = 3.
c, c_prime = c_block_matrix(3)
print(f"block matrix order {c.order}, rank {rank(c)} (kernel dimension {len(null_space(c))})")
print("kernel basis of C (note the paired +x/-x structure):")
for vec in null_space(c):
    print("  ", [str(x) for x in vec])

d, d_prime = choose_generic_d(3, seed=1)
print(f"\ngeneric kernel vectors d = {[str(x) for x in d]}")
print(f"                      d' = {[str(x) for x in d_prime]}")

# Both scaled components are degenerate; the sum is strict.
fam5 = build_family(5, seed=1)
print(f"\nn=5: A, B degenerate? {membership_D(fam5.A)}, {membership_D(fam5.B)}")
print(f"ranks: A={rank(fam5.A)}, B={rank(fam5.B)}, A+B={rank(fam5.A.add(fam5.B))}")
print(f"A+B strict member: {membership_U0(fam5.A.add(fam5.B))}")

grid = verified_grid(fam5)
report = sweep(fam5, grid)
print(f"verified grid: {[str(t) for t in grid]}")
print(f"order-2 minors constant along it: {report.verdicts['minors_constant']}")

# Parity of the order-n subdeterminants: frozen for even n, linear in t and
# 1/t (no constant term) for odd n.
for n in (5, 6):
    fam = build_family(n, seed=1)
    size = fam.order
    keep = list(range(size - 1))
    values = [minor(at(fam, t), keep, keep) for t in (Fraction(1), Fraction(2), Fraction(3))]
    print(f"\nn={n}: leading order-{size - 1} subdeterminant at t=1,2,3: {values}")
    if n % 2 == 0:
        print("  (even n: exactly constant)")
    else:
        d1, d2 = values[0], values[1]
        alpha = (2 * d2 - d1) / 3
        beta = d1 - alpha
        print(f"  (odd n: fits alpha*t + beta/t with alpha={alpha}, beta={beta})")

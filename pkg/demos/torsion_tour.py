#!/usr/bin/env python3
# A tour of the graded torsion of Lambda = HH_0 of preprojective algebras.
#
# The headline phenomenon: over Z, Lambda picks up a single Z/p in each
# degree 2 p^l, generated by the divided power r^(p^l) = (1/p)[r^(p^l)].
# Everything below is computed exactly, no floating point anywhere.

from preproj import catalog, lambda_graded, r_power_class, render_cyclic
from preproj.homology import r_power_cyclic
from preproj.freealg import PathContext

# --- the one-vertex quiver with two loop pairs --------------------------
# This is the smallest genuinely interesting case.  The double has four
# letters x1, x2 and their reverses; r = [x1, x1*] + [x2, x2*].

q = catalog("free", 2)
report, comp = lambda_graded(q, (), 6)
print("Lambda of the 2-loop-pair quiver, degrees 0..6")
for d in range(7):
    print(f"  degree {d}: {report.summaries[d]}")

# Torsion appears exactly at degrees 4 and 6: Z/2 and Z/3.  The generators
# are the divided powers of r.  Their orders come from exact Smith normal
# form against the degreewise relation lattice.

c2 = r_power_class(comp, 2, 1)
c3 = r_power_class(comp, 3, 1)
print("order of r^(2):", comp.order_of(c2))
print("order of r^(3):", comp.order_of(c3))

# For a single loop pair the divided square is the classic commutator
# identity (1/2)[r^2] = [xyxy] - [xxyy] with y the reverse of x:
ctx1 = PathContext(catalog("free", 1))
print("r^(2) for one loop pair:", render_cyclic(r_power_cyclic(ctx1, 2, 1)))

# --- Dynkin quivers: Lambda is all torsion -------------------------------
# For type A nothing survives in positive degrees; for E6 and E7 the
# finite tables below appear (and nothing else).

for name, n, D in [("dynkin_a", 3, 8), ("dynkin_e", 6, 12), ("dynkin_e", 7, 16)]:
    rep, _ = lambda_graded(catalog(name, n), (), D)
    print(f"{name}({n}) torsion table:", rep.torsion_table() or "trivial")

# --- extended Dynkin: free part + the same torsion -----------------------
# The free rank in each positive degree equals the corner entry of the
# inverse t-Cartan matrix; the torsion matches a closed-form table.

rep, _ = lambda_graded(catalog("affine_d", 4), (), 8)
print("~D4 ranks:", [rep.summaries[d].free_rank for d in range(9)])
print("~D4 torsion:", rep.torsion_table())

#!/usr/bin/env python3
# The necklace Lie bialgebra on cyclic words, and the Poisson algebra it
# induces on the corner of an extended Dynkin preprojective algebra.

from preproj import (CornerPoisson, bracket, catalog, cobracket, cyclic_project,
                     lambda_graded, loday_bracket, render_cyclic, render_element)
from preproj.freealg import PathContext

# --- the basic operations on one loop pair --------------------------------
ctx = PathContext(catalog("free", 1))
x, y = ctx.arrow(0), ctx.arrow(1)   # y is the reverse of x
cx, cy = cyclic_project(x), cyclic_project(y)

print("{[x], [x*]} =", render_cyclic(bracket(cx, cy)))       # the idempotent class
print("{[x x*], [x]} =", render_cyclic(bracket(cyclic_project(x * y), cx)))
print("loday {[x], x*^2} =", render_element(loday_bracket(cx, y * y)))
print("cobracket of [x x*]:", cobracket(cyclic_project(x * y)))

# --- the induced Poisson structure on i0 Pi i0 for the 3-cycle -------------
# Brackets are computed in the free cyclic space, reduced into Lambda, and
# projected onto the torsion-free corner coordinates.  For the n-cycle the
# corner algebra is Z[X, Y, Z]/(XY - Z^n) with
#   {X, Z} = X,  {Y, Z} = -Y,  {X, Y} = n Z^(n-1).

q = catalog("affine_a", 3)
_, comp = lambda_graded(q, (), 8)
cp = CornerPoisson(comp)
c = comp.ctx
orig = [a for (a, _, _) in c.quiver.arrows if a < c.quiver.star[a]]
xs = sum((c.arrow(a) for a in orig[1:]), c.arrow(orig[0]))
ys = sum((c.arrow(c.quiver.star[a]) for a in orig[1:]),
         c.arrow(c.quiver.star[orig[0]]))
e0 = c.idempotent(cp.i0)
X = cp.reduce_corner(e0 * xs ** 3)
Y = cp.reduce_corner(e0 * ys ** 3)
Z = cp.reduce_corner(e0 * xs * ys)

print("X =", render_element(X))
print("{X, Z} =", render_element(cp.poisson(X, Z)), " (equals X)")
print("{Y, Z} =", render_element(cp.poisson(Y, Z)), " (equals -Y)")
print("{X, Y} =", render_element(cp.poisson(X, Y)), " (equals 3 Z^2)")
print("X Y == Z^3:", cp.reduce_corner(X * Y) == cp.reduce_corner(Z * Z * Z))

"""Tour of the group of affine maps of the line and its coadjoint geometry.

The algebra has two generators: X scales the line and Y translates it, with
[X, Y] = Y.  Dual to the algebra is a plane of functionals (x, y); the group
moves those functionals around, and the plane splits into three kinds of
orbits: every point of the axis y = 0 stays fixed, while the upper and the
lower half-planes are each a single sweeping orbit.

Run:  python demos/01_orbits_and_coadjoint_action.py
"""
import numpy as np

from affquant import (CoadjointPoint, LieAlgebraElement, X, Y, bracket,
                      classify_orbit, coadjoint_act, exp_group, kirillov_form)

# (1) The bracket: scaling does not commute with translating.
print("bracket table")
for name, z in (("X", X), ("Y", Y), ("2X+3Y", LieAlgebraElement(2, 3))):
    w = bracket(X, z)
    print(f"  [X, {name}] = {w.alpha}*X + {w.beta}*Y")

# (2) Exponentiate algebra elements into affine maps a*x + b.
print("\nexponentials")
for z in (LieAlgebraElement(1, 0), LieAlgebraElement(0, 1), LieAlgebraElement(1, 1)):
    g = exp_group(z)
    print(f"  exp({z.alpha}*X + {z.beta}*Y) = (a={g.a:.6f}, b={g.b:.6f})")

# (3) Classify a few functionals by orbit.
print("\norbit classification")
for pt in (CoadjointPoint(3, 0), CoadjointPoint(0, 1), CoadjointPoint(5, -2)):
    orbit = classify_orbit(pt)
    label = orbit.kind if orbit.kind != "point" else f"point at lambda={orbit.lam}"
    print(f"  ({pt.x}, {pt.y}) -> {label}")

# (4) The action never moves a functional off its orbit, and the sign of y
#     is preserved because the dilation coefficient is positive.
rng = np.random.default_rng(1)
start = CoadjointPoint(0.0, 1.0)
print("\nrandom walk over the upper half-plane (y stays positive)")
point = start
for step in range(5):
    u = LieAlgebraElement(rng.uniform(-2, 2), rng.uniform(-2, 2))
    point = coadjoint_act(exp_group(u), point)
    print(f"  step {step}: (x, y) = ({point.x:+.6f}, {point.y:+.6f})"
          f"  orbit = {classify_orbit(point).kind}")

# (5) On a two-dimensional orbit the pairing <F, [Z, T]> is a symplectic
#     area element; at height y it equals (a1 b2 - a2 b1) * y.
f_pt = CoadjointPoint(0.7, 2.0)
print("\nsymplectic pairing at", (f_pt.x, f_pt.y))
print("  omega(X, Y)       =", kirillov_form(f_pt, X, Y))
print("  omega(2X+3Y, X+5Y) =", kirillov_form(f_pt, LieAlgebraElement(2, 3),
                                              LieAlgebraElement(1, 5)))

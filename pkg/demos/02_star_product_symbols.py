"""Exact star-products on the orbit chart.

Functions of the form sum c p^m e^{kq} close under the star-product, and on
this family the deformation series terminates, so everything below is exact
rational arithmetic: no tolerances, no truncation.

The punchline is the commutation relation: multiplying Hamiltonians with the
star-product and taking commutators reproduces the Lie bracket on the nose,
which is what makes the quantization a representation of the algebra.

Run:  python demos/02_star_product_symbols.py
"""
from fractions import Fraction

from affquant import (ExpPolySymbol, LieAlgebraElement, bracket, hamiltonian,
                      p_r, poisson, star, star_commutator)

P = ExpPolySymbol.p()
EQ = ExpPolySymbol.exp_q()

# (1) The first quantum correction: p * e^q picks up a term of order 1/2.
print("star products")
print("  p * e^q      =", star(P, EQ))
print("  e^q * p      =", star(EQ, P))
print("  difference   =", star_commutator(P, EQ))

# (2) Bidifferential terms: order 0 is the pointwise product, order 1 the
#     Poisson bracket, and on linear Hamiltonians order >= 2 dies.
zt = hamiltonian(LieAlgebraElement(2, 3))
tt = hamiltonian(LieAlgebraElement(1, 5))
print("\ncontractions of 2p+3e^q with p+5e^q")
for r in range(4):
    print(f"  P^{r} =", p_r(zt, tt, r))
print("  Poisson bracket =", poisson(zt, tt))

# (3) The homomorphism: i Z~ * i T~ - i T~ * i Z~ = i [Z,T]~, exactly.
print("\ncommutator vs bracket (exact equality)")
i = complex(0, 1)
for (a1, b1, a2, b2) in [(2, 3, 1, 5), (1, 0, 0, 1),
                         (Fraction(1, 3), Fraction(-7, 2), Fraction(2, 5), 4)]:
    z = LieAlgebraElement(a1, b1)
    t = LieAlgebraElement(a2, b2)
    lhs = star_commutator(1j * hamiltonian(z), 1j * hamiltonian(t))
    rhs = 1j * hamiltonian(bracket(z, t))
    print(f"  Z=({a1},{b1}) T=({a2},{b2}):  match = {lhs == rhs},  value = {rhs}")

# (4) Associativity survives the deformation (a stress test of the series).
u = ExpPolySymbol({(2, 1): Fraction(1, 2), (0, -1): 3})
v = ExpPolySymbol({(1, 0): 1, (1, 2): Fraction(-2, 7)})
w = ExpPolySymbol({(3, -2): 5, (0, 0): 1})
print("\nassociativity on a random triple:",
      star(star(u, v), w) == star(u, star(v, w)))

"""Exact algebra of exponential-polynomial symbols on the (p, q) plane.

A symbol is a finite sum  sum_{m,k} c_{m,k} p^m e^{kq}  with m a non-negative
integer, k an integer frequency and c_{m,k} a Gaussian rational.  This family
is closed under products and partial derivatives, and every p-derivative
lowers the p-degree, so the Moyal star-product series terminates after
deg_p(u) + deg_p(v) terms and can be evaluated exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import numpy as np

from .rational import CR_HALF_OVER_I, CR_ONE, ComplexRational


class PoissonTensor:
    """The constant antisymmetric 2-tensor of the plane in (p, q) coordinates.

    ``matrix[0][1] = -1`` and ``matrix[1][0] = +1``.  The bidifferential
    contractions below pair derivatives of the first symbol with the second
    index slot, so the first-order bracket comes out as the Poisson bracket
    ``dp(u) dq(v) - dq(u) dp(v)`` (positive orientation).
    """

    matrix = ((0, -1), (1, 0))

    @classmethod
    def entry(cls, i: int, j: int) -> int:
        return cls.matrix[i][j]


POISSON_TENSOR = PoissonTensor()


class ExpPolySymbol:
    """Finite map (m, k) -> coefficient, representing sum c p^m e^{kq}.

    Instances are immutable and kept in canonical form: zero coefficients
    are never stored, so ``==`` is exact coefficient-wise equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        canon = {}
        for (m, k), c in (terms or {}).items():
            if not isinstance(m, int) or m < 0:
                raise ValueError(f"p-power must be a non-negative integer, got {m!r}")
            if not isinstance(k, int):
                raise ValueError(f"q-frequency must be an integer, got {k!r}")
            cr = ComplexRational.from_value(c)
            if cr:
                canon[(m, k)] = canon.get((m, k), ComplexRational(0)) + cr
                if not canon[(m, k)]:
                    del canon[(m, k)]
        object.__setattr__(self, "_terms", canon)

    def __setattr__(self, name, value):
        raise AttributeError("ExpPolySymbol is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "ExpPolySymbol":
        return cls({})

    @classmethod
    def one(cls) -> "ExpPolySymbol":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, m: int, k: int, coeff=1) -> "ExpPolySymbol":
        """The single term coeff * p^m * e^{kq}."""
        return cls({(m, k): coeff})

    @classmethod
    def p(cls) -> "ExpPolySymbol":
        return cls.monomial(1, 0)

    @classmethod
    def exp_q(cls, k: int = 1) -> "ExpPolySymbol":
        return cls.monomial(0, k)

    # -- structure ------------------------------------------------------------

    def items(self):
        return self._terms.items()

    def coefficient(self, m: int, k: int) -> ComplexRational:
        return self._terms.get((m, k), ComplexRational(0))

    def deg_p(self) -> int:
        """Highest p-power present; -1 for the zero symbol."""
        if not self._terms:
            return -1
        return max(m for (m, _k) in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExpPolySymbol):
            return NotImplemented
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, ComplexRational(0)) + c
        return ExpPolySymbol(terms)

    def __sub__(self, other):
        if not isinstance(other, ExpPolySymbol):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ExpPolySymbol({key: -c for key, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, ExpPolySymbol):
            terms = {}
            for (m1, k1), c1 in self._terms.items():
                for (m2, k2), c2 in other._terms.items():
                    key = (m1 + m2, k1 + k2)
                    terms[key] = terms.get(key, ComplexRational(0)) + c1 * c2
            return ExpPolySymbol(terms)
        scalar = ComplexRational.from_value(other)
        return ExpPolySymbol({key: scalar * c for key, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExpPolySymbol):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "ExpPolySymbol(0)"
        parts = []
        for (m, k) in sorted(self._terms):
            c = self._terms[(m, k)]
            factors = [f"({c})"]
            if m:
                factors.append("p" if m == 1 else f"p^{m}")
            if k:
                factors.append("e^q" if k == 1 else f"e^{{{k}q}}")
            parts.append("*".join(factors))
        return "ExpPolySymbol(" + " + ".join(parts) + ")"

    def evaluate(self, p_vals, q_vals):
        """Evaluate the symbol at numeric (broadcastable) arguments."""
        p_vals = np.asarray(p_vals)
        q_vals = np.asarray(q_vals)
        out = np.zeros(np.broadcast(p_vals, q_vals).shape, dtype=complex)
        for (m, k), c in self._terms.items():
            out = out + complex(c) * p_vals**m * np.exp(k * q_vals)
        return out


def derive(u: ExpPolySymbol, var: str, order: int = 1) -> ExpPolySymbol:
    """Exact partial derivative of order ``order`` along ``var`` in {"p", "q"}."""
    if var not in ("p", "q"):
        raise ValueError(f"unknown variable {var!r}; expected 'p' or 'q'")
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    terms = {}
    for (m, k), c in u.items():
        if var == "p":
            if m < order:
                continue
            # d^n/dp^n p^m = m!/(m-n)! p^{m-n}
            fall = Fraction(factorial(m), factorial(m - order))
            terms[(m - order, k)] = terms.get((m - order, k), ComplexRational(0)) + c * fall
        else:
            if k == 0 and order > 0:
                continue
            terms[(m, k)] = terms.get((m, k), ComplexRational(0)) + c * (k ** order)
    return ExpPolySymbol(terms)


def p_r(u: ExpPolySymbol, v: ExpPolySymbol, r: int) -> ExpPolySymbol:
    """The r-fold bidifferential contraction against the constant tensor.

    In two dimensions the contraction collapses to the binomial expansion

        P^r(u, v) = sum_j C(r, j) (-1)^{r-j} dp^j dq^{r-j} u * dp^{r-j} dq^j v,

    with P^0(u, v) = u v and P^1 the Poisson bracket.
    """
    if r < 0:
        raise ValueError("order r must be non-negative")
    if r == 0:
        return u * v
    acc = ExpPolySymbol.zero()
    for j in range(r + 1):
        sign = 1 if (r - j) % 2 == 0 else -1
        left = derive(derive(u, "p", j), "q", r - j)
        right = derive(derive(v, "p", r - j), "q", j)
        acc = acc + (comb(r, j) * sign) * (left * right)
    return acc


def poisson(u: ExpPolySymbol, v: ExpPolySymbol) -> ExpPolySymbol:
    """Poisson bracket {u, v} = dp(u) dq(v) - dq(u) dp(v) (equals p_r(u, v, 1))."""
    return p_r(u, v, 1)


def star(u: ExpPolySymbol, v: ExpPolySymbol) -> ExpPolySymbol:
    """Moyal star-product u * v + sum_{r>=1} (1/r!) (1/2i)^r P^r(u, v).

    On this algebra every P^r with r > deg_p(u) + deg_p(v) vanishes, so the
    series is a finite sum and the result is exact.
    """
    r_max = u.deg_p() + v.deg_p()
    acc = u * v
    coeff = CR_ONE
    for r in range(1, r_max + 1):
        coeff = coeff * CR_HALF_OVER_I
        acc = acc + (coeff * Fraction(1, factorial(r))) * p_r(u, v, r)
    return acc


def star_commutator(u: ExpPolySymbol, v: ExpPolySymbol) -> ExpPolySymbol:
    """star(u, v) - star(v, u)."""
    return star(u, v) - star(v, u)

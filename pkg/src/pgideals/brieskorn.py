"""Brute-force oracles for Brieskorn-type hypersurface singularities.

For f = x^p + y^q + z^r the quotient ring has the monomial basis
x^a y^b z^c with a <= p-1 (rewrite x^p in terms of the other variables),
so colengths and the weighted-homogeneous geometric genus reduce to exact
lattice-point counts.  The Fermat family (p = q = r = e) additionally has
closed forms for its colengths and h1 sequence; both are provided so the
enumeration can check the formulas and vice versa.
"""

from dataclasses import dataclass
from functools import cached_property
from math import comb, lcm

from . import kernels
from .errors import DomainError
from .hilbert import NumericalIdealDatum


@dataclass(frozen=True)
class BrieskornDescriptor:
    """Exponents (p, q, r) of x^p + y^q + z^r with the derived grading.

    The common degree is lcm(p, q, r); the weights are degree/p, degree/q,
    degree/r, and the a-invariant is degree minus the weight sum.
    """

    p: int
    q: int
    r: int

    def __post_init__(self):
        for e in (self.p, self.q, self.r):
            if e < 2:
                raise DomainError(f"exponents must be >= 2, got {e}")

    @cached_property
    def degree(self):
        return lcm(self.p, self.q, self.r)

    @cached_property
    def weights(self):
        d = self.degree
        return (d // self.p, d // self.q, d // self.r)

    @cached_property
    def a_invariant(self):
        return self.degree - sum(self.weights)


def a_invariant(b):
    """Top nonvanishing graded degree: degree - (w_x + w_y + w_z)."""
    return b.a_invariant


def weighted_pg(b):
    """Geometric genus of the weighted-homogeneous singularity: the number
    of basis monomials x^a y^b z^c (a <= p-1) of weighted degree <= the
    a-invariant."""
    wx, wy, wz = b.weights
    if b.a_invariant < 0:
        return 0
    return kernels.count_weighted(b.p - 1, wx, wy, wz, b.a_invariant)


def fermat_colength(e, n):
    """Colength of the (n+1)-st power of the maximal ideal in the Fermat
    ring of exponent e, by direct monomial count: x^a y^b z^c with
    a <= e-1 and a + b + c <= n."""
    if e < 2:
        raise DomainError(f"exponent must be >= 2, got {e}")
    if n < 0:
        raise DomainError("n must be >= 0")
    return kernels.count_colength(e - 1, n)


def fermat_closed_form(e, n):
    """The closed form for the same colength: the cubic branch
    (n+1)(n+2)(n+3)/6 for n <= e-1 and the Hilbert polynomial
    e*C(n+2,2) - e(e-1)/2*(n+1) + e(e-1)(e-2)/6 from n >= e on."""
    if e < 2:
        raise DomainError(f"exponent must be >= 2, got {e}")
    if n < 0:
        raise DomainError("n must be >= 0")
    if n <= e - 1:
        return (n + 1) * (n + 2) * (n + 3) // 6
    return (
        e * ((n + 2) * (n + 1) // 2)
        - (e * (e - 1) // 2) * (n + 1)
        + e * (e - 1) * (e - 2) // 6
    )


def fermat_h1_sequence(e):
    """h1 values of the Fermat maximal ideal: h1[k] = C(e-k, 3) for
    k = 1..e (zero once e-k < 3)."""
    if e < 2:
        raise DomainError(f"exponent must be >= 2, got {e}")
    return tuple(comb(e - k, 3) for k in range(1, e + 1))


def fermat_datum(e):
    """Full numerical datum of the Fermat maximal ideal: zz = -e,
    zk = e(e-2), pg = C(e,3), with the h1 sequence zero-padded so the
    datum invariants (at least pg+1 entries) hold."""
    pg = comb(e, 3)
    h1 = fermat_h1_sequence(e)
    if len(h1) < pg + 1:
        h1 = h1 + (0,) * (pg + 1 - len(h1))
    return NumericalIdealDatum(-e, e * (e - 2), pg, h1, label=f"fermat-{e}")

"""The rational function field k = F_q(t), its places and valuations.

A RatFunc is always reduced with a monic denominator, so equality is
structural and ord computations cost one multiplicity count.  A Place is
either a monic irreducible polynomial (a finite place) or the infinite
place, where ord is minus the degree map.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .fq import FieldSpec
from .poly import Poly, factorize, gcd, is_irreducible

__all__ = ["RatFunc", "Place", "ord_at"]

INFINITE_ORD = math.inf


class RatFunc:
    """An element of F_q(t): num/den, reduced, den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _trusted=False):
        if den is None:
            den = Poly.one(num.spec)
        if _trusted:
            self.num = num
            self.den = den
            self._hash = None
            return
        if num.spec != den.spec:
            raise DomainError("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = Poly.one(num.spec)
            self._hash = None
            return
        g = gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        u, den = den.monic()
        if u != den.spec.one():
            num = num.scale(den.spec.inv(u))
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_poly(cls, f):
        return cls(f, Poly.one(f.spec), _trusted=True)

    @classmethod
    def from_int(cls, spec, m):
        return cls(Poly.constant(spec, spec.from_int(m)), Poly.one(spec), _trusted=True)

    @classmethod
    def zero(cls, spec):
        return cls(Poly.zero(spec), Poly.one(spec), _trusted=True)

    @classmethod
    def one(cls, spec):
        return cls(Poly.one(spec), Poly.one(spec), _trusted=True)

    @classmethod
    def t(cls, spec):
        return cls(Poly.t(spec), Poly.one(spec), _trusted=True)

    # -- structure -------------------------------------------------------------

    @property
    def spec(self):
        return self.num.spec

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    def degree(self):
        """deg num - deg den; the zero function has degree -inf."""
        if self.is_zero():
            return -INFINITE_ORD
        return self.num.degree - self.den.degree

    # -- arithmetic ---------------------------------------------------------------

    def _same(self, other):
        if isinstance(other, RatFunc):
            if other.spec != self.spec:
                raise DomainError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, int):
            return RatFunc.from_int(self.spec, other)
        return None

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, self.den, _trusted=True)
        # Henrici: reduce by gcd of denominators first
        g = gcd(self.den, other.den)
        if g.degree == 0:
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            return RatFunc(num, den, _trusted=True)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        num = self.num * d2 + other.num * d1
        h = gcd(num, g)
        if h.degree > 0:
            num = num.exact_div(h)
            g = g.exact_div(h)
        return RatFunc(num, d1 * d2 * g, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _trusted=True)

    def __sub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.spec)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, _trusted=True)
        # cross-reduce before multiplying
        n1, d2 = self.num, other.den
        g = gcd(n1, d2)
        if g.degree > 0:
            n1, d2 = n1.exact_div(g), d2.exact_div(g)
        n2, d1 = other.num, self.den
        g = gcd(n2, d1)
        if g.degree > 0:
            n2, d1 = n2.exact_div(g), d1.exact_div(g)
        num = n1 * n2
        den = d1 * d2
        u, den = den.monic()
        if u != self.spec.one():
            num = num.scale(self.spec.inv(u))
        return RatFunc(num, den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        u, num = self.num.monic()
        den = self.den.scale(self.spec.inv(u))
        return RatFunc(num, den, _trusted=True).swap()

    def swap(self):
        return RatFunc(self.den, self.num, _trusted=True)

    def __truediv__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, _trusted=True)

    def frob_power(self, k=1):
        """self^(p^k) via coefficientwise Frobenius; cheap in char p."""
        return RatFunc(self.num.frob_stretch(k), self.den.frob_stretch(k),
                       _trusted=True)

    def scale_const(self, raw):
        return RatFunc(self.num.scale(raw), self.den, _trusted=True)

    # -- valuations -----------------------------------------------------------------

    def ord_at(self, place):
        if self.is_zero():
            return INFINITE_ORD
        if place.is_infinity:
            return self.den.degree - self.num.degree
        pi = place.poly
        e = self.num.multiplicity_of(pi)
        if e:
            return e
        return -self.den.multiplicity_of(pi)

    def reduce_at(self, place):
        """Image in the residue field; requires ord >= 0 there."""
        rf = place.residue_spec()
        if place.is_infinity:
            d = self.degree()
            if d == -INFINITE_ORD:
                return rf.zero()
            if d > 0:
                raise DomainError("negative ord at infinity, no reduction")
            if d < 0:
                return rf.zero()
            return self.spec.div(self.num.lead(), self.den.lead())
        pi = place.poly
        nr = self.num % pi
        dr = self.den % pi
        if dr.is_zero():
            raise DomainError("negative ord at %s, no reduction" % place)
        return rf.div(place.residue_of_poly(nr), place.residue_of_poly(dr))

    # -- comparisons, display ----------------------------------------------------------

    def __eq__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_str(self, var="t"):
        if self.den.is_one():
            return self.num.to_str(var)
        return "(%s)/(%s)" % (self.num.to_str(var), self.den.to_str(var))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "RatFunc(%s)" % self.to_str()


class Place:
    """A place of F_q(t): a monic irreducible polynomial, or infinity."""

    __slots__ = ("spec", "poly", "is_infinity", "_residue", "_hash")

    def __init__(self, spec, poly=None, *, _checked=False):
        self.spec = spec
        self.poly = poly
        self.is_infinity = poly is None
        self._residue = None
        if poly is not None and not _checked:
            if not poly.is_monic() or not is_irreducible(poly):
                raise DomainError("finite place needs a monic irreducible polynomial")
        self._hash = hash((spec, None if poly is None else poly))

    @classmethod
    def finite(cls, poly):
        return cls(poly.spec, poly)

    @classmethod
    def infinity(cls, spec):
        return cls(spec, None)

    @property
    def degree(self):
        return 1 if self.is_infinity else self.poly.degree

    def uniformizer(self):
        """pi_v as an element of k; 1/t at the infinite place."""
        if self.is_infinity:
            return RatFunc(Poly.one(self.spec), Poly.t(self.spec), _trusted=True)
        return RatFunc.from_poly(self.poly)

    def residue_spec(self):
        """The residue field, realized as an F_p quotient."""
        if self._residue is not None:
            return self._residue
        spec = self.spec
        if self.is_infinity or self.degree == 1:
            rf = spec
        elif spec.n == 1:
            rf = FieldSpec(spec.p, self.degree,
                           tuple(int(c) for c in self.poly.coeffs()))
        else:
            raise DomainError("degree > 1 places over proper extension "
                              "constant fields are not supported")
        self._residue = rf
        return rf

    def residue_of_poly(self, r):
        """Map a polynomial of degree < deg(place) into the residue field."""
        rf = self.residue_spec()
        if self.is_infinity:
            return r.coeff(0)
        if self.degree == 1:
            # evaluate at the root of the linear place polynomial
            root = self.spec.neg(self.poly.coeff(0))
            return r.eval(root)
        out = [int(c) for c in r.coeffs()]
        out += [0] * (rf.n - len(out))
        return tuple(out)

    def lift_residue(self, raw):
        """A polynomial representative of a residue field element."""
        spec = self.spec
        if self.is_infinity or self.degree == 1:
            return Poly.constant(spec, raw)
        return Poly(spec, list(raw))

    def __eq__(self, other):
        return (isinstance(other, Place) and self.spec == other.spec
                and self.is_infinity == other.is_infinity
                and self.poly == other.poly)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "inf" if self.is_infinity else "(%s)" % self.poly.to_str()

    def __repr__(self):
        return "Place(%s)" % self


def ord_at(x, place):
    """ord_v(x); +inf for the zero function."""
    return x.ord_at(place)


def places_of(x):
    """All places where x has nonzero ord, including infinity when it does."""
    out = []
    for f, _ in factorize(x.num).factors:
        if f.degree > 0:
            out.append(Place(x.spec, f, _checked=True))
    for f, _ in factorize(x.den).factors:
        if f.degree > 0:
            pl = Place(x.spec, f, _checked=True)
            if pl not in out:
                out.append(pl)
    if x.degree() != 0:
        out.append(Place.infinity(x.spec))
    return out

"""Completions of F_q(t) at a place: truncated Laurent series arithmetic.

A LocalElement is a finite map exponent -> residue field element together
with an absolute precision N: the element is known modulo pi_v^N.  Every
operation tracks precision pessimistically, so a computed digit is always
an exact digit.  The uniformizer is the place polynomial itself at a
finite place and 1/t at infinity.

Also here: positive parts (strip the leading residue coefficient to 1),
powers by rationals with denominator prime to p through the binomial
series, and the p^N-th power test on 1-units.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, PrecisionError
from .poly import Poly
from .ratfunc import RatFunc

__all__ = ["LocalElement", "PositivePart", "expand_at", "positive_part",
           "zp_power", "pth_power_test", "is_pn_power", "render_local"]


class LocalElement:
    """A truncated Laurent series in the uniformizer of one place."""

    __slots__ = ("place", "rf", "coeffs", "prec")

    def __init__(self, place, coeffs, prec, *, _clean=False):
        self.place = place
        self.rf = place.residue_spec()
        if not _clean:
            rf = self.rf
            coeffs = {e: c for e, c in coeffs.items()
                      if e < prec and not rf.is_zero(c)}
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_int_coeffs(cls, place, pairs, prec):
        rf = place.residue_spec()
        return cls(place, {e: rf.from_int(c) for e, c in dict(pairs).items()}, prec)

    @classmethod
    def one(cls, place, prec):
        rf = place.residue_spec()
        return cls(place, {0: rf.one()}, prec)

    @classmethod
    def zero(cls, place, prec):
        return cls(place, {}, prec, _clean=True)

    @classmethod
    def unit_pi_power(cls, place, e, prec):
        rf = place.residue_spec()
        return cls(place, {e: rf.one()}, prec)

    # -- structure --------------------------------------------------------------

    def order(self):
        """Lead exponent, or None for an element that is zero to precision."""
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def coeff(self, e):
        return self.coeffs.get(e, self.rf.zero())

    def is_zero_to_prec(self):
        return not self.coeffs

    def is_one_unit(self):
        return self.order() == 0 and self.coeffs[0] == self.rf.one()

    def support(self):
        return sorted(self.coeffs)

    # -- arithmetic ----------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LocalElement) or other.place != self.place:
            raise DomainError("local elements at different places")

    def __add__(self, other):
        self._check(other)
        prec = min(self.prec, other.prec)
        rf = self.rf
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = rf.add(out.get(e, rf.zero()), c)
            if rf.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return LocalElement(self.place, {e: c for e, c in out.items() if e < prec},
                            prec, _clean=True)

    def __neg__(self):
        rf = self.rf
        return LocalElement(self.place, {e: rf.neg(c) for e, c in self.coeffs.items()},
                            self.prec, _clean=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        e1, e2 = self.order(), other.order()
        if e1 is None or e2 is None:
            # zero (to precision) times something of known lead
            if e1 is None and e2 is None:
                prec = self.prec + other.prec
            elif e1 is None:
                prec = self.prec + e2
            else:
                prec = other.prec + e1
            return LocalElement.zero(self.place, prec)
        prec = min(self.prec + e2, other.prec + e1)
        rf = self.rf
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if e >= prec:
                    continue
                v = rf.mul(ca, cb)
                s = rf.add(out.get(e, rf.zero()), v)
                if rf.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return LocalElement(self.place, out, prec, _clean=True)

    def scale(self, raw):
        rf = self.rf
        if rf.is_zero(raw):
            return LocalElement.zero(self.place, self.prec)
        return LocalElement(self.place,
                            {e: rf.mul(c, raw) for e, c in self.coeffs.items()},
                            self.prec, _clean=True)

    def shift(self, k):
        """Multiply by pi^k."""
        return LocalElement(self.place,
                            {e + k: c for e, c in self.coeffs.items()},
                            self.prec + k, _clean=True)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return LocalElement(self.place,
                            {e: c for e, c in self.coeffs.items() if e < prec},
                            prec, _clean=True)

    def inverse(self):
        e = self.order()
        if e is None:
            raise ZeroDivisionError("inverse of a series that is zero to precision")
        rf = self.rf
        rel = self.prec - e
        # digits of the unit part
        a = [rf.zero()] * rel
        for ee, c in self.coeffs.items():
            a[ee - e] = c
        inv0 = rf.inv(a[0])
        b = [rf.zero()] * rel
        b[0] = inv0
        for k in range(1, rel):
            acc = rf.zero()
            for i in range(1, k + 1):
                if not rf.is_zero(a[i]) and not rf.is_zero(b[k - i]):
                    acc = rf.add(acc, rf.mul(a[i], b[k - i]))
            b[k] = rf.neg(rf.mul(acc, inv0))
        out = {i - e: c for i, c in enumerate(b) if not rf.is_zero(c)}
        return LocalElement(self.place, out, rel - e, _clean=True)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, m):
        if m < 0:
            return self.inverse() ** (-m)
        if m == 0:
            e = self.order() or 0
            return LocalElement.one(self.place, self.prec - e)
        out = None
        cur = self
        while m:
            if m & 1:
                out = cur if out is None else out * cur
            m >>= 1
            if m:
                cur = cur * cur
        return out

    def frob_power(self, k=1):
        """self^(p^k): coefficientwise Frobenius, exponents stretch."""
        if k == 0:
            return self
        rf = self.rf
        step = rf.p ** k
        return LocalElement(self.place,
                            {e * step: rf.frob(c, k) for e, c in self.coeffs.items()},
                            self.prec * step, _clean=True)

    # -- comparisons --------------------------------------------------------------

    def matches(self, other):
        """Equality modulo pi^min(precisions)."""
        self._check(other)
        prec = min(self.prec, other.prec)
        for e in set(self.coeffs) | set(other.coeffs):
            if e >= prec:
                continue
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LocalElement):
            return NotImplemented
        return (self.place == other.place and self.prec == other.prec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.place, self.prec, tuple(sorted(self.coeffs.items()))))

    def __str__(self):
        return render_local(self)

    def __repr__(self):
        return "LocalElement(%s)" % render_local(self)


def _poly_digits(f, place, count):
    """Exact uniformizer digits of a polynomial, padded to count entries."""
    rf = place.residue_spec()
    out = []
    if place.is_infinity:
        cs = f.coeffs()
        d = f.degree
        for j in range(count):
            out.append(cs[d - j] if 0 <= d - j <= d else rf.zero())
        return out
    pi = place.poly
    cur = f
    for _ in range(count):
        if cur.is_zero():
            out.append(rf.zero())
            continue
        r = cur % pi
        raw = place.residue_of_poly(r)
        out.append(raw)
        cur = (cur - place.lift_residue(raw)).exact_div(pi)
    return out


def _div_digits(a, b, rf, count):
    """Digit series a/b with b[0] invertible."""
    inv0 = rf.inv(b[0])
    out = []
    for k in range(count):
        acc = a[k] if k < len(a) else rf.zero()
        for i in range(1, k + 1):
            bi = b[i] if i < len(b) else rf.zero()
            if not rf.is_zero(bi) and not rf.is_zero(out[k - i]):
                acc = rf.sub(acc, rf.mul(bi, out[k - i]))
        out.append(rf.mul(acc, inv0))
    return out


def expand_at(x, place, prec):
    """Laurent expansion of a rational function, correct mod pi^(ord + prec)."""
    if isinstance(x, Poly):
        x = RatFunc.from_poly(x)
    if x.is_zero():
        raise DomainError("the zero function has no leading exponent")
    if prec < 1:
        raise DomainError("prec must be at least 1")
    rf = place.residue_spec()
    if place.is_infinity:
        dnum = _poly_digits(x.num, place, prec)
        dden = _poly_digits(x.den, place, prec)
        ord_v = x.den.degree - x.num.degree
    else:
        pi = place.poly
        e_num = x.num.multiplicity_of(pi)
        e_den = x.den.multiplicity_of(pi)
        num0 = x.num
        for _ in range(e_num):
            num0 = num0.exact_div(pi)
        den0 = x.den
        for _ in range(e_den):
            den0 = den0.exact_div(pi)
        dnum = _poly_digits(num0, place, prec)
        dden = _poly_digits(den0, place, prec)
        ord_v = e_num - e_den
    digits = _div_digits(dnum, dden, rf, prec)
    coeffs = {ord_v + i: c for i, c in enumerate(digits) if not rf.is_zero(c)}
    return LocalElement(place, coeffs, ord_v + prec, _clean=True)


class PositivePart:
    """pi^exponent times a 1-unit; the class of x modulo constants."""

    __slots__ = ("place", "exponent", "unit")

    def __init__(self, place, exponent, unit):
        if not unit.is_one_unit():
            raise DomainError("unit part must be a 1-unit")
        self.place = place
        self.exponent = Fraction(exponent)
        self.unit = unit

    def __mul__(self, other):
        if other.place != self.place:
            raise DomainError("positive parts at different places")
        return PositivePart(self.place, self.exponent + other.exponent,
                            self.unit * other.unit)

    def inverse(self):
        return PositivePart(self.place, -self.exponent, self.unit.inverse())

    def __truediv__(self, other):
        return self * other.inverse()

    def pow_rational(self, r):
        """Raise to a rational power with denominator prime to p."""
        r = Fraction(r)
        return PositivePart(self.place, self.exponent * r,
                            zp_power(self.unit, r))

    def matches(self, other):
        return (self.exponent == other.exponent
                and self.unit.matches(other.unit))

    def as_local(self):
        """The underlying local element, when the exponent is integral."""
        if self.exponent.denominator != 1:
            raise DomainError("fractional exponent has no series form")
        return self.unit.shift(int(self.exponent))

    def __str__(self):
        if self.exponent.denominator == 1:
            return render_local(self.as_local())
        return "pi^(%s) * (%s)" % (self.exponent, render_local(self.unit))

    def __repr__(self):
        return "PositivePart(%s)" % self


def positive_part(x):
    """Strip the leading residue coefficient of x to 1."""
    e = x.order()
    if e is None:
        raise DomainError("zero to precision: no positive part")
    c = x.coeffs[e]
    unit = x.shift(-e).scale(x.rf.inv(c))
    return PositivePart(x.place, Fraction(e), unit)


def _binomial_mod_p(a, k, p):
    """C(a, k) mod p for a rational p-adic integer a."""
    c = Fraction(1)
    for i in range(k):
        c = c * (a - i) / (i + 1)
    if c.denominator % p == 0:
        raise DomainError("binomial coefficient not p-integral")
    return c.numerator % p * pow(c.denominator % p, p - 2, p) % p


def zp_power(u, a, prec=None):
    """(1 + w)^a for a 1-unit u = 1 + w, a rational with p-free denominator."""
    if not u.is_one_unit():
        raise DomainError("zp_power needs a 1-unit")
    a = Fraction(a)
    p = u.rf.p
    if a.denominator % p == 0:
        raise DomainError("exponent denominator divisible by p")
    prec = u.prec if prec is None else min(prec, u.prec)
    if a.denominator == 1 and a.numerator >= 0:
        # integer exponents do not need the binomial series
        return (u.truncate(prec) ** a.numerator).truncate(prec)
    rf = u.rf
    w = u + (-LocalElement.one(u.place, u.prec))
    out = LocalElement.one(u.place, prec)
    j = w.order()
    if j is None:
        return out
    wk = LocalElement.one(u.place, prec)
    k = 0
    while (k + 1) * j < prec:
        k += 1
        wk = (wk * w).truncate(prec)
        ck = _binomial_mod_p(a, k, p)
        if ck:
            out = out + wk.scale(rf.from_int(ck))
    return out.truncate(prec)


def pth_power_test(u, n):
    """Decide whether a 1-unit is a p^n-th power of a 1-unit, to precision.

    False is definitive (a visible exponent obstructs divisibility).  True
    is certified only when the precision exceeds p^n times the first
    nonzero offset; otherwise PrecisionError is raised.
    """
    if not u.is_one_unit():
        raise DomainError("pth_power_test needs a 1-unit")
    if n == 0:
        return True
    pn = u.rf.p ** n
    offsets = [e for e in u.coeffs if e > 0]
    for e in offsets:
        if e % pn:
            return False
    if not offsets:
        return True
    if u.prec > pn * min(offsets):
        return True
    raise PrecisionError("cannot certify a p^%d-th power at precision %d"
                         % (n, u.prec))


def is_pn_power(x, n):
    """p^n-th power test for a general nonzero local element.

    The Teichmueller coefficient is always a p^n-th power in a finite
    field, so only the exponent and the 1-unit part matter.
    """
    e = x.order()
    if e is None:
        raise PrecisionError("zero to precision")
    if n == 0:
        return True
    if e % (x.rf.p ** n):
        return False
    return pth_power_test(positive_part(x).unit, n)


def render_local(x, var=None):
    """Text form 'c0*v^e0 + c1*v^e1 + ... + O(v^N)', ascending exponents.

    At the infinite place the series is written in powers of t, so the
    exponents are negated; elsewhere the variable is the place polynomial
    when that is just t, and 'pi' otherwise.
    """
    place = x.place
    rf = x.rf
    infinite = place.is_infinity
    if var is None:
        if infinite:
            var = "t"
        elif place.poly.degree == 1 and place.poly.coeff(0) == 0:
            var = "t"
        else:
            var = "pi"
    parts = []
    for e in x.support():
        c = x.coeffs[e]
        cs = rf.render(c)
        shown = -e if infinite else e
        if shown == 0:
            parts.append(cs)
        else:
            vp = var if shown == 1 else "%s^%d" % (var, shown)
            parts.append(vp if cs == "1" else "%s*%s" % (cs, vp))
    tail = "O(%s^%d)" % (var, -x.prec if infinite else x.prec)
    parts.append(tail)
    return " + ".join(parts)


def local_to_json(x):
    place = x.place
    coeffs = []
    for e in x.support():
        c = x.coeffs[e]
        coeffs.append([e, c if isinstance(c, int) else list(c)])
    return {
        "place": str(place),
        "coefficients": coeffs,
        "precision": x.prec,
    }

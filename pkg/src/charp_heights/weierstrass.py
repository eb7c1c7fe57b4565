"""Weierstrass models over F_q(t), point arithmetic and naive heights.

Models come in through curve files with polynomial coefficients that are
required to be minimal at every finite place; the certificate accepted
here is ord_w(disc) < 12 at each bad place, anything else needs an
explicit attestation.  The infinite place is handled by rescaling with
u = t^r, which is enough to make every integral model integral at
infinity, and the rescaled discriminant must then certify minimality
there as well.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, ExpressionError
from .fq import FieldSpec
from .parsing import parse_ratfunc
from .poly import Poly, factorize
from .ratfunc import Place, RatFunc

__all__ = ["WeierstrassModel", "CurvePoint", "ModelIso", "ReductionInfo",
           "hasse_invariant", "reduction_info", "infinity_minimal_model",
           "local_height", "neron_tate", "minimal_multiple_in",
           "load_curve_file", "load_point_file"]


class CurvePoint:
    """O or an affine point; affine coordinates satisfy the model exactly."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x = x
        self.y = y

    @classmethod
    def zero(cls):
        return cls(None, None)

    @property
    def is_zero(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __str__(self):
        if self.is_zero:
            return "O"
        return "(%s, %s)" % (self.x, self.y)

    def __repr__(self):
        return "CurvePoint(%s)" % self


class ModelIso:
    """Change of Weierstrass coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + w."""

    __slots__ = ("u", "r", "s", "w_shift")

    def __init__(self, u, r, s, w_shift):
        if u.is_zero():
            raise DomainError("scale factor of a model map must be nonzero")
        self.u = u
        self.r = r
        self.s = s
        self.w_shift = w_shift

    @classmethod
    def identity(cls, spec):
        one = RatFunc.one(spec)
        zero = RatFunc.zero(spec)
        return cls(one, zero, zero, zero)

    @classmethod
    def scaling(cls, u):
        zero = RatFunc.zero(u.spec)
        return cls(u, zero, zero, zero)

    def apply(self, model):
        u, r, s, w = self.u, self.r, self.s, self.w_shift
        a1, a2, a3 = model.a1, model.a2, model.a3
        a4, a6 = model.a4, model.a6
        b1 = (a1 + 2 * s) / u
        b2_ = (a2 - s * a1 + 3 * r - s * s) / u ** 2
        b3 = (a3 + r * a1 + 2 * w) / u ** 3
        b4_ = (a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w) / u ** 4
        b6_ = (a6 + r * a4 + r * r * a2 + r ** 3 - w * a3 - w * w - r * w * a1) / u ** 6
        return WeierstrassModel(model.spec, b1, b2_, b3, b4_, b6_,
                                minimal_attested=model.minimal_attested)

    def map_point(self, pt):
        if pt.is_zero:
            return pt
        u, r, s, w = self.u, self.r, self.s, self.w_shift
        x2 = (pt.x - r) / u ** 2
        y2 = (pt.y - s * (pt.x - r) - w) / u ** 3
        return CurvePoint(x2, y2)

    def inverse(self):
        u, r, s, w = self.u, self.r, self.s, self.w_shift
        ui = u.inverse()
        return ModelIso(ui, -r * ui ** 2, -s * ui, (r * s - w) * ui ** 3)

    def compose(self, second):
        """The map that applies self first, then second."""
        u1, r1, s1, w1 = self.u, self.r, self.s, self.w_shift
        u2, r2, s2, w2 = second.u, second.r, second.s, second.w_shift
        return ModelIso(u1 * u2,
                        r1 + u1 ** 2 * r2,
                        s1 + u1 * s2,
                        w1 + u1 ** 3 * w2 + s1 * u1 ** 2 * r2)

    def __repr__(self):
        return "ModelIso(u=%s, r=%s, s=%s, w=%s)" % (self.u, self.r, self.s, self.w_shift)


class ReductionInfo:
    GOOD = "good"
    MULTIPLICATIVE = "multiplicative"
    ADDITIVE = "additive"

    __slots__ = ("place", "kind", "ordinary", "ord_disc", "ord_c4")

    def __init__(self, place, kind, ordinary, ord_disc, ord_c4):
        self.place = place
        self.kind = kind
        self.ordinary = ordinary
        self.ord_disc = ord_disc
        self.ord_c4 = ord_c4

    def __repr__(self):
        return "ReductionInfo(%s, %s, ordinary=%s)" % (self.place, self.kind, self.ordinary)


class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t)."""

    __slots__ = ("spec", "a1", "a2", "a3", "a4", "a6",
                 "b2", "b4", "b6", "b8", "c4", "c6", "disc",
                 "minimal_attested", "_cache")

    def __init__(self, spec, a1, a2, a3, a4, a6, minimal_attested=False):
        def _coerce(v):
            if isinstance(v, RatFunc):
                return v
            if isinstance(v, Poly):
                return RatFunc.from_poly(v)
            return RatFunc.from_int(spec, v)

        self.spec = spec
        self.a1 = _coerce(a1)
        self.a2 = _coerce(a2)
        self.a3 = _coerce(a3)
        self.a4 = _coerce(a4)
        self.a6 = _coerce(a6)
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4
                   + a2 * a3 * a3 - a4 * a4)
        self.c4 = self.b2 ** 2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = (-self.b2 ** 2 * self.b8 - 8 * self.b4 ** 3
                     - 27 * self.b6 ** 2 + 9 * self.b2 * self.b4 * self.b6)
        if self.disc.is_zero():
            raise DomainError("discriminant vanishes: the curve is singular")
        if self.c4 ** 3 - self.c6 ** 2 != 1728 * self.disc:
            raise DomainError("invariant identity c4^3 - c6^2 = 1728 disc failed")
        if 4 * self.b8 != self.b2 * self.b6 - self.b4 ** 2:
            raise DomainError("invariant identity 4 b8 = b2 b6 - b4^2 failed")
        self.minimal_attested = bool(minimal_attested)
        self._cache = {}

    # -- bookkeeping -----------------------------------------------------------

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def key(self):
        """Hashable identity used by series caches."""
        return (self.spec, tuple(str(a) for a in self.coefficients()))

    def is_integral(self):
        return all(a.is_poly() for a in self.coefficients())

    def bad_finite_places(self):
        """Finite places with ord(disc) > 0, for an integral model."""
        if "bad" in self._cache:
            return self._cache["bad"]
        if not self.is_integral():
            raise DomainError("model is not integral over F_q[t]")
        out = []
        for f, m in factorize(self.disc.num):
            if f.degree > 0:
                out.append((Place(self.spec, f, _checked=True), m))
        self._cache["bad"] = out
        return out

    def check_finite_minimality(self):
        """ord(disc) < 12 at each bad place certifies minimality there."""
        if not self.is_integral():
            raise DomainError("model is not integral over F_q[t]")
        for place, mult in self.bad_finite_places():
            if mult >= 12 and not self.minimal_attested:
                raise DomainError(
                    "cannot certify minimality at %s (ord disc = %d >= 12); "
                    "set minimal_attested if the model is known minimal" % (place, mult))

    def __eq__(self, other):
        if not isinstance(other, WeierstrassModel):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return ("WeierstrassModel(a1=%s, a2=%s, a3=%s, a4=%s, a6=%s)"
                % self.coefficients())

    # -- points -----------------------------------------------------------------

    def is_on_curve(self, pt):
        if pt.is_zero:
            return True
        x, y = pt.x, pt.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x ** 3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def point(self, x, y):
        pt = CurvePoint(x, y)
        if not self.is_on_curve(pt):
            raise DomainError("point does not satisfy the curve equation")
        return pt

    def neg(self, pt):
        if pt.is_zero:
            return pt
        return CurvePoint(pt.x, -pt.y - self.a1 * pt.x - self.a3)

    def add(self, P, Q):
        if P.is_zero:
            return Q
        if Q.is_zero:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y2 == -y1 - self.a1 * x1 - self.a3:
                return CurvePoint.zero()
            d = 2 * y1 + self.a1 * x1 + self.a3
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / d
            nu = (-(x1 ** 3) + self.a4 * x1 + 2 * self.a6 - self.a3 * y1) / d
        else:
            d = x2 - x1
            lam = (y2 - y1) / d
            nu = (y1 * x2 - y2 * x1) / d
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return CurvePoint(x3, y3)

    def mul(self, m, P):
        if m < 0:
            return self.mul(-m, self.neg(P))
        out = CurvePoint.zero()
        cur = P
        while m:
            if m & 1:
                out = self.add(out, cur)
            m >>= 1
            if m:
                cur = self.add(cur, cur)
        return out

    # -- reductions ---------------------------------------------------------------

    def _reduced_coeffs(self, place):
        return tuple(a.reduce_at(place) for a in self.coefficients())

    def reduce_point(self, pt, place):
        """Image of a point on the reduced curve; None encodes O."""
        if pt.is_zero or pt.x.ord_at(place) < 0:
            return None
        return (pt.x.reduce_at(place), pt.y.reduce_at(place))

    def has_nonsingular_reduction(self, pt, place):
        """Membership in E_0 at a place where the model is integral."""
        red = self.reduce_point(pt, place)
        if red is None:
            return True
        rf = place.residue_spec()
        a1, a2, a3, a4, a6 = self._reduced_coeffs(place)
        xr, yr = red
        fy = rf.add(rf.add(rf.mul(rf.from_int(2), yr), rf.mul(a1, xr)), a3)
        if not rf.is_zero(fy):
            return True
        fx = rf.sub(rf.mul(a1, yr),
                    rf.add(rf.add(rf.mul(rf.from_int(3), rf.mul(xr, xr)),
                                  rf.mul(rf.from_int(2), rf.mul(a2, xr))), a4))
        return not rf.is_zero(fx)

    def in_formal_group(self, pt, place):
        """ord_v(x) <= -2, i.e. the point specializes to O at the place."""
        if pt.is_zero:
            return True
        return pt.x.ord_at(place) <= -2


def hasse_invariant(model):
    """Coefficient of x^(p-1) in f(x)^((p-1)/2), with y^2 = f(x) the
    completed square form of the model."""
    spec = model.spec
    p = spec.p
    quarter = RatFunc.from_int(spec, 4).inverse()
    half = RatFunc.from_int(spec, 2).inverse()
    f = [model.b6 * quarter, model.b4 * half, model.b2 * quarter,
         RatFunc.one(spec)]
    power = [RatFunc.one(spec)]
    for _ in range((p - 1) // 2):
        out = [RatFunc.zero(spec)] * (len(power) + 3)
        for i, ci in enumerate(power):
            if ci.is_zero():
                continue
            for j, cj in enumerate(f):
                out[i + j] = out[i + j] + ci * cj
        power = out
    return power[p - 1] if p - 1 < len(power) else RatFunc.zero(spec)


def infinity_minimal_model(model):
    """Rescale by u = t^r so every coefficient is integral at infinity."""
    if not model.is_integral():
        raise DomainError("model must be integral over F_q[t]")
    r = 0
    for a, i in zip(model.coefficients(), (1, 2, 3, 4, 6)):
        if not a.is_zero():
            r = max(r, -(-a.num.degree // i))
    u = RatFunc.from_poly(Poly.t_pow(model.spec, r)) if r else RatFunc.one(model.spec)
    iso = ModelIso.scaling(u)
    shifted = iso.apply(model)
    inf = Place.infinity(model.spec)
    for a in shifted.coefficients():
        if not a.is_zero() and a.ord_at(inf) < 0:
            raise DomainError("rescaled model is not integral at infinity")
    if shifted.disc.ord_at(inf) >= 12:
        raise DomainError("cannot certify minimality at infinity "
                          "(ord disc = %s)" % shifted.disc.ord_at(inf))
    return shifted, iso


def _infinity_data(model):
    if "inf" not in model._cache:
        model._cache["inf"] = infinity_minimal_model(model)
    return model._cache["inf"]


def reduction_info(model, place):
    """Good/multiplicative/additive fibre type plus the ordinarity flag.

    At the infinite place the classification happens on the rescaled
    model that is integral there.
    """
    work = model
    if place.is_infinity:
        work, _ = _infinity_data(model)
    else:
        for a in work.coefficients():
            if not a.is_zero() and a.ord_at(place) < 0:
                raise DomainError("model is not integral at %s" % place)
    od = work.disc.ord_at(place)
    oc = work.c4.ord_at(place) if not work.c4.is_zero() else None
    if od == 0:
        alpha = hasse_invariant(work)
        ordinary = (not alpha.is_zero()) and alpha.ord_at(place) == 0
        return ReductionInfo(place, ReductionInfo.GOOD, ordinary, od, oc)
    if oc == 0:
        return ReductionInfo(place, ReductionInfo.MULTIPLICATIVE, True, od, oc)
    return ReductionInfo(place, ReductionInfo.ADDITIVE, False, od, oc)


def local_height(model, pt, place):
    """max(-ord_w(x), 0) on the model minimal at w; infinity goes through
    the rescaled model."""
    if pt.is_zero:
        return 0
    if place.is_infinity:
        shifted, iso = _infinity_data(model)
        return local_height(shifted, iso.map_point(pt), place)
    if not model.has_nonsingular_reduction(pt, place):
        raise DomainError("point has singular reduction at %s; "
                          "pass to a multiple first" % place)
    return max(-pt.x.ord_at(place), 0)


def _identity_component_everywhere(model, pt):
    for place, _ in model.bad_finite_places():
        if not model.has_nonsingular_reduction(pt, place):
            return False
    shifted, iso = _infinity_data(model)
    inf = Place.infinity(model.spec)
    if shifted.disc.ord_at(inf) > 0:
        if not shifted.has_nonsingular_reduction(iso.map_point(pt), inf):
            return False
    return True


def _good_places_for_torsion(model, count=2):
    spec = model.spec
    out = []
    deg = 1
    while len(out) < count and deg <= 4:
        for f in _monic_polys(spec, deg):
            if len(out) >= count:
                break
            from .poly import is_irreducible
            if not is_irreducible(f):
                continue
            place = Place(spec, f, _checked=True)
            if model.disc.ord_at(place) == 0:
                out.append(place)
        deg += 1
    if len(out) < count:
        raise DomainError("not enough good places for a torsion bound")
    return out


def _monic_polys(spec, deg):
    consts = list(spec.elements())
    idx = [0] * deg
    total = spec.q ** deg
    for _ in range(total):
        coeffs = [consts[i] for i in idx] + [spec.one()]
        yield Poly(spec, coeffs)
        for i in range(deg):
            idx[i] += 1
            if idx[i] < len(consts):
                break
            idx[i] = 0


def _reduced_group_order(model, place):
    """#E(F_w) for the reduced curve at a good place, by point count."""
    rf = place.residue_spec()
    a1, a2, a3, a4, a6 = model._reduced_coeffs(place)
    count = 1
    exp = (rf.q - 1) // 2
    for x in rf.elements():
        # y^2 + (a1 x + a3) y - f(x): complete the square (p odd)
        b = rf.add(rf.mul(a1, x), a3)
        fx = rf.add(rf.add(rf.mul(rf.add(rf.mul(rf.add(x, a2), x), a4), x), a6),
                    rf.zero())
        d = rf.add(rf.mul(b, b), rf.mul(rf.from_int(4), fx))
        if rf.is_zero(d):
            count += 1
        else:
            chi = rf.pow_(d, exp)
            if chi == rf.one():
                count += 2
    return count


def is_torsion(model, pt):
    """Torsion test via injectivity of reduction at two good places."""
    if pt.is_zero:
        return True
    w1, w2 = _good_places_for_torsion(model)
    g = 0
    from math import gcd as igcd
    g = igcd(_reduced_group_order(model, w1), _reduced_group_order(model, w2))
    return model.mul(g, pt).is_zero


def neron_tate(model, pt, cap=400):
    """Canonical height from local height sums, as an exact rational."""
    model.check_finite_minimality()
    if pt.is_zero or is_torsion(model, pt):
        return Fraction(0)
    inf = Place.infinity(model.spec)
    cur = pt
    for n in range(1, cap + 1):
        if _identity_component_everywhere(model, cur):
            total = cur.x.den.degree + local_height(model, cur, inf)
            return Fraction(total, 2 * n * n)
        cur = model.add(cur, pt)
    raise DomainError("no multiple below %d lies on the identity component "
                      "everywhere" % cap)


def minimal_multiple_in(model, pt, place, cap=240):
    """Smallest n with nP on the identity component everywhere and in the
    formal group at the given place."""
    model.check_finite_minimality()
    if pt.is_zero:
        return 1
    shifted, iso = _infinity_data(model)
    cur = pt
    for n in range(1, cap + 1):
        if _identity_component_everywhere(model, cur):
            if place.is_infinity:
                ok = shifted.in_formal_group(iso.map_point(cur), place)
            else:
                ok = model.in_formal_group(cur, place)
            if ok:
                return n
        cur = model.add(cur, pt)
    raise DomainError("no multiple below %d lands in the local formal group" % cap)


# -- file formats -----------------------------------------------------------------

def _parse_kv(text):
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "O":
            out["O"] = "O"
            continue
        if "=" not in line:
            raise ExpressionError("line %d is not of the form key = value" % lineno)
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def load_curve_file(text):
    """Build a model from 'key = value' text: p, n, modulus?, a1..a6."""
    kv = _parse_kv(text)
    if "p" not in kv:
        raise ExpressionError("curve file must set p")
    p = int(kv["p"])
    n = int(kv.get("n", "1"))
    if n > 1:
        if "modulus" not in kv:
            raise ExpressionError("curve file with n > 1 must set modulus")
        base = FieldSpec(p)
        from .parsing import parse_poly
        mod = parse_poly(kv["modulus"], base)
        spec = FieldSpec(p, n, tuple(int(c) for c in mod.coeffs()))
    else:
        spec = FieldSpec(p)
    coeffs = []
    for key in ("a1", "a2", "a3", "a4", "a6"):
        coeffs.append(parse_ratfunc(kv.get(key, "0"), spec))
    attested = kv.get("minimal_attested", "false").lower() in ("1", "true", "yes")
    return WeierstrassModel(spec, *coeffs, minimal_attested=attested)


def load_point_file(text, model):
    """Point files hold 'x = ...' and 'y = ...' lines, or the single line O."""
    kv = _parse_kv(text)
    if "O" in kv:
        return CurvePoint.zero()
    if "x" not in kv or "y" not in kv:
        raise ExpressionError("point file must set x and y (or be O)")
    x = parse_ratfunc(kv["x"], model.spec)
    y = parse_ratfunc(kv["y"], model.spec)
    return model.point(x, y)

"""Univariate polynomials over F_q in the variable t, plus factorization.

Coefficients are stored little-endian.  Over a prime field the backing
store is a numpy int64 array, which keeps multiplication, division and
gcd fast enough for the coordinate sizes that show up when multiplying
points on a curve (degrees in the low thousands).  Over a proper
extension the store is a tuple of raw F_q elements and everything runs
through FieldSpec; those paths only see small degrees.

Factorization is squarefree decomposition (with p-th root descent, since
the derivative can vanish identically in characteristic p), then
distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.
The random choices in the equal-degree stage are seeded from the input
polynomial, so results are deterministic.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import DomainError
from .fq import FieldSpec, FqElem

__all__ = ["Poly", "Factorization", "gcd", "powmod", "factorize", "is_irreducible"]


def _trim_arr(c):
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class Poly:
    """An element of F_q[t], immutable and always in canonical form."""

    __slots__ = ("spec", "_c", "_hash")

    def __init__(self, spec, coeffs=(), _trusted=False):
        self.spec = spec
        if _trusted:
            self._c = coeffs
            self._hash = None
            return
        p = spec.p
        if spec.n == 1:
            arr = np.asarray([int(c) if isinstance(c, int) else int(c.raw)
                              if isinstance(c, FqElem) else int(c)
                              for c in coeffs], dtype=np.int64) % p
            self._c = _trim_arr(arr)
        else:
            raws = []
            for c in coeffs:
                if isinstance(c, FqElem):
                    raws.append(c.raw)
                elif isinstance(c, int):
                    raws.append(spec.from_int(c))
                else:
                    raws.append(tuple(int(x) % p for x in c))
            k = len(raws)
            while k and not any(raws[k - 1]):
                k -= 1
            self._c = tuple(raws[:k])
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec, ())

    @classmethod
    def one(cls, spec):
        return cls(spec, (1,))

    @classmethod
    def constant(cls, spec, raw):
        return cls(spec, (raw,))

    @classmethod
    def t(cls, spec):
        return cls(spec, (0, 1))

    @classmethod
    def t_pow(cls, spec, k):
        return cls(spec, (0,) * k + (1,))

    @classmethod
    def random(cls, spec, deg, rng):
        return cls(spec, [spec.random(rng) for _ in range(deg + 1)])

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        return len(self._c) - 1

    def is_zero(self):
        return len(self._c) == 0

    def is_one(self):
        if len(self._c) != 1:
            return False
        return self.coeff(0) == self.spec.one()

    def coeff(self, i):
        if i < 0 or i > self.degree:
            return self.spec.zero()
        if self.spec.n == 1:
            return int(self._c[i])
        return self._c[i]

    def coeffs(self):
        if self.spec.n == 1:
            return [int(c) for c in self._c]
        return list(self._c)

    def lead(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeff(self.degree)

    def is_monic(self):
        return not self.is_zero() and self.lead() == self.spec.one()

    def monic(self):
        """Return (unit, monic) with unit * monic == self."""
        if self.is_zero():
            raise DomainError("zero polynomial has no monic form")
        u = self.lead()
        if u == self.spec.one():
            return u, self
        return u, self.scale(self.spec.inv(u))

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise DomainError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.spec, (other,))
        return None

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        if self.spec.n == 1:
            a, b = self._c, other._c
            if len(a) < len(b):
                a, b = b, a
            out = a.copy()
            out[: len(b)] = (out[: len(b)] + b) % self.spec.p
            return Poly(self.spec, _trim_arr(out), _trusted=True)
        s = self.spec
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = s.add(out[i], c)
        k = len(out)
        while k and s.is_zero(out[k - 1]):
            k -= 1
        return Poly(s, tuple(out[:k]), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        if self.spec.n == 1:
            return Poly(self.spec, (-self._c) % self.spec.p, _trusted=True)
        s = self.spec
        return Poly(s, tuple(s.neg(c) for c in self._c), _trusted=True)

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

    def scale(self, raw):
        """Multiply by a field element given in raw form."""
        if self.spec.is_zero(raw) or self.is_zero():
            return Poly.zero(self.spec)
        if self.spec.n == 1:
            return Poly(self.spec, (self._c * int(raw)) % self.spec.p, _trusted=True)
        s = self.spec
        return Poly(s, tuple(s.mul(c, raw) for c in self._c), _trusted=True)

    def __mul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.spec)
        if self.spec.n == 1:
            out = np.convolve(self._c, other._c) % self.spec.p
            return Poly(self.spec, _trim_arr(out), _trusted=True)
        s = self.spec
        a, b = self._c, other._c
        out = [s.zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if s.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = s.add(out[i + j], s.mul(ai, bj))
        k = len(out)
        while k and s.is_zero(out[k - 1]):
            k -= 1
        return Poly(s, tuple(out[:k]), _trusted=True)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by t^k."""
        if self.is_zero() or k == 0:
            return self
        if self.spec.n == 1:
            out = np.concatenate([np.zeros(k, dtype=np.int64), self._c])
            return Poly(self.spec, out, _trusted=True)
        return Poly(self.spec, (self.spec.zero(),) * k + self._c, _trusted=True)

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative polynomial power")
        out = Poly.one(self.spec)
        cur = self
        while e:
            if e & 1:
                out = out * cur
            cur = cur * cur
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(self.spec), self
        if self.spec.n == 1:
            p = self.spec.p
            b = other._c
            db = len(b) - 1
            inv = pow(int(b[-1]), p - 2, p)
            r = self._c.copy()
            q = np.zeros(len(r) - db, dtype=np.int64)
            for k in range(len(r) - db - 1, -1, -1):
                c = int(r[k + db]) * inv % p
                if c:
                    q[k] = c
                    r[k : k + db + 1] = (r[k : k + db + 1] - c * b) % p
            return (Poly(self.spec, _trim_arr(q), _trusted=True),
                    Poly(self.spec, _trim_arr(r[:db]), _trusted=True))
        s = self.spec
        b = other._c
        db = len(b) - 1
        inv = s.inv(b[-1])
        r = list(self._c)
        q = [s.zero()] * (len(r) - db)
        for k in range(len(r) - db - 1, -1, -1):
            c = s.mul(r[k + db], inv)
            if not s.is_zero(c):
                q[k] = c
                for j in range(db + 1):
                    r[k + j] = s.sub(r[k + j], s.mul(c, b[j]))
        kq = len(q)
        while kq and s.is_zero(q[kq - 1]):
            kq -= 1
        kr = db
        while kr and s.is_zero(r[kr - 1]):
            kr -= 1
        return (Poly(s, tuple(q[:kq]), _trusted=True),
                Poly(s, tuple(r[:kr]), _trusted=True))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError("division is not exact")
        return q

    # -- maps ---------------------------------------------------------------

    def eval(self, raw):
        """Evaluate at a raw field element (Horner)."""
        s = self.spec
        acc = s.zero()
        if s.n == 1:
            p = s.p
            x = int(raw)
            for c in reversed(self._c.tolist() if len(self._c) else []):
                acc = (acc * x + c) % p
            return acc
        for c in reversed(self._c):
            acc = s.add(s.mul(acc, raw), c)
        return acc

    def derivative(self):
        if self.degree < 1:
            return Poly.zero(self.spec)
        if self.spec.n == 1:
            idx = np.arange(1, len(self._c), dtype=np.int64)
            out = (self._c[1:] * idx) % self.spec.p
            return Poly(self.spec, _trim_arr(out), _trusted=True)
        s = self.spec
        out = [s.mul(c, s.from_int(i)) for i, c in enumerate(self._c) if i >= 1]
        k = len(out)
        while k and s.is_zero(out[k - 1]):
            k -= 1
        return Poly(s, tuple(out[:k]), _trusted=True)

    def frob_stretch(self, k=1):
        """self^(p^k), computed coefficientwise: exponents stretch by p^k."""
        if self.is_zero() or k == 0:
            return self
        s = self.spec
        step = s.p ** k
        if s.n == 1:
            out = np.zeros((len(self._c) - 1) * step + 1, dtype=np.int64)
            out[::step] = self._c
            return Poly(s, out, _trusted=True)
        out = [s.zero()] * ((len(self._c) - 1) * step + 1)
        for i, c in enumerate(self._c):
            out[i * step] = s.frob(c, k)
        return Poly(s, tuple(out), _trusted=True)

    def pth_root(self):
        """Inverse of the Frobenius stretch; requires support in p*Z."""
        s = self.spec
        p = s.p
        if self.is_zero():
            return self
        if (self.degree % p) != 0:
            raise DomainError("degree not divisible by p")
        if s.n == 1:
            if np.any(np.delete(self._c, np.arange(0, len(self._c), p))):
                raise DomainError("support not contained in p*Z")
            return Poly(s, self._c[::p].copy(), _trusted=True)
        out = []
        for i, c in enumerate(self._c):
            if i % p == 0:
                out.append(s.pth_root(c))
            elif not s.is_zero(c):
                raise DomainError("support not contained in p*Z")
        return Poly(s, tuple(out), _trusted=True)

    def multiplicity_of(self, other):
        """Largest e with other^e dividing self (self nonzero)."""
        if self.is_zero():
            raise DomainError("multiplicity in the zero polynomial")
        e = 0
        cur = self
        while True:
            q, r = divmod(cur, other)
            if not r.is_zero():
                return e
            e += 1
            cur = q

    # -- comparisons, hashing, display ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.spec, (other,))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.spec != other.spec:
            return False
        if self.spec.n == 1:
            return len(self._c) == len(other._c) and bool(np.all(self._c == other._c))
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            if self.spec.n == 1:
                key = self._c.tobytes()
            else:
                key = self._c
            self._hash = hash((self.spec, key))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        """Total order used to make factor lists deterministic."""
        if self.spec.n == 1:
            return (self.degree, tuple(int(c) for c in self._c))
        return (self.degree, self._c)

    def to_str(self, var="t"):
        if self.is_zero():
            return "0"
        s = self.spec
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if (c == 0) if s.n == 1 else s.is_zero(c):
                continue
            cs = str(c) if s.n == 1 else "(" + s.render(c) + ")"
            if i == 0:
                parts.append(cs)
            else:
                tpow = var if i == 1 else "%s^%d" % (var, i)
                parts.append(tpow if cs == "1" else "%s*%s" % (cs, tpow))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "Poly(%s)" % self.to_str()


def gcd(a, b):
    """Monic gcd of two polynomials."""
    if a.spec != b.spec:
        raise DomainError("polynomials over different fields")
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()[1]


def powmod(base, e, mod):
    """base^e reduced mod a polynomial, by binary powering."""
    out = Poly.one(base.spec)
    cur = base % mod
    while e:
        if e & 1:
            out = out * cur % mod
        cur = cur * cur % mod
        e >>= 1
    return out


class Factorization:
    """unit * prod(factor^mult) == value, factors monic irreducible."""

    __slots__ = ("spec", "unit", "factors")

    def __init__(self, spec, unit, factors):
        self.spec = spec
        self.unit = unit
        self.factors = sorted(factors, key=lambda fm: fm[0].sort_key())

    def expand(self):
        out = Poly.constant(self.spec, self.unit)
        for f, m in self.factors:
            out = out * f ** m
        return out

    def multiplicity(self, g):
        for f, m in self.factors:
            if f == g:
                return m
        return 0

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        body = " * ".join("(%s)^%d" % (f, m) for f, m in self.factors)
        return "Factorization(%s, %s)" % (self.spec.render(self.unit)
                                          if self.spec.n > 1 else self.unit, body)


def _squarefree_parts(f):
    """Map squarefree polynomial -> multiplicity, for monic f."""
    spec = f.spec
    p = spec.p
    out = {}

    def _accumulate(g, mult):
        if g in out:
            out[g] += mult
        else:
            out[g] = mult

    def _sff(g, mult):
        fp = g.derivative()
        if fp.is_zero():
            _sff(g.pth_root(), mult * p)
            return
        c = gcd(g, fp)
        w = g.exact_div(c)
        i = 1
        while not w.is_one():
            y = gcd(w, c)
            z = w.exact_div(y)
            if not z.is_one():
                _accumulate(z, mult * i)
            w = y
            c = c.exact_div(y)
            i += 1
        if not c.is_one():
            _sff(c.pth_root(), mult * p)

    _sff(f, 1)
    return out


def _equal_degree_split(f, d, rng):
    """Cantor-Zassenhaus: split monic squarefree f, all factors of degree d."""
    spec = f.spec
    if f.degree == d:
        return [f]
    q = spec.q
    e = (q ** d - 1) // 2
    while True:
        r = Poly.random(spec, f.degree - 1, rng)
        if r.degree < 1:
            continue
        s = powmod(r, e, f)
        for shift in (-1, 1):
            g = gcd(s + shift, f)
            if 0 < g.degree < f.degree:
                return (_equal_degree_split(g, d, rng)
                        + _equal_degree_split(f.exact_div(g), d, rng))


def _distinct_degree(f, rng):
    """Factor a monic squarefree f into irreducibles."""
    spec = f.spec
    q = spec.q
    out = []
    h = Poly.t(spec) % f
    d = 0
    rest = f
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append(rest)
            break
        h = powmod(h, q, rest)
        g = gcd(h - Poly.t(spec), rest)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            rest = rest.exact_div(g)
            h = h % rest
    return out


def factorize(f):
    """Exact factorization of a nonzero polynomial into monic irreducibles."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    unit, f = f.monic()
    seed = hash((f.spec.p, f.spec.n, f.sort_key())) & 0xFFFFFFFF
    rng = random.Random(seed)
    factors = []
    if f.degree > 0:
        for sqf, mult in _squarefree_parts(f).items():
            for irr in _distinct_degree(sqf, rng):
                factors.append((irr, mult))
    return Factorization(f.spec, unit, factors)


def is_irreducible(f):
    """Rabin irreducibility test."""
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    spec = f.spec
    q = spec.q
    t = Poly.t(spec)
    cur = t % f
    for _ in range(d):
        cur = powmod(cur, q, f)
    if cur != t % f:
        return False
    seen = set()
    m = d
    ell = 2
    while ell * ell <= m:
        if m % ell == 0:
            seen.add(ell)
            while m % ell == 0:
                m //= ell
        ell += 1
    if m > 1:
        seen.add(m)
    for ell in sorted(seen):
        cur = t % f
        for _ in range(d // ell):
            cur = powmod(cur, q, f)
        if gcd(cur - t, f).degree != 0:
            return False
    return True

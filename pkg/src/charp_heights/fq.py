"""Arithmetic in the constant field F_q, q = p^n with p an odd prime.

Raw encoding, used by the polynomial layer for speed: an element of F_p is
an int in [0, p); an element of F_{p^n} for n > 1 is a length-n tuple of
such ints, little-endian coordinates with respect to the power basis of the
defining modulus.  ``FqElem`` is a thin operator-overloading wrapper around
a raw value for use at API boundaries and in tests.
"""

from __future__ import annotations

from .errors import DomainError

__all__ = ["FieldSpec", "FqElem", "is_prime"]


def is_prime(m):
    """Deterministic Miller-Rabin, correct for every 64-bit integer."""
    if m < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if m % q == 0:
            return m == q
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


# Dense little-endian F_p[x] helpers, only used to validate moduli.  The
# real polynomial arithmetic lives in poly.py; keeping a tiny standalone
# copy here avoids a circular import.

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _divmod_p(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        k = len(a) - 1 - db
        q[k] = c
        for j in range(db + 1):
            a[k + j] = (a[k + j] - c * b[j]) % p
        _trim(a)
    return _trim(q), a


def _rem_p(a, b, p):
    return _divmod_p(a, b, p)[1]


def _gcd_p(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem_p(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _powmod_p(base, e, mod, p):
    out = [1]
    cur = _rem_p(base, mod, p)
    while e:
        if e & 1:
            out = _rem_p(_mul_p(out, cur, p), mod, p)
        cur = _rem_p(_mul_p(cur, cur, p), mod, p)
        e >>= 1
    return out


def _prime_divisors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _sub_p(a, b, p):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _irreducible_mod_p(f, p):
    """Rabin test for a monic f over F_p (dense little-endian list)."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    cur = x
    for _ in range(d):
        cur = _powmod_p(cur, p, f, p)
    if _sub_p(cur, x, p):
        return False
    for ell in _prime_divisors(d):
        cur = x
        for _ in range(d // ell):
            cur = _powmod_p(cur, p, f, p)
        g = _gcd_p(_sub_p(cur, x, p), f, p)
        if len(g) - 1 != 0:
            return False
    return True


class FieldSpec:
    """The field F_q, q = p^n, together with arithmetic on raw elements.

    For n > 1 a monic irreducible modulus over F_p of degree n must be
    supplied; no table of default moduli is shipped.
    """

    __slots__ = ("p", "n", "modulus", "_hash")

    def __init__(self, p, n=1, modulus=None):
        if not isinstance(p, int) or p < 3 or p % 2 == 0 or not is_prime(p):
            raise DomainError("characteristic must be an odd prime >= 3, got %r" % (p,))
        if not isinstance(n, int) or n < 1:
            raise DomainError("extension degree must be a positive integer")
        if n == 1:
            if modulus is not None:
                raise DomainError("modulus only applies to proper extensions")
        else:
            if modulus is None:
                raise DomainError("F_{p^n} with n > 1 needs an explicit modulus")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree n")
            if not _irreducible_mod_p(list(modulus), p):
                raise DomainError("modulus is not irreducible over F_%d" % p)
        self.p = p
        self.n = n
        self.modulus = modulus
        self._hash = hash((p, n, modulus))

    @property
    def q(self):
        return self.p ** self.n

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and self.p == other.p and self.n == other.n
                and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.n == 1:
            return "FieldSpec(p=%d)" % self.p
        return "FieldSpec(p=%d, n=%d)" % (self.p, self.n)

    # -- raw element arithmetic ------------------------------------------

    def zero(self):
        return 0 if self.n == 1 else (0,) * self.n

    def one(self):
        return 1 if self.n == 1 else (1,) + (0,) * (self.n - 1)

    def from_int(self, m):
        if self.n == 1:
            return m % self.p
        return (m % self.p,) + (0,) * (self.n - 1)

    def is_zero(self, a):
        return a == 0 if self.n == 1 else not any(a)

    def add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.n == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.n == 1:
            return -a % self.p
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.n == 1:
            return a * b % self.p
        return self._mul_ext(a, b)

    def _mul_ext(self, a, b):
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(n):
                    prod[k - n + j] = (prod[k - n + j] - c * mod[j]) % p
        return tuple(prod[:n])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        # extended Euclid in F_p[x] against the modulus; invariant
        # t_i * a == r_i (mod modulus)
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(a))
        t0, t1 = [], [1]
        while r1:
            q, r = _divmod_p(r0, r1, p)
            t2 = _sub_p(t0, _mul_p(q, t1, p), p)
            r0, r1 = r1, r
            t0, t1 = t1, t2
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible")
        c = pow(r0[0], p - 2, p)
        out = [x * c % p for x in t0]
        out += [0] * (self.n - len(out))
        return tuple(out[: self.n])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one()
        cur = a
        while e:
            if e & 1:
                out = self.mul(out, cur)
            cur = self.mul(cur, cur)
            e >>= 1
        return out

    def frob(self, a, k=1):
        """a^(p^k); the absolute Frobenius iterated k times."""
        if self.n == 1:
            return a
        k %= self.n
        return self.pow_(a, self.p ** k) if k else a

    def pth_root(self, a):
        """Unique p-th root; Frobenius is bijective on a finite field."""
        return self.frob(a, self.n - 1)

    def random(self, rng):
        if self.n == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.n))

    def elements(self):
        if self.n == 1:
            yield from range(self.p)
        else:
            idx = [0] * self.n
            total = self.q
            for _ in range(total):
                yield tuple(idx)
                for i in range(self.n):
                    idx[i] += 1
                    if idx[i] < self.p:
                        break
                    idx[i] = 0

    def render(self, a, gen="g"):
        if self.n == 1:
            return str(a)
        if not any(a):
            return "0"
        parts = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(gen if c == 1 else "%d*%s" % (c, gen))
            else:
                parts.append("%s^%d" % (gen, i) if c == 1 else "%d*%s^%d" % (c, gen, i))
        return " + ".join(reversed(parts))


class FqElem:
    """A single element of F_q with operator overloading."""

    __slots__ = ("spec", "raw")

    def __init__(self, spec, raw):
        if isinstance(raw, FqElem):
            raw = raw.raw
        elif isinstance(raw, int):
            raw = spec.from_int(raw)
        else:
            raw = tuple(int(c) % spec.p for c in raw)
            if len(raw) != spec.n:
                raise DomainError("raw element has wrong length")
        self.spec = spec
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.spec != self.spec:
                raise DomainError("elements of different fields")
            return other.raw
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.spec, self.spec.add(self.raw, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.spec, self.spec.sub(self.raw, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.spec, self.spec.sub(b, self.raw))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.spec, self.spec.mul(self.raw, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.spec, self.spec.div(self.raw, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.spec, self.spec.div(b, self.raw))

    def __neg__(self):
        return FqElem(self.spec, self.spec.neg(self.raw))

    def __pow__(self, e):
        return FqElem(self.spec, self.spec.pow_(self.raw, e))

    def inverse(self):
        return FqElem(self.spec, self.spec.inv(self.raw))

    def is_zero(self):
        return self.spec.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.spec == other.spec and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.raw))

    def __repr__(self):
        return "FqElem(%r)" % (self.raw,)

    def __str__(self):
        return self.spec.render(self.raw)

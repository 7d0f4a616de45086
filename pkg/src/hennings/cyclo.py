"""Exact arithmetic in k = Q[v]/<1 + v + ... + v^(p-1)> for an odd prime p.

v is a primitive p-th root of unity, so v^p = 1, and the canonical basis of
k over Q is {1, v, ..., v^(p-2)}.  Every value is reduced to this basis, so
equality of coefficient vectors is equality in the field.  Coefficients are
arbitrary-precision rationals (gmpy2.mpq, falling back to Fraction).
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is only a speedup
    _Q = Fraction

__all__ = ["CycField", "CycNum", "rational"]

_ZERO = _Q(0)


def rational(num, den=1):
    """Exact rational from ints, Fraction, or 'a/b' strings."""
    if isinstance(num, str) and "/" in num and den == 1:
        a, b = num.split("/")
        return _Q(int(a), int(b))
    return _Q(num) / _Q(den) if den != 1 else _Q(num)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class CycField:
    """Context for a fixed odd prime p: builds and canonicalizes CycNums."""

    def __init__(self, p: int):
        if p <= 3 or not _is_prime(p):
            raise ValueError(f"p must be a prime > 3, got {p!r}")
        self.p = p
        self.q = (p - 1) // 2
        self.half_inv = (p + 1) // 2  # multiplicative inverse of 2 mod p
        self.zero = CycNum(self, (_Q(0),) * (p - 1))
        self.one = self.from_int(1)
        self.v = self.v_power(1)
        self.v_inv = self.v_power(-1)
        self._qint_cache = {}
        self._qfact_cache = {0: self.one}
        self._braces_cache = {0: self.one}
        self._qbinom_cache = {}

    def __repr__(self):
        return f"CycField(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, CycField) and other.p == self.p

    def __hash__(self):
        return hash(("CycField", self.p))

    # -- constructors -------------------------------------------------

    def from_coeffs(self, coeffs) -> "CycNum":
        cs = tuple(_Q(c) for c in coeffs)
        if len(cs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coefficients, got {len(cs)}")
        return CycNum(self, cs)

    def from_int(self, n) -> "CycNum":
        c = [_Q(0)] * (self.p - 1)
        c[0] = _Q(n)
        return CycNum(self, tuple(c))

    def from_rational(self, num, den=1) -> "CycNum":
        c = [_Q(0)] * (self.p - 1)
        c[0] = rational(num, den)
        return CycNum(self, tuple(c))

    def v_power(self, k: int) -> "CycNum":
        """v^k for any integer k, reduced to the canonical basis."""
        k %= self.p
        c = [_Q(0)] * (self.p - 1)
        if k == self.p - 1:
            # v^(p-1) = -(1 + v + ... + v^(p-2))
            c = [_Q(-1)] * (self.p - 1)
        else:
            c[k] = _Q(1)
        return CycNum(self, tuple(c))

    def v_half_power(self, k: int) -> "CycNum":
        """v^(k/2), resolved through the inverse of 2 mod p."""
        return self.v_power(k * self.half_inv)

    def reduce(self, powers) -> "CycNum":
        """Canonicalize a {exponent: rational} map into the quotient ring.

        Exponents may be ints or Fractions with denominator 1 or 2; a
        half-integer n/2 is mapped to n*(p+1)/2 mod p.  Any other
        denominator is rejected.
        """
        acc = [_Q(0)] * self.p
        for e, coef in powers.items():
            if isinstance(e, Fraction):
                if e.denominator == 1:
                    k = int(e)
                elif e.denominator == 2:
                    k = e.numerator * self.half_inv
                else:
                    raise ValueError(f"unsupported exponent denominator: {e}")
            elif isinstance(e, int):
                k = e
            else:
                raise ValueError(f"unsupported exponent: {e!r}")
            acc[k % self.p] += rational(coef)
        # v^(p-1) -> -(1 + ... + v^(p-2))
        top = acc[self.p - 1]
        cs = tuple(acc[i] - top for i in range(self.p - 1))
        return CycNum(self, cs)

    # -- quantum numbers ----------------------------------------------

    def qint(self, n: int) -> "CycNum":
        """[n] = (v^n - v^-n)/(v - v^-1) = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
        if n in self._qint_cache:
            return self._qint_cache[n]
        if n < 0:
            val = -self.qint(-n)
        else:
            acc = {}
            for i in range(n):
                e = (n - 1 - 2 * i) % self.p
                acc[e] = acc.get(e, 0) + 1
            val = self.reduce(acc)
        self._qint_cache[n] = val
        return val

    def qfact(self, m: int) -> "CycNum":
        """[m]! = [1][2]...[m]."""
        if m < 0:
            raise ValueError("factorial of negative integer")
        if m not in self._qfact_cache:
            self._qfact_cache[m] = self.qfact(m - 1) * self.qint(m)
        return self._qfact_cache[m]

    def braces(self, m: int) -> "CycNum":
        """{m} = prod_{i=1..m} (v^i - v^-i), with {0} = 1."""
        if m < 0:
            raise ValueError("braces of negative integer")
        if m not in self._braces_cache:
            prev = self.braces(m - 1)
            self._braces_cache[m] = prev * (self.v_power(m) - self.v_power(-m))
        return self._braces_cache[m]

    def qbinom(self, n: int, m: int) -> "CycNum":
        """Quantum binomial: prod_{s=0..m-1}(v^(n-s) - v^(s-n)) / {m}.

        n may be any integer (only n mod p matters); m must satisfy
        0 <= m <= p-1 so that the denominator is nonzero.
        """
        if m < 0 or m >= self.p:
            raise ValueError(f"qbinom lower index out of range: {m}")
        if m == 0:
            return self.one
        key = (n % self.p, m)
        out = self._qbinom_cache.get(key)
        if out is None:
            num = self.one
            for s in range(m):
                num = num * (self.v_power(n - s) - self.v_power(s - n))
            out = num / self.braces(m)
            self._qbinom_cache[key] = out
        return out


class CycNum:
    """An element of Q[v]/<1+v+...+v^(p-1)>, canonically reduced."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return CycNum(self.field,
                      tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        return CycNum(self.field,
                      tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return CycNum(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        n = p - 1
        acc = [_ZERO] * p
        onz = [(j, b) for j, b in enumerate(other.coeffs) if b]
        if not onz:
            return self.field.zero
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in onz:
                e = i + j
                if e >= p:
                    e -= p
                acc[e] += a * b
        top = acc[n]
        if top:
            return CycNum(self.field, tuple(acc[i] - top for i in range(n)))
        return CycNum(self.field, tuple(acc[:n]))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "CycNum":
        """Field inverse via extended gcd against 1 + x + ... + x^(p-1)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in cyclotomic field")
        p = self.field.p
        # extended Euclid in Q[x]: s*self + t*phi = gcd (a nonzero constant)
        r0 = [_Q(1)] * p
        r1 = list(self.coeffs)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [_Q(1)]
        while len(r1) > 1:
            qpoly, rem = _polydivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _polysub(s0, _polymul(qpoly, s1))
            if not r1:
                raise ArithmeticError("non-invertible element (not a field?)")
        c = r1[0]
        inv_coeffs = [x / c for x in s1]
        return self.field.reduce({i: q for i, q in enumerate(inv_coeffs)})

    # -- predicates / views --------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self):
        if not self.is_rational():
            raise ValueError(f"not a rational constant: {self}")
        return self.coeffs[0]

    def conj_inv_v(self) -> "CycNum":
        """Image under v -> v^-1 (bar involution)."""
        return self.field.reduce(
            {(-i) % self.field.p: c for i, c in enumerate(self.coeffs) if c})

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.field.p != self.field.p:
                raise ValueError("mixed cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(_Q(0)):
            return self.field.from_rational(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.coeffs == other.coeffs
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    # -- canonical printing ---------------------------------------------

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*v")
            else:
                terms.append(f"{c}*v^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"CycNum(p={self.field.p}, {self})"


# -- dense polynomial helpers over exact rationals (ascending coeffs) --


def _polydivmod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [_Q(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        f = a[-1] / lb
        q[k] = f
        for i in range(db + 1):
            a[k + i] -= f * b[i]
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _polymul(a, b):
    if not a or not b:
        return []
    out = [_Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else _Q(0)
        y = b[i] if i < len(b) else _Q(0)
        out.append(x - y)
    while out and not out[-1]:
        out.pop()
    return out

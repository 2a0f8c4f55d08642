"""Coefficient fields for the reconstruction pipeline.

Two kinds of field context are supported:

* ``ComplexField`` -- arbitrary-precision complex numbers (mpmath) with a
  relative zero threshold used for all rank / vanishing decisions;
* ``PrimeField`` -- an odd prime field F_p together with its quadratic
  extension F_{p^2} = F_p[t]/(t^2 - n) for the smallest non-residue n.
  Extension elements appear in intermediate steps (factoring tritangent
  products, standardizing quadrics) and are cleared from final results.

Field elements are ordinary values (``mpmath.mpc`` resp. ``FpElement``)
supporting +, -, *, / so that polynomial and matrix code is field-generic.
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpc, mpf

from .errors import InputError


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FpElement:
    """Element a + b*t of F_{p^2}, t^2 = field.nonresidue; b = 0 means F_p."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b=0):
        self.field = field
        self.a = a % field.p
        self.b = b % field.p

    def is_base(self):
        return self.b == 0

    def __add__(self, other):
        other = self.field.coerce(other)
        return FpElement(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return FpElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        other = self.field.coerce(other)
        return FpElement(self.field, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        p, n = self.field.p, self.field.nonresidue
        a = (self.a * other.a + n * self.b * other.b) % p
        b = (self.a * other.b + self.b * other.a) % p
        return FpElement(self.field, a, b)

    __rmul__ = __mul__

    def inverse(self):
        p, n = self.field.p, self.field.nonresidue
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("inverse of zero")
            return FpElement(self.field, pow(self.a, p - 2, p))
        # 1/(a+bt) = (a-bt)/(a^2 - n b^2)
        norm = (self.a * self.a - n * self.b * self.b) % p
        ninv = pow(norm, p - 2, p)
        return FpElement(self.field, self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        return self * self.field.coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.field.p
        return (
            isinstance(other, FpElement)
            and self.field.p == other.field.p
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field.p, self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return "%d+%d*t" % (self.a, self.b)


class PrimeField:
    """F_p (p an odd prime) plus on-demand arithmetic in F_{p^2}."""

    kind = "prime-field"

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0 or not _is_probable_prime(p):
            raise InputError("p must be an odd prime >= 3, got %r" % (p,))
        self.p = p
        self.nonresidue = self._smallest_nonresidue()
        self.extension_active = False
        self.zero = FpElement(self, 0)
        self.one = FpElement(self, 1)
        self.gen = FpElement(self, 0, 1)  # t with t^2 = nonresidue

    def _smallest_nonresidue(self):
        for n in range(2, self.p):
            if pow(n, (self.p - 1) // 2, self.p) == self.p - 1:
                return n
        raise AssertionError("no quadratic non-residue found")

    def coerce(self, x):
        if isinstance(x, FpElement):
            return x
        if isinstance(x, int):
            return FpElement(self, x)
        raise TypeError("cannot coerce %r into F_%d" % (x, self.p))

    def from_int(self, n: int) -> FpElement:
        return FpElement(self, n)

    def is_zero(self, x, scale=None) -> bool:
        x = self.coerce(x)
        return x.a == 0 and x.b == 0

    def inv(self, x):
        return self.coerce(x).inverse()

    def _tonelli_shanks(self, a: int) -> int:
        """Square root of a quadratic residue a in F_p (any odd p)."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self.nonresidue
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def _canonical(self, r: FpElement) -> FpElement:
        """Of r and -r, the root with the smaller representative a + b*p."""
        s = -r
        if r.a + r.b * self.p <= s.a + s.b * self.p:
            return r
        return s

    def sqrt(self, x) -> FpElement:
        """Deterministic square root; lands in F_{p^2} for non-residues."""
        x = self.coerce(x)
        p, n = self.p, self.nonresidue
        if self.is_zero(x):
            return self.zero
        if x.b == 0:
            if pow(x.a, (p - 1) // 2, p) == 1:
                return self._canonical(FpElement(self, self._tonelli_shanks(x.a)))
            # sqrt(a) = sqrt(a*n)/t = sqrt(a*n)*t/n
            self.extension_active = True
            s = self._tonelli_shanks(x.a * n % p)
            return self._canonical(FpElement(self, 0, s * pow(n, p - 2, p)))
        # Generic F_{p^2} square root via Tonelli-Shanks in the extension.
        self.extension_active = True
        order = p * p - 1
        if x ** (order // 2) != self.one:
            raise InputError("element of F_{p^2} is not a square")
        q, s = order, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self._ext_nonsquare(order)
        m, c, t, r = s, z ** q, x ** q, x ** ((q + 1) // 2)
        while t != self.one:
            t2, i = t, 0
            while t2 != self.one:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            t, r = t * c, r * b
        return self._canonical(r)

    def _ext_nonsquare(self, order):
        for a in range(self.p):
            for b in range(1, self.p):
                z = FpElement(self, a, b)
                if z ** (order // 2) == -self.one:
                    return z
        raise AssertionError("no non-square in F_{p^2} found")

    # serialization -------------------------------------------------------

    def coeff_to_json(self, x):
        x = self.coerce(x)
        if x.b == 0:
            return {"val": str(x.a)}
        return {"val": str(x.a), "ext": str(x.b)}

    def coeff_from_json(self, obj):
        try:
            a = int(obj["val"])
            b = int(obj.get("ext", "0"))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError("bad prime-field coefficient %r" % (obj,)) from exc
        return FpElement(self, a, b)

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class ComplexField:
    """Arbitrary-precision complex numbers with tolerance-based zero tests."""

    kind = "complex-bigfloat"

    #: extra working bits on top of the requested precision
    GUARD_BITS = 32

    def __init__(self, precision_bits: int = 300, zero_threshold=None):
        if precision_bits < 64:
            raise InputError("precision_bits must be >= 64")
        self.precision_bits = precision_bits
        with mp.workprec(precision_bits):
            if zero_threshold is None:
                zero_threshold = mpf(2) ** (-precision_bits // 2)
            else:
                zero_threshold = mpf(zero_threshold)
        if not zero_threshold < 1:
            raise InputError("zero_threshold must be < 1")
        self.zero_threshold = zero_threshold
        self.zero = mpc(0)
        self.one = mpc(1)

    def workprec(self):
        """Context manager setting mpmath precision for pipeline stages."""
        return mp.workprec(self.precision_bits + self.GUARD_BITS)

    def coerce(self, x):
        if isinstance(x, (int, float, mpf, mpc)):
            return mpc(x)
        raise TypeError("cannot coerce %r into the complex field" % (x,))

    def from_int(self, n: int):
        return mpc(n)

    def is_zero(self, x, scale=1) -> bool:
        """|x| <= threshold * max(|scale|, threshold-floor)."""
        return abs(x) <= self.zero_threshold * max(abs(scale), 1e-300)

    def inv(self, x):
        return 1 / self.coerce(x)

    def sqrt(self, x):
        """Principal branch (branch cut on the negative real axis)."""
        with self.workprec():
            return mpmath.sqrt(self.coerce(x))

    # serialization -------------------------------------------------------

    def _digits(self):
        return int(self.precision_bits * 0.30103) + 8

    def coeff_to_json(self, x):
        x = self.coerce(x)
        d = self._digits()
        return {
            "re": mpmath.nstr(x.real, d, strip_zeros=False),
            "im": mpmath.nstr(x.imag, d, strip_zeros=False),
        }

    def coeff_from_json(self, obj):
        try:
            with self.workprec():
                return mpc(mpf(obj["re"]), mpf(obj.get("im", "0")))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError("bad complex coefficient %r" % (obj,)) from exc

    def __repr__(self):
        return "ComplexField(%d bits)" % self.precision_bits


def field_sqrt(x, ctx):
    """Square root in the given field context (deterministic branch/root)."""
    return ctx.sqrt(x)

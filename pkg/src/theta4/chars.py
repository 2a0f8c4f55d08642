"""Combinatorics of half-integer theta characteristics.

A characteristic is (1/2)[a; b] with a, b in {0,1}^g, stored as two packed
g-bit integers; addition is componentwise XOR and the parity map is
(-1)^(a.b).  The module provides azygetic / essentially-independent tests,
the fixed auxiliary table of odd characteristics driving the tritangent
formulas, and the exhaustive search for special-fundamental-system
complements used by the generalized Jacobi identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class ThetaCharacteristic:
    g: int
    a: int  # packed bits, bit i = column i+1 (leftmost column = bit 0)
    b: int

    def __post_init__(self):
        mask = (1 << self.g) - 1
        object.__setattr__(self, "a", self.a & mask)
        object.__setattr__(self, "b", self.b & mask)

    @classmethod
    def from_bits(cls, a_bits, b_bits):
        g = len(a_bits)
        if len(b_bits) != g:
            raise InputError("a and b must have the same length")
        a = sum(1 << i for i, x in enumerate(a_bits) if int(x))
        b = sum(1 << i for i, x in enumerate(b_bits) if int(x))
        return cls(g, a, b)

    @classmethod
    def from_string(cls, s: str):
        """Parse "a1..ag|b1..bg", e.g. "1110|1110"."""
        try:
            a_s, b_s = s.split("|")
        except ValueError as exc:
            raise InputError("characteristic string must contain '|'") from exc
        if len(a_s) != len(b_s) or not set(a_s + b_s) <= {"0", "1"}:
            raise InputError("bad characteristic string %r" % s)
        return cls.from_bits([int(c) for c in a_s], [int(c) for c in b_s])

    def a_bits(self):
        return tuple((self.a >> i) & 1 for i in range(self.g))

    def b_bits(self):
        return tuple((self.b >> i) & 1 for i in range(self.g))

    def __add__(self, other):
        if self.g != other.g:
            raise InputError("genus mismatch")
        return ThetaCharacteristic(self.g, self.a ^ other.a, self.b ^ other.b)

    def parity(self) -> int:
        """+1 for even, -1 for odd: (-1)^(a.b)."""
        return -1 if _popcount(self.a & self.b) & 1 else 1

    def is_even(self):
        return self.parity() == 1

    def is_odd(self):
        return self.parity() == -1

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def drop_first_column(self):
        """Induced genus-(g-1) characteristic: delete column 1 of both rows."""
        return ThetaCharacteristic(self.g - 1, self.a >> 1, self.b >> 1)

    def prepend_column(self, a_bit: int, b_bit: int):
        return ThetaCharacteristic(
            self.g + 1, (self.a << 1) | (a_bit & 1), (self.b << 1) | (b_bit & 1)
        )

    def to_string(self):
        return "%s|%s" % (
            "".join(str(x) for x in self.a_bits()),
            "".join(str(x) for x in self.b_bits()),
        )

    def __repr__(self):
        return "[%s]" % self.to_string()


def char(s: str) -> ThetaCharacteristic:
    return ThetaCharacteristic.from_string(s)


def parity(c: ThetaCharacteristic) -> int:
    return c.parity()


def all_characteristics(g: int):
    for a in range(1 << g):
        for b in range(1 << g):
            yield ThetaCharacteristic(g, a, b)


def even_characteristics(g: int):
    return [c for c in all_characteristics(g) if c.is_even()]


def odd_characteristics(g: int):
    return [c for c in all_characteristics(g) if c.is_odd()]


def is_azygetic_triple(c1, c2, c3) -> bool:
    s = c1 + c2 + c3
    return s.parity() == -c1.parity() * c2.parity() * c3.parity()


def is_azygetic(cs) -> bool:
    """Every 3-subset satisfies e(c1+c2+c3) = -e(c1)e(c2)e(c3)."""
    cs = list(cs)
    if len(cs) < 3:
        raise InputError("need at least 3 characteristics")
    return all(
        is_azygetic_triple(x, y, z) for x, y, z in itertools.combinations(cs, 3)
    )


def is_essentially_independent(cs) -> bool:
    """No even-cardinality subset XORs to the zero characteristic."""
    cs = list(cs)
    if len(cs) < 2:
        raise InputError("need at least 2 characteristics")
    g = cs[0].g
    for r in range(2, len(cs) + 1, 2):
        for sub in itertools.combinations(cs, r):
            total = ThetaCharacteristic(g, 0, 0)
            for c in sub:
                total = total + c
            if total.is_zero():
                return False
    return True


# The fixed two-torsion point eta = (1/2)[0 0 0 0; 1 0 0 0].
ETA = char("0000|1000")

_XI_STRINGS = (
    "1110|1110",
    "1010|0010",
    "1110|0010",
    "1010|0110",
    "0110|0100",
)

_CHI_STRINGS = (
    "0110|0100",
    "0100|0100",
    "0101|0100",
    "0111|0100",
    "0101|0110",
    "0100|0110",
    "0100|0111",
    "0111|0111",
    "0100|0101",
    "0110|0101",
)


@dataclass(frozen=True)
class AuxiliarySystem:
    """The auxiliary odd characteristics: xi[0..4], chi[0..9], chi' = chi+eta."""

    xi: tuple
    chi: tuple
    chi_prime: tuple
    eta: ThetaCharacteristic

    def validate(self):
        for c in self.xi + self.chi + self.chi_prime:
            if not c.is_odd():
                raise AssertionError("auxiliary characteristic %r is even" % c)
        if not (is_azygetic(self.xi) and is_essentially_independent(self.xi)):
            raise AssertionError("xi system fails azygetic/independence check")
        for i in range(10):
            for extra in (self.chi[i], self.chi_prime[i]):
                sys5 = list(self.xi[:4]) + [extra]
                if not (is_azygetic(sys5) and is_essentially_independent(sys5)):
                    raise AssertionError("xi1..xi4 + chi system %d fails" % (i + 1))
            if self.chi[i] + self.chi_prime[i] != self.eta:
                raise AssertionError("chi' - chi != eta at index %d" % (i + 1))
        return self


def auxiliary_system() -> AuxiliarySystem:
    """The fixed table of odd characteristics (validated on construction)."""
    xi = tuple(char(s) for s in _XI_STRINGS)
    chi = tuple(char(s) for s in _CHI_STRINGS)
    chi_prime = tuple(c + ETA for c in chi)
    return AuxiliarySystem(xi=xi, chi=chi, chi_prime=chi_prime, eta=ETA).validate()


def special_fundamental_complements(M):
    """All sets N of g+2 even characteristics with M u N azygetic.

    M must be an azygetic, essentially independent system of g odd
    characteristics (g = 3 or 4).  Exhaustive search over the even
    characteristics with azygetic pruning.
    """
    M = list(M)
    g = M[0].g
    if len(M) != g or g not in (3, 4):
        raise InputError("M must consist of g odd characteristics, g in {3,4}")
    if any(not c.is_odd() for c in M):
        raise InputError("M must be odd characteristics")
    if not (is_azygetic(M) and is_essentially_independent(M)):
        raise InputError("M must be azygetic and essentially independent")

    evens = even_characteristics(g)
    # candidates compatible with every pair from M
    candidates = [
        e
        for e in evens
        if all(
            is_azygetic_triple(M[i], M[j], e)
            for i, j in itertools.combinations(range(g), 2)
        )
    ]

    results = []
    target = g + 2

    def extend(chosen, start):
        if len(chosen) == target:
            results.append(frozenset(chosen))
            return
        for k in range(start, len(candidates)):
            e = candidates[k]
            ok = all(
                is_azygetic_triple(m, c, e) for m in M for c in chosen
            ) and all(
                is_azygetic_triple(c1, c2, e)
                for c1, c2 in itertools.combinations(chosen, 2)
            )
            if ok:
                extend(chosen + [e], k + 1)

    extend([], 0)
    return sorted(results, key=lambda N: sorted((c.a, c.b) for c in N))

"""Exact arithmetic in the cyclotomic fields Q(zeta_e).

Values are kept reduced modulo the e-th cyclotomic polynomial, as a tuple of
Fractions on the power basis 1, zeta, ..., zeta^(phi(e)-1).  The reduced form
is unique per field element, so equality of values is equality of canonical
forms once both operands sit at a common conductor (always the lcm; no
conductor minimization is attempted).  There is no floating-point mode:
multiplicity and trace computations downstream rely on these values being
certified integers or rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .numutil import divisors, euler_phi

__all__ = [
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "reduction_rows",
    "zeta",
]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of the e-th cyclotomic polynomial, ascending, monic."""
    if e < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (e - 1) + [1]
    for d in divisors(e)[:-1]:
        num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (den monic), ascending coefficients.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def reduction_rows(e: int) -> tuple[tuple[int, ...], ...]:
    """Canonical integer coordinates of zeta_e^i for i = 0 .. 2e-1.

    Row i is the reduction of x^i modulo the e-th cyclotomic polynomial on the
    basis 1..zeta^(phi(e)-1).  Rows beyond e cover the overflow positions that
    appear when multiplying two reduced elements.
    """
    deg = euler_phi(e)
    phi = cyclotomic_polynomial(e)
    top = tuple(-c for c in phi[:deg])  # zeta^deg
    rows: list[tuple[int, ...]] = []
    for i in range(deg):
        rows.append(tuple(1 if j == i else 0 for j in range(deg)))
    prev = rows[deg - 1] if deg > 0 else ()
    while len(rows) < 2 * e:
        shifted = [0] + list(prev[: deg - 1])
        carry = prev[deg - 1]
        if carry:
            shifted = [s + carry * t for s, t in zip(shifted, top)]
        prev = tuple(shifted)
        rows.append(prev)
    return tuple(rows)


def _reduce_positions(e: int, pos_coeffs) -> tuple[Fraction, ...]:
    """Reduce a {exponent: coefficient} mapping to canonical coordinates."""
    deg = euler_phi(e)
    rows = reduction_rows(e)
    out = [Fraction(0)] * deg
    for p, c in pos_coeffs:
        if not c:
            continue
        row = rows[p]
        for j in range(deg):
            if row[j]:
                out[j] += c * row[j]
    return tuple(out)


class CyclotomicNumber:
    """An exact element of Q(zeta_e), reduced modulo the cyclotomic polynomial."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        self.conductor = int(conductor)
        self.coords = tuple(
            c if type(c) is Fraction else Fraction(c) for c in coords
        )
        if len(self.coords) != euler_phi(self.conductor):
            raise ValueError("coordinate vector has wrong length")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, q) -> "CyclotomicNumber":
        return cls(1, (Fraction(q),))

    @classmethod
    def zeta(cls, e: int, k: int = 1) -> "CyclotomicNumber":
        """The root of unity zeta_e^k."""
        return cls(e, _reduce_positions(e, [(k % e, Fraction(1))]))

    @classmethod
    def from_exponents(cls, e: int, pairs) -> "CyclotomicNumber":
        """Sum of c * zeta_e^p over (p, c) pairs."""
        return cls(e, _reduce_positions(e, [(p % e, Fraction(c)) for p, c in pairs]))

    # -- conductor handling ------------------------------------------------

    def promote(self, big: int) -> "CyclotomicNumber":
        """The same value expressed in Q(zeta_big); big must be a multiple of e."""
        e = self.conductor
        if big == e:
            return self
        if big % e:
            raise ValueError("can only promote to a multiple of the conductor")
        step = big // e
        return CyclotomicNumber(
            big, _reduce_positions(big, [(i * step, c) for i, c in enumerate(self.coords)])
        )

    def _pair(self, other: "CyclotomicNumber"):
        e = lcm(self.conductor, other.conductor)
        return self.promote(e), other.promote(e), e

    @staticmethod
    def _coerce(x):
        if isinstance(x, CyclotomicNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return CyclotomicNumber.rational(x)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, e = self._pair(other)
        return CyclotomicNumber(e, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, tuple(-c for c in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(self.conductor, tuple(c * q for c in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, e = self._pair(other)
        deg = len(a.coords)
        conv = [Fraction(0)] * (2 * deg - 1 if deg else 1)
        for i, ci in enumerate(a.coords):
            if not ci:
                continue
            for j, cj in enumerate(b.coords):
                if cj:
                    conv[i + j] += ci * cj
        return CyclotomicNumber(e, _reduce_positions(e, list(enumerate(conv))))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, _ = self._pair(other)
        return a.coords == b.coords

    __hash__ = None  # cross-conductor hashing is not supported; use .key()

    def key(self, big: int) -> tuple:
        """Hashable canonical form at conductor `big` (for dedup/dict keys)."""
        return self.promote(big).coords

    # -- Galois action and rational detection --------------------------------

    def galois(self, k: int) -> "CyclotomicNumber":
        """Apply zeta_e -> zeta_e^k; k must be coprime to the conductor."""
        e = self.conductor
        if gcd(k, e) != 1:
            raise ValueError(f"{k} is not coprime to conductor {e}")
        return CyclotomicNumber(
            e, _reduce_positions(e, [((i * k) % e, c) for i, c in enumerate(self.coords)])
        )

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(self.conductor - 1 if self.conductor > 1 else 1)

    def trace_to_q(self) -> Fraction:
        """Trace to Q: the sum of all Galois conjugates, evaluated directly."""
        e = self.conductor
        if e == 1:
            return self.coords[0]
        total = CyclotomicNumber.rational(0)
        for k in range(1, e):
            if gcd(k, e) == 1:
                total = total + self.galois(k)
        q = total.as_rational()
        if q is None:
            raise AssertionError("trace of a cyclotomic number must be rational")
        return q

    def as_rational(self) -> Fraction | None:
        if any(self.coords[1:]):
            return None
        return self.coords[0] if self.coords else Fraction(0)

    def as_integer(self) -> int | None:
        """The integer value if this element is a rational integer, else None. Exact."""
        q = self.as_rational()
        if q is None or q.denominator != 1:
            return None
        return int(q)

    def integer_coords(self, big: int) -> tuple[int, ...]:
        """Coordinates at conductor `big`, certified integral (for kernel tables)."""
        coords = self.promote(big).coords
        if any(c.denominator != 1 for c in coords):
            raise ValueError("value is not an algebraic integer on the power basis")
        return tuple(int(c) for c in coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        if self.is_zero:
            return "Cyc(0)"
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}*z{self.conductor}^{i}" if i else f"{c}")
        return "Cyc(" + " + ".join(terms) + ")"


def zeta(e: int, k: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.zeta(e, k)

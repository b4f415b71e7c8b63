"""Exact arithmetic over small cyclotomic fields, plus interval decimals and
recognition of exact values from decimal approximations.

Field elements are coefficient vectors of `fractions.Fraction` over the power
basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m), with m = 1 or a prime power p^n.
Decimal inputs carry explicit rational error bounds and every arithmetic
operation propagates a worst-case bound, so a successful recognition comes
with an honest certificate: the recognized value is re-verified exactly and
its embedding is checked back against the input interval.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import mpmath


class ExactArithmeticError(ValueError):
    """Base class for everything raised by this module."""


class UnsupportedConductorError(ExactArithmeticError):
    """Conductor is not 1 or an odd prime power, or two conductors were mixed."""


class InvalidAutomorphismError(ExactArithmeticError):
    """Galois automorphism index not coprime to the conductor."""


class NotRealError(ExactArithmeticError):
    """Asked for a real embedding of an element with a non-negligible imaginary part."""


class IntervalError(ExactArithmeticError):
    """Interval arithmetic cannot proceed (division by an interval containing 0, ...)."""


class RecognitionError(ExactArithmeticError):
    """No exact value of the allowed shape fits the input interval."""


class AmbiguousRecognitionError(RecognitionError):
    """More than one candidate of the allowed shape fits the input interval."""


# ---------------------------------------------------------------------------
# rational helpers
# ---------------------------------------------------------------------------

def as_fraction(x) -> Fraction:
    """Coerce int / Fraction / Decimal / decimal-string / rational-string to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, decimal.Decimal):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(decimal.Decimal(s))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_valuation(x: Fraction, p: int) -> int:
    """v_p of a nonzero rational."""
    if x == 0:
        raise ExactArithmeticError("valuation of zero is not defined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_square_rational(x: Fraction) -> bool:
    """True when x is the square of a rational (0 counts)."""
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def _is_probable_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e24
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


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n > 0 as s^2 * d with d squarefree; returns (s, d).

    Trial division up to 10^6 plus a primality check on the remainder; raises
    if the remainder could hide a square factor we cannot see.
    """
    if n <= 0:
        raise ExactArithmeticError("squarefree decomposition needs n > 0")
    s, d = 1, 1
    m = n
    q = 2
    while q * q <= m and q < 10 ** 6:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            s *= q ** (e // 2)
            if e % 2:
                d *= q
        q += 1 if q == 2 else 2
    if m > 1:
        r = isqrt(m)
        if r * r == m:
            s *= r
        elif _is_probable_prime(m):
            d *= m
        else:
            raise ExactArithmeticError(f"cannot certify squarefree part of {n}")
    return s, d


def _prime_power(m: int) -> tuple[int, int]:
    """m = p^n with p an odd prime -> (p, n)."""
    if m < 3:
        raise UnsupportedConductorError(f"conductor {m} is not an odd prime power")
    p = m
    for q in range(3, isqrt(m) + 1, 2):
        if m % q == 0:
            p = q
            break
    if p % 2 == 0 or not _is_probable_prime(p):
        raise UnsupportedConductorError(f"conductor {m} is not an odd prime power")
    n = 0
    mm = m
    while mm % p == 0:
        mm //= p
        n += 1
    if mm != 1:
        raise UnsupportedConductorError(f"conductor {m} is not a prime power")
    return p, n


def legendre_symbol(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

class CyclotomicNumber:
    """Element of Q(zeta_m), m = 1 or an odd prime power, in the power basis."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[Fraction]):
        if m != 1:
            _prime_power(m)  # validates
        phi = euler_phi(m)
        cs = [as_fraction(c) for c in coeffs]
        if len(cs) > phi:
            raise ExactArithmeticError(
                f"coefficient vector of length {len(cs)} too long for phi({m}) = {phi}")
        cs += [Fraction(0)] * (phi - len(cs))
        self.m = m
        self.coeffs = tuple(cs)

    # construction -----------------------------------------------------------

    @classmethod
    def rational(cls, x) -> "CyclotomicNumber":
        return cls(1, [as_fraction(x)])

    @classmethod
    def zeta_power(cls, m: int, k: int) -> "CyclotomicNumber":
        """zeta_m^k as an element of Q(zeta_m)."""
        if m == 1:
            return cls.rational(1)
        poly = [Fraction(0)] * (k % m) + [Fraction(1)]
        return cls(m, _reduce_mod_cyclotomic(poly, m))

    def promote(self, m: int) -> "CyclotomicNumber":
        """Reinterpret in Q(zeta_m); only rational elements may change conductor."""
        if m == self.m:
            return self
        if self.is_rational():
            return CyclotomicNumber(m, [self.coeffs[0]])
        raise UnsupportedConductorError(
            f"cannot move an irrational element from conductor {self.m} to {m}")

    # predicates / accessors --------------------------------------------------

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise ExactArithmeticError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic --------------------------------------------------------------

    def _pair(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(other)
        if not isinstance(other, CyclotomicNumber):
            raise TypeError(f"cannot combine CyclotomicNumber with {type(other).__name__}")
        if self.m == other.m:
            return self, other
        if self.m == 1:
            return self.promote(other.m), other
        if other.m == 1:
            return self, other.promote(self.m)
        raise UnsupportedConductorError(
            f"mixed conductors {self.m} and {other.m}")

    def __add__(self, other):
        a, b = self._pair(other)
        return CyclotomicNumber(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicNumber) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.m == 1:
            return CyclotomicNumber(1, [a.coeffs[0] * b.coeffs[0]])
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, ci in enumerate(a.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(b.coeffs):
                if cj != 0:
                    prod[i + j] += ci * cj
        return CyclotomicNumber(a.m, _reduce_mod_cyclotomic(prod, a.m))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.m == 1 or self.is_rational():
            inv = CyclotomicNumber.rational(1 / self.coeffs[0])
            return inv.promote(self.m)
        # extended gcd of self (as a polynomial) with the cyclotomic polynomial
        g, s = _poly_xgcd_with_cyclotomic(list(self.coeffs), self.m)
        # g is a nonzero constant; inverse = s / g
        inv_coeffs = [c / g for c in s]
        return CyclotomicNumber(self.m, _reduce_mod_cyclotomic(inv_coeffs, self.m))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CyclotomicNumber.rational(other).promote(self.m) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.rational(1).promote(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == as_fraction(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except UnsupportedConductorError:
            # different genuine conductors can still both be rational
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return f"CyclotomicNumber({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = f"z{i}" if i > 1 else "z"
                terms.append(f"{c}*{z}" if c != 1 else z)
        return f"CyclotomicNumber(m={self.m}: {' + '.join(terms)})"

    # Galois action -----------------------------------------------------------

    def galois_apply(self, a: int) -> "CyclotomicNumber":
        """Image under zeta -> zeta^a; a must be coprime to the conductor."""
        if self.m == 1:
            return self
        if gcd(a, self.m) != 1:
            raise InvalidAutomorphismError(f"{a} is not coprime to conductor {self.m}")
        a %= self.m
        poly = [Fraction(0)] * self.m
        for i, c in enumerate(self.coeffs):
            if c != 0:
                poly[(a * i) % self.m] += c
        return CyclotomicNumber(self.m, _reduce_mod_cyclotomic(poly, self.m))

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta -> zeta^(-1)."""
        if self.m == 1:
            return self
        return self.galois_apply(self.m - 1)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates; a rational number."""
        if self.m == 1:
            return self.coeffs[0]
        acc = CyclotomicNumber.rational(1).promote(self.m)
        for a in range(1, self.m):
            if gcd(a, self.m) == 1:
                acc = acc * self.galois_apply(a)
        return acc.rational_part()


def euler_phi(m: int) -> int:
    if m == 1:
        return 1
    p, n = _prime_power(m)
    return p ** (n - 1) * (p - 1)


def _reduce_mod_cyclotomic(poly: list[Fraction], m: int) -> list[Fraction]:
    """Reduce a polynomial in zeta_m modulo Phi_{p^n}(x) = sum_i x^(i*p^(n-1))."""
    p, n = _prime_power(m)
    q = p ** (n - 1)
    phi = q * (p - 1)
    cs = list(poly) + [Fraction(0)] * max(0, phi - len(poly))
    # x^phi = -(1 + x^q + x^(2q) + ... + x^((p-2)q))
    for d in range(len(cs) - 1, phi - 1, -1):
        c = cs[d]
        if c == 0:
            continue
        cs[d] = Fraction(0)
        for i in range(p - 1):
            cs[d - phi + i * q] -= c
    return cs[:phi]


def _poly_xgcd_with_cyclotomic(f: list[Fraction], m: int) -> tuple[Fraction, list[Fraction]]:
    """Return (g, s) with s*f = g (mod Phi_m) and g a nonzero rational.

    Plain extended Euclid over Q[x]; Phi_m is irreducible so the gcd with any
    nonzero f of smaller degree is a constant.
    """
    p, n = _prime_power(m)
    q = p ** (n - 1)
    phi = q * (p - 1)
    Phi = [Fraction(0)] * (phi + 1)
    for i in range(p):
        Phi[i * q] = Fraction(1)

    def deg(a):
        for i in range(len(a) - 1, -1, -1):
            if a[i] != 0:
                return i
        return -1

    def polydivmod(a, b):
        a = list(a)
        db, lb = deg(b), b[deg(b)]
        quo = [Fraction(0)] * (max(deg(a) - db, -1) + 1)
        while deg(a) >= db:
            da = deg(a)
            c = a[da] / lb
            quo[da - db] = c
            for i, bc in enumerate(b[:db + 1]):
                if bc != 0:
                    a[da - db + i] -= c * bc
            a[da] = Fraction(0)
        return quo, a

    # invariant: r0 = s0*f (mod Phi), r1 = s1*f (mod Phi)
    r0, s0 = Phi, [Fraction(0)]
    r1, s1 = list(f), [Fraction(1)]
    while True:
        d1 = deg(r1)
        if d1 < 0:
            raise ZeroDivisionError("element is divisible by the cyclotomic polynomial")
        if d1 == 0:
            return r1[0], s1
        quo, rem = polydivmod(r0, r1)
        # s_new = s0 - quo*s1
        s_new = list(s0) + [Fraction(0)] * max(0, deg(quo) + deg(s1) + 1 - len(s0))
        for i, qc in enumerate(quo):
            if qc == 0:
                continue
            for j, sc in enumerate(s1):
                if sc != 0:
                    s_new[i + j] -= qc * sc
        r0, s0, r1, s1 = r1, s1, rem, s_new


def p_valuation(x, p: int) -> Fraction:
    """Normalized p-adic valuation, v(p) = 1; x rational or in Q(zeta_{p^n}).

    For an element of Q(zeta_{p^n}) the valuation at the unique prime above p
    is v_p(Norm(x)) / phi(p^n). Elements of Q(zeta_m) can only be valuated at
    m's own prime unless they are rational.
    """
    if isinstance(x, (int, Fraction)):
        return Fraction(rational_valuation(as_fraction(x), p))
    if not isinstance(x, CyclotomicNumber):
        raise TypeError(f"cannot take a valuation of {type(x).__name__}")
    if x.is_zero():
        raise ExactArithmeticError("valuation of zero is not defined")
    if x.is_rational():
        return Fraction(rational_valuation(x.rational_part(), p))
    fp, _ = _prime_power(x.m)
    if fp != p:
        raise UnsupportedConductorError(
            f"valuation at {p} of an irrational element of Q(zeta_{x.m}) is ambiguous")
    return Fraction(rational_valuation(x.norm(), p), euler_phi(x.m))


def sqrt_in_cyclotomic(d: int, m: int) -> CyclotomicNumber:
    """An exact square root of d > 0 inside Q(zeta_m), positive in the
    canonical embedding.

    Supported radicands: perfect squares (any m) and d whose squarefree part
    is m's prime p with p = 1 mod 4 (quadratic Gauss sum). Verified by
    squaring before being returned.
    """
    if d <= 0:
        raise ExactArithmeticError("radicand must be positive")
    s, d0 = squarefree_decompose(d)
    if d0 == 1:
        return CyclotomicNumber.rational(s).promote(m)
    p, n = _prime_power(m)
    if d0 != p or p % 4 != 1:
        raise RecognitionError(
            f"sqrt({d}) does not lie in Q(zeta_{m}) (squarefree part {d0})")
    # Gauss sum over the subfield Q(zeta_p): zeta_p = zeta_m^(p^(n-1))
    step = p ** (n - 1)
    g = CyclotomicNumber.rational(0).promote(m)
    for a in range(1, p):
        g = g + legendre_symbol(a, p) * CyclotomicNumber.zeta_power(m, a * step)
    if g * g != CyclotomicNumber.rational(p).promote(m):
        raise ExactArithmeticError("Gauss sum square sanity check failed")
    root = s * g
    if real_embedding(root).value < 0:
        root = -root
    return root


# ---------------------------------------------------------------------------
# decimals with error bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecimalWithError:
    """A real number known to lie in [value - abs_error, value + abs_error]."""

    value: Fraction
    abs_error: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        object.__setattr__(self, "abs_error", as_fraction(self.abs_error))
        if self.abs_error < 0:
            raise IntervalError("negative error bound")

    @classmethod
    def parse(cls, value: str, abs_error: str = "0") -> "DecimalWithError":
        return cls(as_fraction(value), as_fraction(abs_error))

    @classmethod
    def exact(cls, value) -> "DecimalWithError":
        return cls(as_fraction(value), Fraction(0))

    # interval arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "DecimalWithError":
        if isinstance(other, DecimalWithError):
            return other
        return DecimalWithError.exact(other)

    def __add__(self, other):
        o = self._coerce(other)
        return DecimalWithError(self.value + o.value, self.abs_error + o.abs_error)

    __radd__ = __add__

    def __neg__(self):
        return DecimalWithError(-self.value, self.abs_error)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        err = (abs(self.value) * o.abs_error + abs(o.value) * self.abs_error
               + self.abs_error * o.abs_error)
        return DecimalWithError(self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if abs(o.value) <= o.abs_error:
            raise IntervalError("division by an interval containing zero")
        # |a/b - a0/b0| <= (|a0|*eb + |b0|*ea) / (|b0| * (|b0| - eb)) is the
        # tight bound; use the slightly looser monotone one below
        err = (self.abs_error + abs(self.value / o.value) * o.abs_error) / (abs(o.value) - o.abs_error)
        return DecimalWithError(self.value / o.value, err)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sqrt(self, digits: int = 40) -> "DecimalWithError":
        """Interval square root via integer isqrt at the given precision."""
        lo = self.value - self.abs_error
        hi = self.value + self.abs_error
        if lo < 0:
            raise IntervalError("square root of an interval reaching below zero")
        scale = 10 ** digits
        rlo = Fraction(isqrt((lo.numerator * scale * scale) // lo.denominator), scale)
        rhi = Fraction(isqrt((hi.numerator * scale * scale) // hi.denominator) + 1, scale)
        mid = (rlo + rhi) / 2
        return DecimalWithError(mid, rhi - mid)

    # predicates ---------------------------------------------------------------

    def contains(self, x) -> bool:
        return abs(self.value - as_fraction(x)) <= self.abs_error

    def overlaps(self, other: "DecimalWithError") -> bool:
        return abs(self.value - other.value) <= self.abs_error + other.abs_error

    def is_positive(self) -> bool:
        return self.value - self.abs_error > 0

    def __repr__(self):
        return f"DecimalWithError({float(self.value):.12g} +- {float(self.abs_error):.3g})"


def sqrt_rational_approx(n: int, digits: int = 40) -> DecimalWithError:
    """Rational approximation of sqrt(n) for n >= 0; exact for perfect squares."""
    if n < 0:
        raise IntervalError("negative radicand")
    r = isqrt(n)
    if r * r == n:
        return DecimalWithError.exact(r)
    return DecimalWithError.exact(Fraction(n)).sqrt(digits)


# ---------------------------------------------------------------------------
# real embeddings
# ---------------------------------------------------------------------------

def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0 and exp != 0:
        raise ExactArithmeticError("non-finite value in embedding")
    # mpmath on the gmpy backend hands out gmpy2.mpz mantissas; Fraction must
    # not be built from them (mixed-type internals break big-value arithmetic)
    val = Fraction(int(man), 1) * (Fraction(2) ** int(exp))
    return -val if sign else val


def real_embedding(x: CyclotomicNumber, k: int = 1, dps: int = 50) -> DecimalWithError:
    """The image of x under zeta_m -> exp(2*pi*i*k/m), which must be real.

    Returns a conservative interval; raises NotRealError when the imaginary
    part exceeds the numerical error budget.
    """
    if x.m == 1 or x.is_rational():
        return DecimalWithError.exact(x.coeffs[0])
    if gcd(k, x.m) != 1:
        raise InvalidAutomorphismError(f"embedding index {k} not coprime to {x.m}")
    total = sum(abs(c) for c in x.coeffs) + 1
    budget = total * Fraction(10) ** (-(dps - 5))
    with mpmath.workdps(dps):
        re = mpmath.mpf(0)
        im = mpmath.mpf(0)
        for i, c in enumerate(x.coeffs):
            if c == 0:
                continue
            t = mpmath.mpf(2 * k * i) / x.m
            cm = mpmath.mpf(c.numerator) / c.denominator
            re += cm * mpmath.cospi(t)
            im += cm * mpmath.sinpi(t)
        re_frac = _mpf_to_fraction(re)
        im_frac = _mpf_to_fraction(im)
    if abs(im_frac) > budget:
        raise NotRealError(
            f"imaginary part {float(im_frac):.3g} exceeds error budget under embedding {k}")
    return DecimalWithError(re_frac, budget)


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

def _simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """The fraction with the smallest denominator in [lo, hi] (ties: closest to 0)."""
    if lo > hi:
        raise IntervalError("empty interval")
    if hi < 0:
        return -_simplest_in_interval(-hi, -lo)
    if lo <= 0:
        return Fraction(0)
    a = lo.numerator // lo.denominator
    if Fraction(a) == lo:
        return lo
    if Fraction(a + 1) <= hi:
        return Fraction(a + 1)
    inner = _simplest_in_interval(1 / (hi - a), 1 / (lo - a))
    return a + 1 / inner


def _farey_neighbors(c: Fraction, bound: int) -> tuple[Fraction, Fraction]:
    """The Farey-sequence neighbors of c at order `bound` (c's own denominator <= bound)."""
    p, q = c.numerator, c.denominator
    # right neighbor a/b with a*q - p*b = 1, b maximal <= bound
    # left neighbor with p*b - a*q = 1
    if q == 1:
        b = bound
        return Fraction(p * b - 1, b), Fraction(p * b + 1, b)

    def neighbor(sign: int) -> Fraction:
        # find b in [1, bound] with p*b = sign (mod q), b maximal
        binv = pow(p % q, -1, q)
        b0 = (sign * binv) % q
        if b0 == 0:
            b0 = q
        b = b0 + ((bound - b0) // q) * q
        a = (p * b - sign) // q
        return Fraction(a, b)
    return neighbor(1), neighbor(-1)


def rational_reconstruct(x: DecimalWithError, den_bound: int = 10 ** 6,
                         tol: Fraction | None = None) -> Fraction:
    """The unique rational with denominator <= den_bound within tol of x.

    tol defaults to twice the input's error bound. Raises RecognitionError when
    no candidate exists and AmbiguousRecognitionError when the interval admits
    a second candidate of admissible denominator.
    """
    if tol is None:
        tol = 2 * x.abs_error
    tol = as_fraction(tol)
    lo, hi = x.value - tol, x.value + tol
    c = _simplest_in_interval(lo, hi)
    if c.denominator > den_bound:
        raise RecognitionError(
            f"no rational with denominator <= {den_bound} within {float(tol):.3g} "
            f"of {float(x.value):.12g}")
    n1, n2 = _farey_neighbors(c, den_bound)
    for other in (n1, n2):
        if other != c and lo <= other <= hi:
            raise AmbiguousRecognitionError(
                f"both {c} and {other} fit the interval at denominator bound {den_bound}")
    return c


@dataclass(frozen=True)
class AlgebraicOrbit:
    """Result of recognizing a family of real algebraic numbers in Q(zeta_m).

    values    -- exact elements, aligned with the input order
    min_poly  -- monic minimal polynomial of the distinct values, ascending
                 rational coefficients [c0, c1, ..., 1]
    radicand  -- squarefree d with the values in Q(sqrt(d)), or 1 when rational
    """

    values: tuple[CyclotomicNumber, ...]
    min_poly: tuple[Fraction, ...]
    radicand: int


def _min_poly_of(values: Iterable[CyclotomicNumber]) -> tuple[Fraction, ...]:
    distinct: list[CyclotomicNumber] = []
    for v in values:
        if not any(v == w for w in distinct):
            distinct.append(v)
    # product of (X - v) with rational coefficients
    poly = [CyclotomicNumber.rational(1)]
    for v in distinct:
        nxt = [CyclotomicNumber.rational(0) for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * v
        poly = nxt
    out = []
    for c in poly:
        if not c.is_rational():
            raise RecognitionError("candidate set is not Galois-stable")
        out.append(c.rational_part())
    return tuple(out)


def recognize_orbit(xs: Sequence[DecimalWithError], m: int,
                    den_bound: int = 10 ** 6) -> AlgebraicOrbit:
    """Recognize each interval as an exact element of Q(zeta_m), jointly.

    Strategy: rational reconstruction per entry; any entries that resist are
    paired off and recognized through their sum and product (degree-2 factors
    over Q, with the square root realized inside Q(zeta_m) via a Gauss sum).
    Everything is verified exactly before being returned.
    """
    exact: dict[int, CyclotomicNumber] = {}
    stubborn: list[int] = []
    if len(xs) == 1:
        # a singleton orbit must be rational; let recognition errors
        # (including ambiguity) surface with their own reasons
        exact[0] = CyclotomicNumber.rational(rational_reconstruct(xs[0], den_bound))
    else:
        for i, x in enumerate(xs):
            try:
                exact[i] = CyclotomicNumber.rational(rational_reconstruct(x, den_bound))
            except RecognitionError:
                stubborn.append(i)

    radicand = 1
    if stubborn:
        if len(stubborn) != 2:
            raise RecognitionError(
                f"{len(stubborn)} entries resist rational recognition; only "
                "conjugate pairs are supported")
        i, j = stubborn
        s = rational_reconstruct(xs[i] + xs[j], den_bound)
        q = rational_reconstruct(xs[i] * xs[j], den_bound)
        disc = s * s - 4 * q
        if disc <= 0:
            raise RecognitionError("conjugate pair has non-real quadratic discriminant")
        # disc = (u/w)^2 * d, d squarefree
        scaled = disc.numerator * disc.denominator  # disc * den^2
        sq, d = squarefree_decompose(scaled)
        radicand = d
        root = sqrt_in_cyclotomic(d, m)
        half_diff = Fraction(sq, disc.denominator) / 2
        r_plus = CyclotomicNumber.rational(s / 2).promote(m) + half_diff * root
        r_minus = CyclotomicNumber.rational(s / 2).promote(m) - half_diff * root
        # assign by real embedding: root > 0 so r_plus is the larger value
        if xs[i].value >= xs[j].value:
            exact[i], exact[j] = r_plus, r_minus
        else:
            exact[i], exact[j] = r_minus, r_plus

    values = tuple(exact[i] for i in range(len(xs)))
    poly = _min_poly_of(values)

    # verification: every exact value must sit inside (a slight widening of)
    # its input interval
    for x, v in zip(xs, values):
        emb = real_embedding(v) if not v.is_rational() else DecimalWithError.exact(v.rational_part())
        widened = DecimalWithError(x.value, 2 * x.abs_error + emb.abs_error)
        if not widened.overlaps(emb):
            raise RecognitionError("recognized value does not match its input interval")
    # and the minimal polynomial must vanish on each value
    for v in values:
        acc = CyclotomicNumber.rational(0).promote(v.m if v.m != 1 else 1)
        power = CyclotomicNumber.rational(1)
        for c in poly:
            acc = acc + c * power
            power = power * v
        if not acc.is_zero():
            raise ExactArithmeticError("internal recognition check failed")
    return AlgebraicOrbit(values=values, min_poly=poly, radicand=radicand)

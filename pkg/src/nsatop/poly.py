"""Exact univariate polynomials over the rationals.

Shared arithmetic core for the infinitesimal field (polynomials in a formal
infinitesimal) and the germ sandbox (polynomials in the sequence index).
All coefficients are `fractions.Fraction`; nothing here is approximate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x**i.

    The zero polynomial is represented by an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cleaned = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        object.__setattr__(self, "coeffs", _trim(cleaned))

    @staticmethod
    def const(c) -> "Poly":
        return Poly((Fraction(c),))

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly((0,) * k + (Fraction(c),))

    ZERO: "Poly"
    ONE: "Poly"
    X: "Poly"

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention degree(0) == -1."""
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> Optional[int]:
        """Index of the lowest nonzero coefficient; None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def lowest(self) -> Fraction:
        v = self.valuation
        if v is None:
            raise ValueError("zero polynomial has no lowest coefficient")
        return self.coeffs[v]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([k * c for k in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlead = other.leading
        ddeg = other.degree
        q = [Fraction(0)] * max(0, len(rem) - ddeg)
        for i in range(len(rem) - 1, ddeg - 1, -1):
            if rem[i]:
                f = rem[i] / dlead
                q[i - ddeg] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - ddeg + j] -= f * c
        return Poly(q), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def _primitive_ints(self) -> list:
        """Integer coefficient list (content removed), same roots."""
        import math

        den = 1
        for c in self.coeffs:
            d = c.denominator
            den = den * d // math.gcd(den, d)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        return ints

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (primitive remainder sequence)."""
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        a = self._primitive_ints()
        b = other._primitive_ints()
        if len(a) < len(b):
            a, b = b, a
        while b:
            a, b = b, _int_prem(a, b)
        return Poly(a).monic()

    # -- evaluation and substitutions ---------------------------------------

    def eval(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_down(self, k: int) -> "Poly":
        """Divide by x**k; requires valuation >= k."""
        if k == 0 or self.is_zero():
            return self
        if any(self.coeffs[:k]):
            raise ValueError("valuation too small in shift_down")
        return Poly(self.coeffs[k:])

    def stretch(self, k: int) -> "Poly":
        """Substitute x -> x**k."""
        if k == 1 or self.is_zero():
            return self
        out = [Fraction(0)] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * k] = c
        return Poly(out)

    def decimate(self, k: int) -> "Poly":
        """Inverse of stretch; every nonzero exponent must be divisible by k."""
        if k == 1 or self.is_zero():
            return self
        out = [Fraction(0)] * (self.degree // k + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                if i % k:
                    raise ValueError("exponent not divisible in decimate")
                out[i // k] = c
        return Poly(out)

    def exponent_gcd(self) -> int:
        """Gcd of the exponents of the nonzero terms (0 for constants and zero)."""
        import math

        g = 0
        for i, c in enumerate(self.coeffs):
            if c:
                g = math.gcd(g, i)
        return g

    def reversed_to(self, length: int) -> "Poly":
        """Coefficients reversed within a window of the given length.

        Realizes x**(length-1) * p(1/x) for p of degree < length.
        """
        if self.degree >= length:
            raise ValueError("polynomial too long for window")
        padded = list(self.coeffs) + [Fraction(0)] * (length - len(self.coeffs))
        return Poly(padded[::-1])

    # -- roots ----------------------------------------------------------------

    def nth_root(self, n: int) -> Optional["Poly"]:
        """Exact n-th root, or None when no such polynomial exists.

        Works from the lowest coefficient upward: the candidate is the unique
        truncated power-series root, verified exactly by powering back.
        For even n the root with positive lowest coefficient is returned.
        """
        if n == 1 or self.is_zero():
            return self
        v = self.valuation
        if v % n:
            return None
        if (self.degree - v) % n:
            return None
        body = Poly(self.coeffs[v:])
        c0 = rational_nth_root(body.coeffs[0], n)
        if c0 is None:
            return None
        deg = body.degree // n
        root = [Fraction(0)] * (deg + 1)
        root[0] = c0
        lead_inv = 1 / (n * c0 ** (n - 1))
        partial = Poly((c0,))
        for k in range(1, deg + 1):
            have = (partial ** n).coeff(k)
            root[k] = (body.coeff(k) - have) * lead_inv
            partial = Poly(root[: k + 1])
        candidate = Poly(root)
        if (candidate ** n) != body:
            return None
        return Poly.monomial(v // n) * candidate

    # -- formatting -------------------------------------------------------------

    def to_str(self, var: str = "x", ram: int = 1) -> str:
        """Human form with ascending exponents; exponents divided by ram."""
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = Fraction(i, ram)
            if e == 0:
                body = _frac_str(c)
            else:
                if e == 1:
                    pw = var
                elif e.denominator == 1:
                    pw = f"{var}^{e.numerator}"
                else:
                    pw = f"{var}^({e.numerator}/{e.denominator})"
                if c == 1:
                    body = pw
                elif c == -1:
                    body = f"-{pw}"
                else:
                    body = f"{_frac_str(c)}*{pw}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _int_prem(u: list, v: list) -> list:
    """Content-free pseudo-remainder of integer coefficient lists."""
    import math

    u = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(u) - 1 >= dv:
        lead = u[-1]
        if lead == 0:
            u.pop()
            continue
        shift = len(u) - 1 - dv
        u = [lv * c for c in u]
        for j, vc in enumerate(v):
            u[shift + j] -= lead * vc
        while u and u[-1] == 0:
            u.pop()
        if not u:
            return []
        g = 0
        for c in u:
            g = math.gcd(g, c)
        if g > 1:
            u = [c // g for c in u]
    return u


def integer_nth_root(m: int, n: int) -> Optional[int]:
    """Exact n-th root of a nonnegative integer, or None (integer Newton)."""
    if m < 0:
        raise ValueError("negative radicand")
    if m in (0, 1) or n == 1:
        return m
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x ** n == m else None


def rational_nth_root(q: Fraction, n: int) -> Optional[Fraction]:
    """Exact rational n-th root, or None. Even roots require q >= 0."""
    q = Fraction(q)
    if q < 0:
        if n % 2 == 0:
            return None
        r = rational_nth_root(-q, n)
        return None if r is None else -r
    num = integer_nth_root(q.numerator, n)
    if num is None:
        return None
    den = integer_nth_root(q.denominator, n)
    if den is None:
        return None
    return Fraction(num, den)


Poly.ZERO = Poly()
Poly.ONE = Poly((1,))
Poly.X = Poly((0, 1))

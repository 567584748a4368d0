"""Exact arithmetic in Z[zeta_n] and in the maximal order of Q(sqrt(-7)).

A :class:`CyclotomicInt` stores integer coordinates on the power basis
1, zeta, ..., zeta^{phi(n)-1}; every result is reduced modulo the cyclotomic
polynomial, so equal values have equal coefficient tuples.
"""

from __future__ import annotations

import cmath
import dataclasses
import functools
import math


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]  # b is monic
        out[k - db] = c
        if c:
            for i in range(db + 1):
                a[k - db + i] -= c * b[i]
    assert not any(a[:db]), "non-exact polynomial division"
    return out


def euler_phi(n):
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(n, vec):
    """Reduce a polynomial in zeta (any length) to canonical coordinates."""
    phi_n = cyclotomic_polynomial(n)
    d = len(phi_n) - 1
    v = list(vec)
    if len(v) < d:
        v.extend([0] * (d - len(v)))
    for k in range(len(v) - 1, d - 1, -1):
        c = v[k]
        if c:
            base = k - d
            for i in range(d):
                v[base + i] -= c * phi_n[i]
    return tuple(v[:d])


class CyclotomicInt:
    """An element of Z[zeta_n]."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        d = euler_phi(n)
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != d:
            coeffs = _reduce(n, coeffs)
        self.n = n
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n, c):
        return cls(n, (c,) + (0,) * (euler_phi(n) - 1))

    @classmethod
    def zeta(cls, n, k=1):
        vec = [0] * n
        vec[k % n] = 1
        return cls(n, _reduce(n, vec))

    @classmethod
    def from_exponent_counts(cls, n, counts):
        """sum_k counts[k] * zeta^k for k in [0, n)."""
        return cls(n, _reduce(n, counts))

    # -- helpers -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicInt):
            if other.n != self.n:
                raise ValueError(f"mixed orders {self.n} and {other.n}; lift() first")
            return other
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.n, other)
        return None

    def lift(self, m):
        """The same number viewed in Z[zeta_m], for n | m."""
        if m % self.n:
            raise ValueError(f"Z[zeta_{self.n}] is not contained in Z[zeta_{m}]")
        step = m // self.n
        vec = [0] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            vec[i * step] = c
        return CyclotomicInt(m, _reduce(m, vec))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicInt(self.n, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicInt(self.n, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.n, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return CyclotomicInt(self.n, _reduce(self.n, prod))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result = CyclotomicInt.from_int(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.n, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.n != self.n:
            m = self.n * other.n // math.gcd(self.n, other.n)
            return self.lift(m).coeffs == other.lift(m).coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CyclotomicInt({self.n}, {self.coeffs})"

    def __str__(self):
        z = f"z{self.n}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (z if i == 1 else f"{z}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # -- Galois action and embeddings ---------------------------------------

    def galois(self, k):
        """sigma_k: zeta -> zeta^k."""
        if math.gcd(k, self.n) != 1:
            raise ValueError(f"sigma_{k} is not an automorphism of Q(zeta_{self.n})")
        vec = [0] * self.n
        for i, c in enumerate(self.coeffs):
            vec[i * k % self.n] += c
        return CyclotomicInt(self.n, _reduce(self.n, vec))

    def conj(self):
        return self.galois(-1 % self.n) if self.n > 2 else self

    def embed(self, j=1):
        if math.gcd(j, self.n) != 1:
            raise ValueError(f"gcd({j}, {self.n}) != 1")
        w = cmath.exp(2j * cmath.pi * j / self.n)
        return sum(c * w**i for i, c in enumerate(self.coeffs))

    def embeddings(self):
        return [self.embed(j) for j in range(1, self.n + 1) if math.gcd(j, self.n) == 1]

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_int(self):
        if not self.is_rational():
            from .errors import NonIntegralError
            raise NonIntegralError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def field_norm(self):
        """Product of all Galois conjugates, an exact integer."""
        out = CyclotomicInt.from_int(self.n, 1)
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                out = out * self.galois(k)
        return (out * self).to_int() if self.n > 2 else self.to_int()


# -- functional spellings ----------------------------------------------------

def cyc_arith(x, y, op):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def galois_apply(k, x):
    return x.galois(k)


def embed_complex(x, j=1):
    return x.embed(j)


# ---------------------------------------------------------------------------
# the maximal order of Q(sqrt(-7))

@dataclasses.dataclass(frozen=True)
class QuadInt7:
    """(a + b*sqrt(-7)) / 2 with a = b mod 2."""

    a: int
    b: int

    def __post_init__(self):
        if (self.a - self.b) % 2:
            raise ValueError(f"({self.a} + {self.b}*sqrt(-7))/2 is not integral")

    @classmethod
    def from_int(cls, c):
        return cls(2 * c, 0)

    def _coerce(self, other):
        if isinstance(other, QuadInt7):
            return other
        if isinstance(other, int):
            return QuadInt7.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt7(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt7(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt7(self.a - o.a, self.b - o.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.a * o.a - 7 * self.b * o.b, self.a * o.b + self.b * o.a
        assert a % 2 == 0 and b % 2 == 0
        return QuadInt7(a // 2, b // 2)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = QuadInt7(2, 0)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b) == (o.a, o.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def conj(self):
        return QuadInt7(self.a, -self.b)

    def norm(self):
        return (self.a * self.a + 7 * self.b * self.b) // 4

    def trace(self):
        return self.a

    def __complex__(self):
        return complex(self.a / 2, self.b * math.sqrt(7) / 2)

    def is_rational(self):
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a // 2)
        sign = "+" if self.b > 0 else "-"
        if self.a % 2 == 0:
            a, b = self.a // 2, abs(self.b) // 2
            fmt = "{} {} {}sqrt(-7)"
        else:
            a, b = self.a, abs(self.b)
            fmt = "({} {} {}sqrt(-7))/2"
        return fmt.format(a, sign, "" if b == 1 else f"{b}*")

    def to_cyclotomic(self):
        """Inverse of :func:`to_quad7`, via sqrt(-7) = 2*eta + 1."""
        k = self.b
        m = (self.a + self.b) // 2
        return CyclotomicInt(7, (m, k, k, 0, k, 0))


def to_quad7(x):
    """Coordinates (a, b) of a sigma_2-fixed element of Z[zeta_7].

    A sigma_2-fixed element is m + k*eta with eta = zeta + zeta^2 + zeta^4, and
    eta = (-1 + sqrt(-7))/2, so it equals (2m - k + k*sqrt(-7))/2.
    """
    if x.n != 7:
        raise ValueError(f"expected an element of Z[zeta_7], got n = {x.n}")
    c = x.coeffs
    if not (c[1] == c[2] == c[4] and c[3] == 0 and c[5] == 0):
        raise ValueError(f"{x} is not fixed by sigma_2")
    m, k = c[0], c[1]
    return QuadInt7(2 * m - k, k)


# ---------------------------------------------------------------------------
# polynomials with CyclotomicInt (or int) coefficients, lowest degree first

def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def expand_product(factors):
    out = [1]
    for f in factors:
        out = poly_mul(out, f)
    return out


def integer_coefficients(poly):
    """Coefficients as Python ints; raises NonIntegralError otherwise."""
    return tuple(c if isinstance(c, int) else c.to_int() for c in poly)

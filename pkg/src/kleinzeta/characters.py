"""Multiplicative characters of F_q^x with exact values, and the additive character.

``Character(field, n, k)`` is x -> zeta_n^{k * log_g(x)}, g the field's fixed
generator.  Conventions at zero: a nontrivial character vanishes, the trivial
character takes the value 1.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .cyclotomic import CyclotomicInt
from .finite_field import build_field, subfield_embedding, trace


class Character:
    __slots__ = ("field", "order", "index")

    def __init__(self, field, order, index=1):
        if order < 1 or (field.q - 1) % order:
            raise ValueError(f"order {order} does not divide q - 1 = {field.q - 1}")
        self.field = field
        self.order = order
        self.index = index % order

    @property
    def is_trivial(self):
        return self.index == 0

    def exact_order(self):
        return self.order // math.gcd(self.index, self.order)

    def _key(self):
        d = self.exact_order()
        return self.field, d, self.index * d // self.order

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Character(F_{self.field.q}, order={self.order}, index={self.index})"

    def exponent(self, x):
        """e with chi(x) = zeta_n^e, or None when chi(x) = 0."""
        c = self.field.code_of(x)
        if c == 0:
            return 0 if self.is_trivial else None
        return self.index * self.field.log(c) % self.order

    def __call__(self, x):
        return evaluate(self, x)

    def __mul__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("characters of different fields")
        n = self.order * other.order // math.gcd(self.order, other.order)
        k = self.index * (n // self.order) + other.index * (n // other.order)
        return Character(self.field, n, k)

    def __pow__(self, e):
        return Character(self.field, self.order, self.index * e)

    def inverse(self):
        return self**-1

    def exponent_table(self):
        """exps[x] = k*log(x) mod n for x != 0 (exps[0] is 0, meaningless)."""
        lg = self.field.log_table.astype(np.int64)
        out = (self.index * lg) % self.order
        out[0] = 0
        return out

    def complex_values(self):
        """chi(x) as complex numbers for all codes x, with the zero convention."""
        vals = np.exp(2j * np.pi * self.exponent_table() / self.order)
        vals[0] = 1.0 if self.is_trivial else 0.0
        return vals


def make_character(fd, n, k=1):
    return Character(fd, n, k)


def evaluate(chi, x):
    e = chi.exponent(x)
    if e is None:
        return CyclotomicInt.from_int(chi.order, 0)
    return CyclotomicInt.zeta(chi.order, e)


def lift_character(chi, r):
    """chi o Norm on F_{q^r}, a character of the same order.

    The norm lands in the copy of F_q inside F_{q^r} given by
    :func:`~kleinzeta.finite_field.subfield_embedding`.  If g is F_q's generator
    and G the big field's, iota(g) = G^{e (Q-1)/(q-1)}, so
    chi(N(G^t)) = zeta_n^{k t / e} and the lift has index k / e mod n.
    """
    small = chi.field
    big = build_field(small.p, small.r * r)
    if r == 1:
        return Character(big, chi.order, chi.index)
    step = (big.q - 1) // (small.q - 1)
    image = subfield_embedding(small, big)
    t = big.log(image)
    assert t % step == 0
    e = t // step
    index = chi.index * pow(e, -1, chi.order) % chi.order if chi.order > 1 else 0
    return Character(big, chi.order, index)


def additive_character(fd, x):
    """psi(x) = exp(2 pi i Tr(x) / p)."""
    return cmath.exp(2j * cmath.pi * trace(fd, x) / fd.p)


def additive_values(fd):
    return np.exp(2j * np.pi * fd.trace_table / fd.p)


def characters_of_order_dividing(fd, m):
    """All chi with chi^m = 1, as Character(fd, m, j) for j in [0, m)."""
    return [Character(fd, m, j) for j in range(m)]


def count_power_roots(fd, m, a):
    """#{x in F_q : x^m = a}, by scanning the field."""
    vals = fd.vpow(np.arange(fd.q), m)
    return int(np.count_nonzero(vals == fd.code_of(a)))


def count_power_roots_formula(fd, m, a):
    """#{x : x^m = a} as sum_{chi^d = 1} chi(a), d = gcd(m, q - 1), exactly."""
    d = math.gcd(m, fd.q - 1)
    total = CyclotomicInt.from_int(d, 0)
    for chi in characters_of_order_dividing(fd, d):
        total = total + evaluate(chi, a)
    return total.to_int()

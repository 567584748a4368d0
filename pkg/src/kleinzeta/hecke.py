"""The weight-one Hecke character of Q(sqrt(-7)) and the three CM newforms
of level 49 whose Euler factors multiply to the Klein quartic numerator.

omega = exp(2 pi i / 3) is CyclotomicInt.zeta(3).  The cubic character mod 7
is fixed by chi7(3) = omega^2.
"""

from __future__ import annotations

import dataclasses
import math

import sympy
from sympy.ntheory import n_order

from . import config
from .characters import Character
from .charsums import jacobi_sum
from .cyclotomic import CyclotomicInt, QuadInt7, expand_product, integer_coefficients
from .finite_field import build_field
from .zeta import NumeratorPoly, klein_jacobi, zeta_klein

_LOG3_MOD7 = {pow(3, k, 7): k for k in range(6)}


def _require_prime(p):
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")


def cornacchia_4p(p):
    """(a, b) with a^2 + 7 b^2 = 4p and a, b > 0, or None if p is inert.

    Exhaustive scan over b <= sqrt(4p/7), smallest b first.
    """
    if p == 7:
        raise ValueError("p = 7 is ramified")
    b = 1
    while 7 * b * b < 4 * p:
        rest = 4 * p - 7 * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            return a, b
        b += 1
    return None


def splits(p):
    return p % 7 in (1, 2, 4)


@dataclasses.dataclass(frozen=True)
class HeckeCharValue:
    p: int
    kind: str  # split, inert or ramified
    value: QuadInt7

    @property
    def is_zero(self):
        return self.value == QuadInt7(0, 0)

    def __str__(self):
        return str(self.value)


def hecke_char(p):
    """Value on a prime above p: 0 at 7, -p if inert, else pi = (a + b sqrt(-7))/2
    normalised by a = 1, 2 or 4 (mod 7) and b > 0."""
    _require_prime(p)
    if p == 7:
        return HeckeCharValue(p, "ramified", QuadInt7(0, 0))
    sol = cornacchia_4p(p)
    if sol is None:
        return HeckeCharValue(p, "inert", QuadInt7.from_int(-p))
    a, b = sol
    if a % 7 not in (1, 2, 4):
        a = -a
    return HeckeCharValue(p, "split", QuadInt7(a, b))


def chi7_exponent(p):
    """e with chi7(p) = omega^e, or None when 7 | p."""
    if p % 7 == 0:
        return None
    return 2 * _LOG3_MOD7[p % 7] % 3


def omega_power(e):
    return CyclotomicInt.zeta(3, e % 3)


def chi7(p):
    e = chi7_exponent(p)
    return CyclotomicInt.from_int(3, 0) if e is None else omega_power(e)


@dataclasses.dataclass(frozen=True)
class EulerFactorTriple:
    """a_p(f_j) and chi_{f_j}(p) for the twists f_0, f_1, f_2."""

    p: int
    a0: int
    chi_exp: int
    a: tuple
    nebentypus: tuple

    def factors(self):
        """[1, -a_p(f_j), chi_{f_j}(p) p] for each j, in Z[omega]."""
        one = CyclotomicInt.from_int(3, 1)
        return [[one, -aj, nj * self.p] for aj, nj in zip(self.a, self.nebentypus)]


def ap_triple(p):
    _require_prime(p)
    if p == 7:
        raise ValueError("p = 7 is excluded")
    h = hecke_char(p)
    a0 = h.value.trace() if h.kind == "split" else 0
    e = chi7_exponent(p)
    a = tuple(omega_power(j * e) * a0 for j in range(3))
    neb = (omega_power(0), omega_power(2 * e), omega_power(e))
    return EulerFactorTriple(p, a0, e, a, neb)


def euler_product(p):
    """prod_j (1 - a_p(f_j) T + chi_{f_j}(p) p T^2) as an integer polynomial."""
    triple = ap_triple(p)
    coeffs = integer_coefficients(expand_product(triple.factors()))
    return NumeratorPoly(p, 3, coeffs)


def verify_theorem1(p):
    """Compare the Euler product with the Klein numerator; returns a report dict."""
    lhs = euler_product(p).coeffs
    rhs = zeta_klein(p).numerator.coeffs
    return {"p": p, "ok": lhs == rhs, "euler_product": list(lhs), "klein_numerator": list(rhs)}


@dataclasses.dataclass(frozen=True)
class JacobiHeckeValue:
    p: int
    r: int
    a_exp: int
    b_exp: int
    value: CyclotomicInt

    def modulus_ok(self):
        """|sigma(value)|^2 = p^r for every embedding, checked exactly."""
        return all(self.value.galois(k) * self.value.galois(k).conj() == self.p**self.r
                   for k in range(1, 7))


def jacobi_hecke(p, a_exp=1, b_exp=2):
    """-J_{p^r}(chi^a, chi^b) for the order-7 residue symbol on F_{p^r}."""
    _require_prime(p)
    if p == 7:
        raise ValueError("p = 7 is excluded")
    r = n_order(p, 7)
    config.check("linear", p**r)
    fd = build_field(p, r)
    chi = Character(fd, 7, 1)
    return JacobiHeckeValue(p, r, a_exp, b_exp, -jacobi_sum(chi**a_exp, chi**b_exp))


def hecke_jacobi_compatible(p):
    """{-J_p(chi, chi^2), conj} == {pi, pi_bar} for p = 1 mod 7."""
    if p % 7 != 1:
        raise ValueError(f"{p} is not 1 mod 7")
    j = -klein_jacobi(build_field(p))
    pi = hecke_char(p).value
    return sorted([(j.a, j.b), (j.a, -j.b)]) == sorted([(pi.a, pi.b), (pi.a, -pi.b)])


def fc3_ap(p):
    """a_p of the elliptic curve X^3 + Y^3 + Z^3 = 0 (p + 1 - N_p)."""
    _require_prime(p)
    if p == 3:
        raise ValueError("p = 3 is excluded")
    if p % 3 == 2:
        return 0
    config.check("linear", p)
    fd = build_field(p)
    chi = Character(fd, 3, 1)
    j = jacobi_sum(chi, chi)
    return -(j + j.conj()).to_int()

"""Zeta numerators of curves over finite fields.

The numerator P(T) = prod (1 - alpha_i T) is kept as an exact integer
coefficient vector.  It can be built from point counts (via power sums and
Newton's identities) or from Jacobi sums, and is checked against the
functional equation and the Riemann hypothesis bound |alpha_i| = sqrt(q).
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import sympy
from sympy.ntheory import n_order

from . import config
from .characters import Character
from .charsums import jacobi_sum
from .curves import CurveModel, chi_minus_one, count, klein_count
from .cyclotomic import CyclotomicInt, expand_product, integer_coefficients, to_quad7
from .errors import NonIntegralError, WeilViolation
from .finite_field import build_field, prime_power

RH_TOL = 1e-9


@dataclasses.dataclass(frozen=True)
class NumeratorPoly:
    """b_0 + b_1 T + ... + b_{2g} T^{2g} with b_0 = 1."""

    q: int
    g: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != 2 * self.g + 1:
            raise ValueError(f"expected {2 * self.g + 1} coefficients, got {len(self.coeffs)}")
        if self.coeffs[0] != 1:
            raise ValueError("constant coefficient must be 1")

    @property
    def degree(self):
        return 2 * self.g

    def functional_equation(self):
        b, g, q = self.coeffs, self.g, self.q
        return all(b[2 * g - k] * q**k == q**g * b[k] for k in range(g + 1))

    def rh_max_residual(self):
        """max | |alpha|/sqrt(q) - 1 | over all inverse roots.

        Each square-free factor is rooted separately after substituting
        T = U / sqrt(q), so the expected roots lie on the unit circle.
        """
        if self.g == 0:
            return 0.0
        t = sympy.Symbol("T")
        poly = sympy.Poly(list(reversed(self.coeffs)), t)
        _, factors = poly.sqf_list()
        scale = math.sqrt(self.q)
        worst = 0.0
        for factor, _mult in factors:
            low_first = [int(c) for c in reversed(factor.all_coeffs())]
            if len(low_first) < 2:
                continue
            scaled = [float(c) / scale**k for k, c in enumerate(low_first)]
            roots = np.roots(scaled[::-1])
            if np.any(roots == 0):
                return math.inf
            worst = max(worst, float(np.max(np.abs(1.0 / np.abs(roots) - 1.0))))
        return worst

    def power_sums(self, k=None):
        """s_r = sum alpha_i^r for r = 1..k (default 2g), exactly."""
        k = self.degree if k is None else k
        e = [(-1) ** i * b for i, b in enumerate(self.coeffs)]
        s = []
        for m in range(1, k + 1):
            # m e_m = sum_{i=1}^{m} (-1)^{i-1} e_{m-i} s_i, solved for s_m
            acc = sum((-1) ** (i - 1) * (e[m - i] if m - i < len(e) else 0) * s[i - 1] for i in range(1, m))
            em = e[m] if m < len(e) else 0
            s.append((-1) ** (m - 1) * (m * em - acc))
        return s

    def counts(self, k=None):
        """N_{q^r} = q^r + 1 - s_r for r = 1..k."""
        return [self.q**r + 1 - s for r, s in enumerate(self.power_sums(k), start=1)]

    def check_weil(self, tol=RH_TOL):
        if not self.functional_equation():
            raise WeilViolation(f"functional equation fails for {list(self.coeffs)} (q = {self.q})")
        res = self.rh_max_residual()
        if not res < tol:
            raise WeilViolation(f"root modulus off by {res:.3g} relative (q = {self.q})")
        return res

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclasses.dataclass(frozen=True)
class ZetaFunction:
    """P(T) / ((1 - T)(1 - qT))."""

    numerator: NumeratorPoly
    curve: str = ""
    route: str = ""

    @property
    def q(self):
        return self.numerator.q

    @property
    def denominator(self):
        return (1, -(self.q + 1), self.q)

    def counts(self, k=None):
        return self.numerator.counts(k)

    def __call__(self, t):
        num = sum(c * t**k for k, c in enumerate(self.numerator.coeffs))
        return num / ((1 - t) * (1 - self.q * t))


def power_sums_from_counts(counts, q, g):
    if len(counts) != 2 * g:
        raise ValueError(f"need exactly {2 * g} counts, got {len(counts)}")
    return [q**r + 1 - n for r, n in enumerate(counts, start=1)]


def numerator_from_power_sums(s, q, g, check=True):
    """Newton's identities in exact integers; b_k = (-1)^k e_k."""
    if len(s) != 2 * g:
        raise ValueError(f"need exactly {2 * g} power sums, got {len(s)}")
    e = [1]
    for k in range(1, 2 * g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        if acc % k:
            raise NonIntegralError(f"e_{k} = {acc}/{k} is not an integer; counts are inconsistent")
        e.append(acc // k)
    poly = NumeratorPoly(q, g, [(-1) ** k * ek for k, ek in enumerate(e)])
    if check:
        poly.check_weil()
    return poly


def numerator_from_counts(counts, q, g, check=True):
    return numerator_from_power_sums(power_sums_from_counts(counts, q, g), q, g, check)


def zeta_from_counts(curve, p, r=1, method="brute"):
    """Numerator over F_{p^r} from counts over F_{p^{rk}}, k = 1..2g."""
    g = curve.genus
    counts = [count(curve, build_field(p, r * k), method).N for k in range(1, 2 * g + 1)]
    return ZetaFunction(numerator_from_counts(counts, p**r, g), curve.name, f"counts-{method}")


def zeta_fermat(fd, n, check=True):
    """prod_{i+j != n} (1 + chi^{i+j}(-1) J(chi^i, chi^j) T), expanded in Z[zeta_n].

    The sign chi^{i+j}(-1) accounts for X^n + Y^n + Z^n = 0 being the twist of
    X^n + Y^n = Z^n by -1; it is 1 unless n is even and (q - 1)/n is odd.
    """
    if (fd.q - 1) % n:
        raise ValueError(f"{n} does not divide q - 1 = {fd.q - 1}")
    config.check("linear", fd.q)
    chi = Character(fd, n, 1)
    sign = chi_minus_one(fd, n)
    cache = {}
    factors = []
    for i in range(1, n):
        for j in range(1, n):
            if i + j == n:
                continue
            key = (min(i, j), max(i, j))
            if key not in cache:
                cache[key] = jacobi_sum(chi**key[0], chi**key[1])
            factors.append([CyclotomicInt.from_int(n, 1), cache[key] * sign ** (i + j)])
    g = (n - 1) * (n - 2) // 2
    coeffs = integer_coefficients(expand_product(factors)) if factors else (1,)
    poly = NumeratorPoly(fd.q, g, coeffs)
    if check:
        poly.check_weil()
    return ZetaFunction(poly, f"fermat:{n}", "jacobi")


def klein_coset_reps(p):
    """Representatives of (Z/7)^x / <p>, smallest first."""
    r = n_order(p, 7)
    seen, reps = set(), []
    for k in range(1, 7):
        if k not in seen:
            reps.append(k)
            seen.update(k * pow(p, j, 7) % 7 for j in range(r))
    return reps


def klein_factors_jacobi(p):
    """[(J_{p^r}(chi^k, chi^{2k}), r)] over coset representatives k."""
    r = n_order(p, 7)
    config.check("linear", p**r)
    fd = build_field(p, r)
    chi = Character(fd, 7, 1)
    base = jacobi_sum(chi, chi**2)
    # J(chi^k, chi^{2k}) is the Galois conjugate sigma_k(J(chi, chi^2))
    return [(base.galois(k), r) for k in klein_coset_reps(p)], r


def _klein_closed_form(p, r):
    if r == 2:
        return integer_coefficients(expand_product([[1, 0, p]] * 3))
    if r == 6:
        return (1, 0, 0, 0, 0, 0, p**3)
    raise ValueError(f"no closed form for residue degree {r}")


def zeta_klein(p, route="auto", check=True):
    """Klein quartic numerator over F_p, p != 7.

    ``route`` is ``jacobi`` (sums over F_{p^r}), ``closed`` (r = 2 or 6 only)
    or ``auto``: Jacobi sums when F_{p^r} fits the linear budget, otherwise
    the closed forms for r in {2, 6}.
    """
    if p == 7:
        raise ValueError("p = 7 is excluded")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    r = n_order(p, 7)
    if route == "auto":
        fits = p**r <= config.BUDGETS.linear
        route = "jacobi" if fits or r in (1, 3) else "closed"
    if route == "closed":
        coeffs = _klein_closed_form(p, r)
    elif route == "jacobi":
        pairs, r = klein_factors_jacobi(p)
        one = CyclotomicInt.from_int(7, 1)
        factors = []
        for j, deg in pairs:
            f = [one] + [0] * (deg - 1) + [j]
            factors.append(f)
        coeffs = integer_coefficients(expand_product(factors))
    else:
        raise ValueError(f"unknown route {route!r}")
    poly = NumeratorPoly(p, 3, coeffs)
    if check:
        poly.check_weil()
    return ZetaFunction(poly, "klein", route)


def klein_closed_form_check(p):
    """All Jacobi sums over F_{p^r} equal p^{r/2} for r in {2, 6}, and the
    resulting numerator equals the closed form."""
    r = n_order(p, 7)
    if r not in (2, 6):
        raise ValueError(f"residue degree of {p} is {r}, not 2 or 6")
    config.check("linear", p**r)
    fd = build_field(p, r)
    chi = Character(fd, 7, 1)
    want = p ** (r // 2)
    sums_ok = all(jacobi_sum(chi**k, chi**(2 * k)) == want for k in range(1, 7))
    coeff_ok = zeta_klein(p, "jacobi", check=False).numerator.coeffs == _klein_closed_form(p, r)
    return sums_ok and coeff_ok


# ---------------------------------------------------------------------------
# congruences for the Klein quartic

def _multinomial_small(n, parts, p):
    """n! / prod k! mod p for n < p."""
    if sum(parts) != n:
        return 0
    num = math.factorial(n) % p
    den = 1
    for k in parts:
        den = den * math.factorial(k) % p
    return num * pow(den, -1, p) % p


def multinomial_mod_p(n, parts, p):
    """Multinomial coefficient mod p by base-p digits (Lucas).

    A carry in any digit position makes the coefficient divisible by p.
    """
    if sum(parts) != n or min(parts) < 0:
        return 0
    out = 1
    parts = list(parts)
    while n:
        digits = [k % p for k in parts]
        term = _multinomial_small(n % p, digits, p)
        if term == 0:
            return 0
        out = out * term % p
        n //= p
        parts = [k // p for k in parts]
    return out


def trinomial_report(fd, n_points=None):
    """N_q(KQ) mod p against 1 - 3 * multinomial(q-1; m, 2m, 4m)."""
    if fd.q % 7 == 0:
        raise ValueError("7 | q is excluded")
    n = klein_count(fd).N if n_points is None else n_points
    if (fd.q - 1) % 7 == 0:
        m = (fd.q - 1) // 7
        multi = multinomial_mod_p(fd.q - 1, (m, 2 * m, 4 * m), fd.p)
        want = (1 - 3 * multi) % fd.p
    else:
        multi = None
        want = 1 % fd.p
    return {"q": fd.q, "N": n, "multinomial_mod_p": multi, "expected_mod_p": want,
            "ok": n % fd.p == want}


def trinomial_congruence_check(fd, n_points=None):
    return trinomial_report(fd, n_points)["ok"]


def klein_jacobi(fd):
    """J_q(chi, chi^2) for the canonical order-7 character, as a QuadInt7."""
    if (fd.q - 1) % 7:
        raise ValueError(f"7 does not divide q - 1 = {fd.q - 1}")
    chi = Character(fd, 7, 1)
    return to_quad7(jacobi_sum(chi, chi**2))


def hudson_williams_check(p):
    """binom(3m, m) = -(J + Jbar) (mod p), m = (p-1)/7."""
    if p % 7 != 1 or not sympy.isprime(p):
        raise ValueError(f"{p} is not a prime = 1 mod 7")
    m = (p - 1) // 7
    lhs = multinomial_mod_p(3 * m, (m, 2 * m), p)
    j = klein_jacobi(build_field(p))
    return lhs == -j.trace() % p


def jacobi_trace_congruence(fd):
    """(J + Jbar = -2 mod 7, and for odd q also u = -1 mod 7 where J = u + v sqrt(-7))."""
    j = klein_jacobi(fd)
    trace_ok = j.trace() % 7 == 5
    if fd.p == 2:
        return trace_ok, None
    u = j.a // 2
    return trace_ok, u % 7 == 6


def q_for_fermat(p, n):
    """Smallest power of p with n | q - 1."""
    if math.gcd(p, n) != 1:
        raise ValueError(f"p = {p} divides n = {n}")
    return p ** n_order(p, n)


def fermat_field(p, n):
    q = q_for_fermat(p, n)
    _, r = prime_power(q)
    return build_field(p, r)


def klein_curve():
    return CurveModel("klein")

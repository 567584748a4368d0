"""Gauss sums (floating point) and Jacobi sums (exact, in Z[zeta_n])."""

from __future__ import annotations

import math

import numpy as np

from . import config, kernels
from .characters import Character, additive_values, lift_character
from .cyclotomic import CyclotomicInt

GAUSS_RELATION_TOL = 1e-6


def _same_field(chars):
    fd = chars[0].field
    for chi in chars[1:]:
        if chi.field != fd:
            raise ValueError("characters live on different fields")
    return fd


def _common_order(chars):
    n = 1
    for chi in chars:
        n = n * chi.order // math.gcd(n, chi.order)
    return n


def gauss_sum(chi):
    """g(chi) = sum_x chi(x) psi(x), numerically."""
    return complex(np.sum(chi.complex_values() * additive_values(chi.field)))


def jacobi_sum(chi1, chi2):
    """J(chi1, chi2) = sum_x chi1(x) chi2(1 - x), exactly."""
    fd = _same_field([chi1, chi2])
    config.check("linear", fd.q)
    n = _common_order([chi1, chi2])
    a = chi1.index * (n // chi1.order) % n
    b = chi2.index * (n // chi2.order) % n
    hist = kernels.jacobi_histogram(fd.log_table, fd.one_minus, a, b, n)
    hist = [int(h) for h in hist]
    # x = 0 and x = 1, where one argument is zero
    hist[0] += int(chi1.is_trivial) + int(chi2.is_trivial)
    return CyclotomicInt.from_exponent_counts(n, hist)


def jacobi_multi(chars):
    """J(chi_1, ..., chi_k) over x_1 + ... + x_k = 1, for k = 2 or 3."""
    chars = list(chars)
    if len(chars) < 2:
        raise ValueError("need at least two characters")
    if len(chars) == 2:
        return jacobi_sum(*chars)
    if len(chars) > 3:
        raise ValueError("Jacobi sums of more than three characters are not supported")
    fd = _same_field(chars)
    config.check("plane", fd.q)
    n = _common_order(chars)
    exps = [chi.index * (n // chi.order) % n for chi in chars]
    hist = kernels.jacobi3_histogram(fd.p, fd.r, fd.log_table, exps, [c.is_trivial for c in chars], n)
    return CyclotomicInt.from_exponent_counts(n, [int(h) for h in hist])


def gauss_jacobi_relation_check(chi1, chi2):
    """Compare J(chi1, chi2) with g(chi1) g(chi2) / g(chi1 chi2).

    Returns ``(ok, residual)``.
    """
    prod = chi1 * chi2
    if prod.is_trivial:
        raise ValueError("chi1 * chi2 is trivial; the Gauss-sum quotient is undefined")
    exact = jacobi_sum(chi1, chi2).embed(1)
    numeric = gauss_sum(chi1) * gauss_sum(chi2) / gauss_sum(prod)
    residual = abs(exact - numeric)
    return residual < GAUSS_RELATION_TOL, residual


def hasse_davenport_check(chi, r):
    """Check the lifting law for chi and its powers over F_{q^r}.

    Exact: -J_{q^r}(chi'^i, chi'^j) == (-J_q(chi^i, chi^j))^r for all nontrivial
    chi^i, chi^j.  Numeric: (-g_q(chi^i))^r == -g_{q^r}(chi'^i) to 1e-6.
    """
    return hasse_davenport_report(chi, r)["ok"]


def hasse_davenport_report(chi, r):
    if r < 1:
        raise ValueError("r must be >= 1")
    fd = chi.field
    config.check("linear", fd.q**r)
    lifted = lift_character(chi, r)
    n = chi.exact_order()
    base = Character(fd, n, chi.index * n // chi.order)
    up = Character(lifted.field, n, lifted.index * n // lifted.order)
    exact_ok = True
    for i in range(1, n):
        for j in range(1, n):
            lhs = -jacobi_sum(up**i, up**j)
            rhs = (-jacobi_sum(base**i, base**j)) ** r
            exact_ok &= lhs == rhs
    gauss_residual = 0.0
    for i in range(0 if n == 1 else 1, n):
        lhs = (-gauss_sum(base**i)) ** r
        rhs = -gauss_sum(up**i)
        gauss_residual = max(gauss_residual, abs(lhs - rhs))
    gauss_ok = n == 1 or gauss_residual < GAUSS_RELATION_TOL
    return {"ok": bool(exact_ok and gauss_ok), "jacobi_exact": bool(exact_ok),
            "gauss_residual": gauss_residual, "q": fd.q, "r": r, "order": n}

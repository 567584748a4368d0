"""Plane curve models and their point counts over finite fields.

Models are homogeneous polynomials given as monomial lists
``(coef, ex, ey, ez)``.  Projective points are enumerated as (x, y, 1), then
(x, 1, 0), then (1, 0, 0), which visits each point exactly once.
"""

from __future__ import annotations

import collections
import dataclasses
import math

import numpy as np

from . import config, kernels
from .characters import Character
from .charsums import jacobi_sum
from .cyclotomic import CyclotomicInt

KLEIN = "klein"
FERMAT = "fermat"
KLEIN_BIRATIONAL = "klein-birational"
FERMAT_AFFINE = "fermat-affine"


@dataclasses.dataclass(frozen=True)
class CurveModel:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag in (FERMAT, FERMAT_AFFINE):
            if self.n is None or self.n < 2:
                raise ValueError(f"{self.tag} needs a degree n >= 2, got {self.n}")
        elif self.tag in (KLEIN, KLEIN_BIRATIONAL):
            if self.n is not None:
                raise ValueError(f"{self.tag} takes no degree")
        else:
            raise ValueError(f"unknown curve tag {self.tag!r}")

    @property
    def name(self):
        return f"{self.tag}:{self.n}" if self.n is not None else self.tag

    def __str__(self):
        return self.name

    @property
    def projective(self):
        return self.tag != FERMAT_AFFINE

    def monomials(self):
        """Terms (coef, ex, ey, ez); coefficients are small integers."""
        if self.tag == KLEIN:
            return [(1, 3, 1, 0), (1, 0, 3, 1), (1, 1, 0, 3)]
        if self.tag == FERMAT:
            n = self.n
            return [(1, n, 0, 0), (1, 0, n, 0), (1, 0, 0, n)]
        if self.tag == KLEIN_BIRATIONAL:
            # closure of y^7 = x^2 (x + 1)
            return [(1, 0, 7, 0), (-1, 3, 0, 4), (-1, 2, 0, 5)]
        n = self.n
        return [(1, n, 0, 0), (1, 0, n, 0), (-1, 0, 0, 0)]

    @property
    def genus(self):
        if self.tag in (KLEIN, KLEIN_BIRATIONAL):
            return 3
        return (self.n - 1) * (self.n - 2) // 2


def parse_curve(text):
    """'klein', 'klein-birational', 'fermat:N' or 'fermat-affine:N'."""
    text = text.strip().lower()
    tag, _, arg = text.partition(":")
    if tag in (KLEIN, KLEIN_BIRATIONAL):
        if arg:
            raise ValueError(f"{tag} takes no degree: {text!r}")
        return CurveModel(tag)
    if tag in (FERMAT, FERMAT_AFFINE):
        try:
            n = int(arg)
        except ValueError:
            raise ValueError(f"expected {tag}:N, got {text!r}") from None
        return CurveModel(tag, n)
    raise ValueError(f"unknown curve {text!r}")


@dataclasses.dataclass(frozen=True)
class CountRecord:
    curve: str
    q: int
    r: int
    N: int
    method: str

    def __post_init__(self):
        if self.method not in ("brute", "formula"):
            raise ValueError(f"unknown method {self.method!r}")
        if not 0 <= self.N <= self.q * self.q + self.q + 1:
            raise ValueError(f"count {self.N} impossible over F_{self.q}")


def _arrays(terms, p):
    coef = np.array([c % p for c, *_ in terms], np.int64)
    exps = np.array([e for _, *e in terms], np.int64).reshape(len(terms), -1)
    return coef, exps


def _eval(fd, terms, points):
    """Evaluate a monomial list at code arrays ``points`` (one per variable)."""
    coef, exps = _arrays(terms, fd.p)
    keep = coef != 0
    clog = fd.log_table.astype(np.int64)[coef[keep]]
    return kernels.eval_monomials_np(fd.p, fd.r, fd.exp_table, fd.log_table, clog, exps[keep], points)


def _affine_zeros(fd, terms):
    """Zeros of sum coef * x^ex * y^ey over F_q^2 (terms without z)."""
    terms = [t for t in terms if t[0] % fd.p]
    coef, exps = _arrays(terms, fd.p)
    return kernels.plane_zero_count(fd.p, fd.r, fd.exp_table, fd.log_table, coef, exps[:, 0], exps[:, 1])


def _infinity_points(curve, fd):
    """Zeros among (x, 1, 0) and (1, 0, 0)."""
    terms = curve.monomials()
    xs = np.arange(fd.q, dtype=np.int64)
    line = _eval(fd, terms, (xs, np.ones(fd.q, np.int64), np.zeros(fd.q, np.int64)))
    corner = _eval(fd, terms, (np.ones(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64)))
    return int(np.count_nonzero(line == 0)) + int(corner[0] == 0)


def count_projective_brute(curve, fd):
    """Exact projective (or, for affine models, affine) count by enumeration."""
    config.check("plane", fd.q)
    affine = _affine_zeros(fd, [(c, ex, ey) for c, ex, ey, _ in curve.monomials()])
    n = affine + _infinity_points(curve, fd) if curve.projective else affine
    return CountRecord(curve.name, fd.q, fd.r, n, "brute")


def count_affine_brute(fd, n):
    """#{x^n + y^n = 1} from the value distribution of x -> x^n, O(q)."""
    config.check("linear", fd.q)
    vals = fd.vpow(np.arange(fd.q), n)
    hist = np.bincount(vals, minlength=fd.q)
    one_minus = fd.one_minus.astype(np.int64)
    total = int(np.dot(hist, hist[one_minus]))
    return CountRecord(f"{FERMAT_AFFINE}:{n}", fd.q, fd.r, total, "brute")


def delta_minus_one(fd, n):
    """(delta, #{x : x^n = -1}) with delta = 1 iff -1 is an n-th power."""
    d = math.gcd(n, fd.q - 1)
    if fd.p == 2:
        delta = 1
    else:
        # log(-1) = (q-1)/2, an n-th power iff gcd(n, q-1) divides it
        delta = int(((fd.q - 1) // 2) % d == 0)
    return delta, d * delta


def _as_int(x):
    if isinstance(x, CyclotomicInt):
        return x.to_int()
    return int(x)


def chi_minus_one(fd, d):
    """chi(-1) = +-1 for a character chi of order d | q - 1 with chi(g) = zeta_d."""
    if fd.p == 2:
        return 1
    return -1 if ((fd.q - 1) // d) % 2 else 1


def fermat_jacobi_total(fd, d, twist=False):
    """sum over i, j in 1..d-1 with i + j != d of J(chi^i, chi^j), as an integer.

    With ``twist`` each term carries chi^{i+j}(-1), which moves the count from
    x^d + y^d = 1 to x^d + y^d = -1.
    """
    if d == 1:
        return 0
    config.check("linear", fd.q)
    chi = Character(fd, d, 1)
    sign = chi_minus_one(fd, d) if twist else 1
    cache = {}
    total = CyclotomicInt.from_int(d, 0)
    for i in range(1, d):
        for j in range(1, d):
            if i + j == d:
                continue
            key = (min(i, j), max(i, j))  # J is symmetric
            if key not in cache:
                cache[key] = jacobi_sum(chi**key[0], chi**key[1])
            total = total + cache[key] * sign ** (i + j)
    return _as_int(total)


def count_affine_fermat_formula(fd, n):
    """q + 1 - delta*d + sum_{i+j != d} J(chi^i, chi^j) with d = gcd(n, q-1)."""
    d = math.gcd(n, fd.q - 1)
    delta, _ = delta_minus_one(fd, d)
    n_points = fd.q + 1 - delta * d + fermat_jacobi_total(fd, d)
    return CountRecord(f"{FERMAT_AFFINE}:{n}", fd.q, fd.r, n_points, "formula")


def count_fermat_formula(fd, n):
    """Projective X^n + Y^n + Z^n = 0.

    The chart z = 1 is x^n + y^n = -1, a twist of the affine Fermat curve that
    only matters when -1 is not an n-th power; x^n = -1 gives the points at infinity.
    """
    d = math.gcd(n, fd.q - 1)
    delta, at_infinity = delta_minus_one(fd, d)
    affine = fd.q + 1 - delta * d + fermat_jacobi_total(fd, d, twist=True)
    return CountRecord(f"{FERMAT}:{n}", fd.q, fd.r, affine + at_infinity, "formula")


def _require_not_ramified(fd):
    if fd.p == 7:
        raise ValueError("characteristic 7 is excluded")


def klein_jacobi_total(fd, swap=False):
    """sum_{i=1}^{6} J(chi^i, chi^{2i}) for chi of order 7, as an integer.

    With ``swap`` the sums are taken as J(chi^{2i}, chi^i), the form that
    comes out of counting y^7 = x^2 (x + 1) fibre by fibre.
    """
    chi = Character(fd, 7, 1)
    total = CyclotomicInt.from_int(7, 0)
    for i in range(1, 7):
        a, b = chi**i, chi**(2 * i)
        total = total + (jacobi_sum(b, a) if swap else jacobi_sum(a, b))
    return total.to_int()


def klein_count_formula(fd):
    """N_q(KQ) = q + 1 + sum_i J(chi^i, chi^{2i}), for 7 | q - 1."""
    _require_not_ramified(fd)
    if (fd.q - 1) % 7:
        raise ValueError(f"7 does not divide q - 1 = {fd.q - 1}")
    config.check("linear", fd.q)
    return CountRecord(KLEIN, fd.q, fd.r, fd.q + 1 + klein_jacobi_total(fd), "formula")


def klein_count_nonsplit(fd):
    """Without 7th roots of unity, x -> x^7 is a bijection and N_q(KQ) = q + 1."""
    _require_not_ramified(fd)
    if (fd.q - 1) % 7 == 0:
        raise ValueError(f"7 divides q - 1 = {fd.q - 1}")
    return CountRecord(KLEIN, fd.q, fd.r, fd.q + 1, "formula")


def klein_count(fd):
    if fd.p != 7 and (fd.q - 1) % 7 == 0:
        return klein_count_formula(fd)
    return klein_count_nonsplit(fd)


def count_birational(fd, method="formula"):
    """Count the closure of y^7 = x^2 (x + 1).

    ``formula`` sums the character values fibre by fibre (needs 7 | q - 1,
    otherwise q + 1); ``brute`` enumerates the projective model.
    """
    _require_not_ramified(fd)
    curve = CurveModel(KLEIN_BIRATIONAL)
    if method == "brute":
        return count_projective_brute(curve, fd)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    if (fd.q - 1) % 7:
        n = fd.q + 1
    else:
        config.check("linear", fd.q)
        n = fd.q + 1 + klein_jacobi_total(fd, swap=True)
    return CountRecord(curve.name, fd.q, fd.r, n, "formula")


def count(curve, fd, method="brute"):
    """Dispatch to the brute or formula count for any model."""
    if method == "brute":
        if curve.tag == FERMAT_AFFINE and config.BUDGETS.plane < fd.q:
            return count_affine_brute(fd, curve.n)
        return count_projective_brute(curve, fd)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    if curve.tag == KLEIN:
        return klein_count(fd)
    if curve.tag == KLEIN_BIRATIONAL:
        return count_birational(fd)
    if curve.tag == FERMAT:
        return count_fermat_formula(fd, curve.n)
    return count_affine_fermat_formula(fd, curve.n)


# ---------------------------------------------------------------------------
# explicit points, the degree-7 cover FC_7 -> KQ and an automorphism

def on_curve(curve, fd, point):
    vals = _eval(fd, curve.monomials(), tuple(np.array([fd.code_of(c)], np.int64) for c in point))
    return int(vals[0]) == 0


def normalize(fd, point):
    """Scale so the last nonzero coordinate is 1."""
    codes = [fd.code_of(c) for c in point]
    last = next((c for c in reversed(codes) if c), 0)
    if not last:
        raise ValueError("(0, 0, 0) is not a projective point")
    inv = fd.inv(last)
    return tuple(fd.mul(c, inv) for c in codes)


def enumerate_projective_points(curve, fd):
    """All points as normalised code triples, in enumeration order."""
    config.check("plane", fd.q)
    if not curve.projective:
        raise ValueError("enumeration is for projective models")
    terms = curve.monomials()
    q = fd.q
    xs = np.arange(q, dtype=np.int64)
    ones = np.ones(q, np.int64)
    zeros = np.zeros(q, np.int64)
    out = []
    for y in range(q):
        vals = _eval(fd, terms, (xs, np.full(q, y, np.int64), ones))
        out.extend((int(x), y, 1) for x in np.flatnonzero(vals == 0))
    vals = _eval(fd, terms, (xs, ones, zeros))
    out.extend((int(x), 1, 0) for x in np.flatnonzero(vals == 0))
    if on_curve(curve, fd, (1, 0, 0)):
        out.append((1, 0, 0))
    return out


def phi_cover(fd, point, check=True):
    """(X, Y, Z) -> (X^3 Z, Y^3 X, Z^3 Y), from FC_7 to KQ, normalised."""
    if check and not on_curve(CurveModel(FERMAT, 7), fd, point):
        raise ValueError(f"{point} is not on X^7 + Y^7 + Z^7 = 0")
    x, y, z = (fd.code_of(c) for c in point)
    image = (fd.mul(fd.pow(x, 3), z), fd.mul(fd.pow(y, 3), x), fd.mul(fd.pow(z, 3), y))
    return normalize(fd, image)


def cover_fibers(fd):
    """Map every FC_7(F_q) point through phi; returns (points, Counter of images)."""
    points = enumerate_projective_points(CurveModel(FERMAT, 7), fd)
    fibers = collections.Counter(phi_cover(fd, pt, check=False) for pt in points)
    return points, fibers


def cover_report(fd):
    """Summary of the cover over F_q as a dict of plain values."""
    points, fibers = cover_fibers(fd)
    klein = CurveModel(KLEIN)
    images_ok = all(on_curve(klein, fd, img) for img in fibers)
    n_klein = count_projective_brute(klein, fd).N
    split = (fd.q - 1) % 7 == 0
    interior = [m for img, m in fibers.items() if all(img)]
    if split:
        fibers_ok = all(m == 7 for m in interior)
        degree_ok = all(m <= 7 for m in fibers.values())
    else:
        fibers_ok = all(m == 1 for m in fibers.values())
        degree_ok = len(points) == n_klein == len(fibers)
    return {
        "q": fd.q,
        "fermat_points": len(points),
        "klein_points": n_klein,
        "images": len(fibers),
        "images_on_klein": images_ok,
        "fiber_sum_ok": sum(fibers.values()) == len(points),
        "fibers_ok": fibers_ok,
        "degree_ok": degree_ok,
        "ok": bool(images_ok and fibers_ok and degree_ok),
    }


def tau(fd, point, weights=(2, 1, 4)):
    """(x, y, z) -> (zeta^a x, zeta^b y, zeta^c z) with zeta of order 7."""
    if (fd.q - 1) % 7:
        raise ValueError(f"F_{fd.q} has no 7th root of unity")
    zeta = fd.gpow((fd.q - 1) // 7)
    return normalize(fd, tuple(fd.mul(fd.pow(zeta, w), fd.code_of(c)) for w, c in zip(weights, point)))


def tau_preserves_klein(fd, weights=(2, 1, 4)):
    klein = CurveModel(KLEIN)
    points = enumerate_projective_points(klein, fd)
    image = {tau(fd, pt, weights) for pt in points}
    return image == set(points)

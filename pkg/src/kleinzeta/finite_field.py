"""Deterministic finite fields F_{p^r} with full discrete-log tables.

Elements are integer codes (see :mod:`kleinzeta.kernels`); :class:`FieldElement`
wraps a code for operator-style use.  The modulus is the lexicographically
smallest monic irreducible polynomial, comparing (c_{r-1}, ..., c_0), and the
generator is the smallest code of multiplicative order q - 1.  Both choices
depend on (p, r) only, so every run sees the same field.
"""

from __future__ import annotations

import functools

import numpy as np
from sympy.ntheory import factorint, isprime

from . import config, kernels


# ---------------------------------------------------------------------------
# polynomials over F_p, lists of coefficients, lowest degree first

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = [c % p for c in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k] * inv_lead % p
        if c:
            for i in range(df + 1):
                a[k - df + i] = (a[k - df + i] - c * f[i]) % p
    return _trim(a[:df] if len(a) > df else a)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f, p):
    """Irreducibility of a monic f over F_p (Rabin's gcd test)."""
    r = len(f) - 1
    if r <= 0:
        return False
    if r == 1:
        return True
    if f[0] % p == 0:
        return False
    h = [0, 1]
    for _ in range(r // 2):
        h = _poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(f, _trim(diff), p)) > 1:
            return False
    return True


def _digits_of(code, p, r):
    out = []
    for _ in range(r):
        out.append(code % p)
        code //= p
    return out


def _smallest_irreducible(p, r):
    if r == 1:
        return [0, 1]
    for t in range(p**r):
        f = _digits_of(t, p, r) + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("an irreducible polynomial of every degree exists")


# ---------------------------------------------------------------------------

class FieldElement:
    """An element of a :class:`FieldDescriptor`, with the usual operators."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = int(code)

    def _other(self, other):
        return self.field.code_of(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(self._other(other))))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.code_of(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.r, self.code))

    def __int__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    def vector(self):
        return tuple(_digits_of(self.code, self.field.p, self.field.r))

    def __repr__(self):
        return f"FieldElement(F_{self.field.q}, {self.field.format(self.code)})"


class FieldDescriptor:
    """F_{p^r} with its modulus, generator and discrete-log tables.

    Immutable after construction; share freely between threads.
    """

    def __init__(self, p, r, modulus, generator, exp_table, log_table):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        self.generator = generator
        exp_table.flags.writeable = False
        log_table.flags.writeable = False
        self.exp_table = exp_table
        self.log_table = log_table

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"FieldDescriptor(p={self.p}, r={self.r}, modulus={self.modulus_str()}, generator={self.format(self.generator)})"

    def modulus_str(self):
        return _format_poly(self.modulus)

    def format(self, code):
        if self.r == 1:
            return str(code)
        return _format_poly(_digits_of(code, self.p, self.r), zero="0")

    # -- elements ----------------------------------------------------------

    def __call__(self, value):
        """Element from a code (int), a coefficient vector, or an element."""
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_vector(value))
        return FieldElement(self, self.code_of(value))

    def code_of(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError(f"element of F_{x.field.q} used in F_{self.q}")
            return x.code
        x = int(x)
        if self.r == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise ValueError(f"code {x} out of range for F_{self.q}")
        return x

    def from_vector(self, coeffs):
        if len(coeffs) != self.r:
            raise ValueError(f"expected {self.r} coefficients, got {len(coeffs)}")
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + int(c) % self.p
        return code

    def to_vector(self, x):
        return tuple(_digits_of(self.code_of(x), self.p, self.r))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return (FieldElement(self, c) for c in range(self.q))

    # -- scalar arithmetic on codes ----------------------------------------

    def add(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        res, mult = 0, 1
        for _ in range(self.r):
            res += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return res

    def neg(self, a):
        if self.r == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        res, mult = 0, 1
        for _ in range(self.r):
            res += (-(a % p) % p) * mult
            a //= p
            mult *= p
        return res

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.r == 1:
            return a * b % self.p
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % (self.q - 1)])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.exp_table[-int(self.log_table[a]) % (self.q - 1)])

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if e == 0 else 0
        return int(self.exp_table[int(self.log_table[a]) * e % (self.q - 1)])

    def log(self, a):
        if a == 0:
            raise ValueError("discrete log of zero")
        return int(self.log_table[a])

    def gpow(self, t):
        return int(self.exp_table[t % (self.q - 1)])

    # -- vectorised arithmetic on code arrays -------------------------------

    def vadd(self, a, b):
        return kernels.add_codes_np(a, b, self.p, self.r)

    def vsub(self, a, b):
        return kernels.sub_codes_np(a, b, self.p, self.r)

    def vmul(self, a, b):
        a = np.asarray(a, np.int64)
        b = np.asarray(b, np.int64)
        lg = self.log_table.astype(np.int64)
        out = self.exp_table[(lg[a] + lg[b]) % (self.q - 1)].astype(np.int64)
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e):
        a = np.asarray(a, np.int64)
        lg = self.log_table.astype(np.int64)
        out = self.exp_table[(lg[a] * e) % (self.q - 1)].astype(np.int64)
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    @functools.cached_property
    def one_minus(self):
        """one_minus[x] = code of 1 - x, for every code x."""
        out = kernels.sub_codes_np(np.ones(self.q, np.int64), np.arange(self.q), self.p, self.r)
        out = out.astype(np.int32)
        out.flags.writeable = False
        return out

    @functools.cached_property
    def trace_table(self):
        """trace_table[x] = Tr(x) for every code x (trace is F_p-linear)."""
        basis = np.array([trace(self, self.p**i) for i in range(self.r)], np.int64)
        out = (kernels.digits(np.arange(self.q), self.p, self.r) @ basis) % self.p
        out.flags.writeable = False
        return out


def _format_poly(coeffs, zero="0"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms) if terms else zero


def _is_primitive(code, p, r, modulus, q):
    if q == 2:
        return code == 1
    n = q - 1
    g = _digits_of(code, p, r)
    for ell in factorint(n):
        if r == 1:
            if pow(code, n // ell, p) == 1:
                return False
        elif _poly_powmod(g, n // ell, list(modulus), p) == [1]:
            return False
    return True


def _construct(p, r):
    if not isinstance(p, int) or not isinstance(r, int):
        raise TypeError("p and r must be integers")
    if p <= 0 or r <= 0:
        raise ValueError(f"need p >= 2 prime and r >= 1, got p={p}, r={r}")
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    q = p**r
    config.check("field", q)
    modulus = _smallest_irreducible(p, r)
    generator = next(c for c in range(1, q) if _is_primitive(c, p, r, modulus, q))
    exp, log, ok = kernels.exp_log_tables(p, r, modulus[:-1], _digits_of(generator, p, r), q)
    assert ok, "generator order check disagrees with the table build"
    return FieldDescriptor(p, r, modulus, generator, exp, log)


@functools.lru_cache(maxsize=24)
def _cached(p, r):
    return _construct(p, r)


def build_field(p, r=1):
    """F_{p^r}, deterministic in (p, r).

    >>> fd = build_field(2, 3)
    >>> fd.modulus, fd.generator
    ((1, 1, 0, 1), 2)
    """
    if isinstance(p, int) and isinstance(r, int) and p > 0 and r > 0 and isprime(p):
        config.check("field", p**r)
        return _cached(p, r)
    return _construct(p, r)


def field_of_order(q):
    """F_q for a prime power q."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = f.items()
    return build_field(int(p), int(r))


def prime_power(q):
    """(p, r) with q = p^r, or ValueError."""
    f = factorint(q) if q >= 2 else {}
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = f.items()
    return int(p), int(r)


def trace(fd, x):
    """Tr_{F_q/F_p}(x) = x + x^p + ... + x^{p^{r-1}}, as a residue mod p."""
    a = fd.code_of(x)
    acc, cur = 0, a
    for _ in range(fd.r):
        acc = fd.add(acc, cur)
        cur = fd.pow(cur, fd.p)
    assert acc < fd.p
    return acc


def norm(fd, x):
    """N_{F_q/F_p}(x) = x^{(q-1)/(p-1)}, as a residue mod p."""
    a = fd.code_of(x)
    if a == 0:
        return 0
    out = fd.pow(a, (fd.q - 1) // (fd.p - 1))
    assert out < fd.p
    return out


def discrete_log(fd, x):
    """t in [0, q-1) with generator^t = x."""
    return fd.log(fd.code_of(x))


def subfield_embedding(small, big):
    """Image in ``big`` of ``small``'s generator under a field embedding.

    The embedding sends x to the first root (in table order) of small's
    modulus inside big.  Requires small.p == big.p and small.r | big.r.
    """
    if small.p != big.p or big.r % small.r:
        raise ValueError(f"F_{small.q} does not embed in F_{big.q}")
    step = (big.q - 1) // (small.q - 1)
    candidates = [0] + [big.gpow(j * step) for j in range(small.q - 1)]

    def evaluate(coeffs, at):
        acc = 0
        for c in reversed(coeffs):
            acc = big.add(big.mul(acc, at), c % big.p)
        return acc

    root = next(c for c in candidates if evaluate(small.modulus, c) == 0)
    return evaluate(_digits_of(small.generator, small.p, small.r), root)

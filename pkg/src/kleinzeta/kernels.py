"""Hot loops, each in a numba flavour and a vectorised numpy flavour.

Field elements are integer codes: the element c_0 + c_1 x + ... + c_{r-1} x^{r-1}
of F_p[x]/(f) has code c_0 + c_1 p + ... + c_{r-1} p^{r-1}.  Code 0 is zero and
code 1 is one; the prime subfield is exactly the codes below p.

Every public function here dispatches on :func:`kleinzeta._accel.backend`.
Both flavours must return identical integers; the test suite checks this.
"""

import numpy as np

from . import _accel
from ._accel import njit, prange


# ---------------------------------------------------------------------------
# digit helpers (numpy)

def digits(codes, p, r):
    """(N,) codes -> (N, r) base-p digit matrix, least significant first."""
    codes = np.asarray(codes, dtype=np.int64)
    pw = p ** np.arange(r, dtype=np.int64)
    return (codes[..., None] // pw) % p


def from_digits(d, p):
    r = d.shape[-1]
    pw = p ** np.arange(r, dtype=np.int64)
    return d @ pw


def add_codes_np(a, b, p, r):
    if r == 1:
        return (np.asarray(a, np.int64) + b) % p
    if p == 2:
        return np.bitwise_xor(np.asarray(a, np.int64), b)
    return from_digits((digits(a, p, r) + digits(b, p, r)) % p, p)


def sub_codes_np(a, b, p, r):
    if r == 1:
        return (np.asarray(a, np.int64) - b) % p
    if p == 2:
        return np.bitwise_xor(np.asarray(a, np.int64), b)
    return from_digits((digits(a, p, r) - digits(b, p, r)) % p, p)


# ---------------------------------------------------------------------------
# digit helpers (numba)

@njit
def _add_codes_nb(a, b, p, r):
    if r == 1:
        return (a + b) % p
    if p == 2:
        return a ^ b
    res = 0
    mult = 1
    for _ in range(r):
        res += ((a % p + b % p) % p) * mult
        a //= p
        b //= p
        mult *= p
    return res


@njit
def _sub_codes_nb(a, b, p, r):
    if r == 1:
        return (a - b) % p
    if p == 2:
        return a ^ b
    res = 0
    mult = 1
    for _ in range(r):
        res += ((a % p - b % p) % p) * mult
        a //= p
        b //= p
        mult *= p
    return res


# ---------------------------------------------------------------------------
# exp / log tables

@njit
def _tables_nb(p, r, low, gen, q):
    n = q - 1
    exp = np.empty(n, np.int32)
    log = np.full(q, -1, np.int32)
    pw = np.empty(r, np.int64)
    pw[0] = 1
    for i in range(1, r):
        pw[i] = pw[i - 1] * p
    cur = np.zeros(r, np.int64)
    cur[0] = 1
    prod = np.zeros(2 * r - 1, np.int64)
    for t in range(n):
        code = 0
        for i in range(r):
            code += cur[i] * pw[i]
        if log[code] != -1:
            return exp, log, False
        exp[t] = code
        log[code] = t
        for k in range(2 * r - 1):
            prod[k] = 0
        for i in range(r):
            ci = cur[i]
            if ci != 0:
                for j in range(r):
                    prod[i + j] += ci * gen[j]
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[k] % p
            if c != 0:
                for i in range(r):
                    prod[k - r + i] -= c * low[i]
            prod[k] = 0
        for i in range(r):
            cur[i] = prod[i] % p
    return exp, log, True


def _polymulmod(a, b, low, p):
    """Multiply two digit lists modulo the monic x^r + sum low[i] x^i."""
    r = len(low)
    prod = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * r - 2, r - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(r):
                prod[k - r + i] -= c * low[i]
    return [c % p for c in prod[:r]]


def _mul_matrix(h, low, p):
    """Matrix of x -> h*x on the power basis; column i is h * x^i."""
    r = len(low)
    x = [0, 1] + [0] * (r - 2)
    cols = []
    basis = [1] + [0] * (r - 1)
    for _ in range(r):
        cols.append(_polymulmod(h, basis, low, p))
        basis = _polymulmod(basis, x, low, p)
    return np.array(cols, dtype=np.int64).T


def _tables_np(p, r, low, gen, q):
    n = q - 1
    exp = np.empty(n, np.int64)
    exp[0] = 1
    low_l = [int(c) for c in low]
    step = [int(c) for c in gen]
    m = 1
    while m < n:
        k = min(m, n - m)
        if r == 1:
            exp[m:m + k] = (exp[:k] * step[0]) % p
        else:
            block = digits(exp[:k], p, r)
            exp[m:m + k] = from_digits((block @ _mul_matrix(step, low_l, p).T) % p, p)
        step = _polymulmod(step, step, low_l, p) if r > 1 else [step[0] * step[0] % p]
        m += k
    log = np.full(q, -1, np.int64)
    log[exp] = np.arange(n)
    ok = bool(np.count_nonzero(log >= 0) == n) and log[0] == -1
    return exp.astype(np.int32), log.astype(np.int32), ok


def exp_log_tables(p, r, low, gen, q):
    """Powers and discrete logs of ``gen`` in F_p[x]/(x^r + low).

    Returns ``(exp, log, ok)``; ``ok`` is False when ``gen`` is not primitive.
    ``log[0]`` is -1.
    """
    low = np.asarray(low, dtype=np.int64)
    gen = np.asarray(gen, dtype=np.int64)
    if _accel.backend() == "numba":
        return _tables_nb(p, r, low, gen, q)
    return _tables_np(p, r, low, gen, q)


# ---------------------------------------------------------------------------
# two-character Jacobi sums

@njit
def _jacobi_hist_nb(log, one_minus, a, b, n):
    hist = np.zeros(n, np.int64)
    q = log.shape[0]
    for x in range(2, q):
        e = (a * np.int64(log[x]) + b * np.int64(log[one_minus[x]])) % n
        hist[e] += 1
    return hist


def _jacobi_hist_np(log, one_minus, a, b, n):
    q = log.shape[0]
    xs = np.arange(2, q)
    e = (a * log[xs].astype(np.int64) + b * log[one_minus[xs]].astype(np.int64)) % n
    return np.bincount(e, minlength=n).astype(np.int64)


def jacobi_histogram(log, one_minus, a, b, n):
    """hist[e] = #{x not in {0, 1} : a log x + b log(1-x) = e mod n}."""
    if _accel.backend() == "numba":
        return _jacobi_hist_nb(log, one_minus, np.int64(a), np.int64(b), np.int64(n))
    return _jacobi_hist_np(log, one_minus, a, b, n)


# ---------------------------------------------------------------------------
# three-character Jacobi sums, O(q^2)

@njit(parallel=True)
def _jacobi3_hist_nb(p, r, log, exps, trivial, n):
    q = log.shape[0]
    rows = np.zeros((q, n), np.int64)
    for x1 in prange(q):
        if x1 == 0 and not trivial[0]:
            continue
        e1 = exps[0] * np.int64(log[x1]) if x1 != 0 else 0
        c = _sub_codes_nb(np.int64(1), np.int64(x1), p, r)
        for x2 in range(q):
            if x2 == 0 and not trivial[1]:
                continue
            x3 = _sub_codes_nb(c, np.int64(x2), p, r)
            if x3 == 0 and not trivial[2]:
                continue
            e = e1
            if x2 != 0:
                e += exps[1] * np.int64(log[x2])
            if x3 != 0:
                e += exps[2] * np.int64(log[x3])
            rows[x1, e % n] += 1
    return rows.sum(axis=0)


def _jacobi3_hist_np(p, r, log, exps, trivial, n):
    q = log.shape[0]
    log = log.astype(np.int64)
    xs = np.arange(q, dtype=np.int64)
    hist = np.zeros(n, np.int64)
    for x1 in range(q):
        if x1 == 0 and not trivial[0]:
            continue
        e1 = exps[0] * log[x1] if x1 else 0
        c = int(sub_codes_np(np.array([1]), np.array([x1]), p, r)[0])
        x3 = sub_codes_np(np.full(q, c), xs, p, r)
        keep = np.ones(q, bool)
        if not trivial[1]:
            keep &= xs != 0
        if not trivial[2]:
            keep &= x3 != 0
        x2k, x3k = xs[keep], x3[keep]
        e = e1 + np.where(x2k != 0, exps[1] * log[x2k], 0) + np.where(x3k != 0, exps[2] * log[x3k], 0)
        hist += np.bincount(e % n, minlength=n)
    return hist


def jacobi3_histogram(p, r, log, exps, trivial, n):
    """Exponent histogram of chi1(x1) chi2(x2) chi3(x3) over x1 + x2 + x3 = 1.

    ``exps`` are the characters' exponents in Z/n and ``trivial`` flags the
    trivial ones (value 1 at zero); nontrivial characters vanish at zero.
    """
    exps = np.asarray(exps, dtype=np.int64)
    trivial = np.asarray(trivial, dtype=np.bool_)
    if _accel.backend() == "numba":
        return _jacobi3_hist_nb(p, r, log, exps, trivial, np.int64(n))
    return _jacobi3_hist_np(p, r, log, exps, trivial, n)


# ---------------------------------------------------------------------------
# zeros of f(x, y, 1) over the affine plane, O(q^2)
#
# f is a list of monomials coef * x^ex * y^ey (z = 1).  Prime fields use power
# tables pw[e, x] = x^e mod p; extension fields go through exp/log and digitwise
# addition.

@njit(parallel=True)
def _plane_prime_nb(p, coef, ex, ey, pw):
    m = coef.shape[0]
    rows = np.zeros(p, np.int64)
    for y in prange(p):
        cy = np.empty(m, np.int64)
        for k in range(m):
            cy[k] = coef[k] * pw[ey[k], y] % p
        cnt = 0
        for x in range(p):
            s = 0
            for k in range(m):
                s += cy[k] * pw[ex[k], x]
            if s % p == 0:
                cnt += 1
        rows[y] = cnt
    return rows.sum()


def _plane_prime_np(p, coef, ex, ey, pw):
    total = 0
    for y in range(p):
        s = np.zeros(p, np.int64)
        for k in range(coef.shape[0]):
            s += (coef[k] * pw[ey[k], y] % p) * pw[ex[k]]
        total += int(np.count_nonzero(s % p == 0))
    return total


@njit(parallel=True)
def _plane_ext_nb(p, r, exp, log, clog, ex, ey):
    q = log.shape[0]
    qm1 = q - 1
    m = clog.shape[0]
    rows = np.zeros(q, np.int64)
    for y in prange(q):
        ly = np.int64(log[y])
        cnt = 0
        for x in range(q):
            lx = np.int64(log[x])
            acc = np.int64(0)
            for k in range(m):
                if (ex[k] > 0 and x == 0) or (ey[k] > 0 and y == 0):
                    continue
                e = clog[k]
                if ex[k] > 0:
                    e += ex[k] * lx
                if ey[k] > 0:
                    e += ey[k] * ly
                acc = _add_codes_nb(acc, np.int64(exp[e % qm1]), p, r)
            if acc == 0:
                cnt += 1
        rows[y] = cnt
    return rows.sum()


def eval_monomials_np(p, r, exp, log, clog, exps, points):
    """Evaluate sum_k c_k * prod_v X_v^{e_kv} at many points (numpy, any field).

    ``exps`` is (m, nv), ``points`` a tuple of nv code arrays of equal length.
    """
    q = log.shape[0]
    qm1 = q - 1
    log = log.astype(np.int64)
    npts = len(points[0])
    acc = np.zeros(npts, np.int64)
    for k in range(len(clog)):
        e = np.full(npts, int(clog[k]), np.int64)
        alive = np.ones(npts, bool)
        for v, pts in enumerate(points):
            d = int(exps[k][v])
            if d > 0:
                pts = np.asarray(pts, np.int64)
                alive &= pts != 0
                e += d * np.where(pts != 0, log[pts], 0)
        term = np.where(alive, exp[e % qm1], 0)
        acc = add_codes_np(acc, term, p, r)
    return acc


def _plane_ext_np(p, r, exp, log, clog, ex, ey):
    q = log.shape[0]
    xs = np.arange(q, dtype=np.int64)
    exps = np.stack([ex, ey], axis=1)
    total = 0
    for y in range(q):
        vals = eval_monomials_np(p, r, exp, log, clog, exps, (xs, np.full(q, y)))
        total += int(np.count_nonzero(vals == 0))
    return total


def power_table(p, max_exp):
    xs = np.arange(p, dtype=np.int64)
    pw = np.empty((max_exp + 1, p), np.int64)
    pw[0] = 1
    for e in range(1, max_exp + 1):
        pw[e] = pw[e - 1] * xs % p
    return pw


def plane_zero_count(p, r, exp, log, coef, ex, ey):
    """#{(x, y) in F_q^2 : sum_k coef_k x^ex_k y^ey_k = 0}.

    ``coef`` holds prime-field residues, all nonzero.
    """
    coef = np.asarray(coef, np.int64) % p
    ex = np.asarray(ex, np.int64)
    ey = np.asarray(ey, np.int64)
    use_nb = _accel.backend() == "numba"
    if r == 1:
        pw = power_table(p, int(max(ex.max(), ey.max())))
        if use_nb:
            return int(_plane_prime_nb(np.int64(p), coef, ex, ey, pw))
        return _plane_prime_np(p, coef, ex, ey, pw)
    # coefficients live in the prime subfield, whose codes are the residues
    clog = np.asarray(log, np.int64)[coef]
    if use_nb:
        return int(_plane_ext_nb(np.int64(p), np.int64(r), exp, log, clog, ex, ey))
    return _plane_ext_np(p, r, exp, log, clog, ex, ey)

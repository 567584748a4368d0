import numpy as np
import pytest
from sympy import primitive_root
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem
from sympy.polys.domains import ZZ

from kleinzeta import config
from kleinzeta.errors import BudgetExceeded
from kleinzeta.finite_field import (FieldElement, build_field, discrete_log, field_of_order,
                                    is_irreducible, norm, prime_power, subfield_embedding, trace)


def _hi_first(code, p, r):
    digits = []
    for _ in range(r):
        digits.append(code % p)
        code //= p
    return [ZZ(c) for c in reversed(digits)]


def _oracle_mul(fd, a, b):
    """Multiply codes with sympy's dense GF(p)[x] arithmetic."""
    mod = [ZZ(c) for c in reversed(fd.modulus)]
    prod = gf_rem(gf_mul(_hi_first(a, fd.p, fd.r), _hi_first(b, fd.p, fd.r), fd.p, ZZ), mod, fd.p, ZZ)
    code = 0
    for c in prod:
        code = code * fd.p + int(c)
    return code


def test_f8_tables():
    fd = build_field(2, 3)
    assert fd.modulus == (1, 1, 0, 1)
    assert fd.generator == 2
    assert list(fd.exp_table) == [1, 2, 4, 3, 6, 7, 5]
    assert fd.log_table[0] == -1


def test_prime_field_generator_is_smallest_primitive_root():
    for p in [3, 5, 7, 11, 13, 29, 41, 4093]:
        assert build_field(p).generator == primitive_root(p)


def test_f9():
    fd = build_field(3, 2)
    assert fd.modulus == (1, 0, 1)  # x^2 + 1
    assert fd.generator == 1 + 3   # x + 1
    assert norm(fd, fd.generator) == 2


@pytest.mark.parametrize("p,r", [(2, 2), (2, 5), (3, 3), (5, 2), (7, 2), (2, 8)])
def test_modulus_is_smallest_irreducible(p, r):
    fd = build_field(p, r)
    hi = [ZZ(c) for c in reversed(fd.modulus)]
    assert gf_irreducible_p(hi, p, ZZ)
    # no smaller monic polynomial of degree r is irreducible
    target = sum(c * p**i for i, c in enumerate(fd.modulus[:-1]))
    for code in range(target):
        cand = _hi_first(code, p, r)
        assert not gf_irreducible_p([ZZ(1)] + cand, p, ZZ)


@pytest.mark.parametrize("p,r", [(2, 4), (3, 2), (3, 3), (5, 2), (2, 6)])
def test_multiplication_matches_polynomial_oracle(p, r):
    fd = build_field(p, r)
    rng = np.random.default_rng(p * 100 + r)
    for a, b in rng.integers(0, fd.q, size=(200, 2)):
        assert fd.mul(int(a), int(b)) == _oracle_mul(fd, int(a), int(b))


@pytest.mark.parametrize("p,r", [(2, 3), (3, 4), (13, 2), (5, 3)])
def test_field_axioms(p, r):
    fd = build_field(p, r)
    xs = list(fd.elements())
    one = fd.one
    for x in xs[:40]:
        assert x + (-x) == fd.zero
        if x:
            assert x * (one / x) == one
            assert x ** (fd.q - 1) == one
        assert x - x == fd.zero


def test_generator_has_full_order():
    for q in [4, 8, 9, 25, 27, 49, 64, 121, 128, 243]:
        fd = field_of_order(q)
        assert len(set(fd.exp_table.tolist())) == q - 1
        assert sorted(fd.exp_table.tolist()) == list(range(1, q))


def test_trace_and_norm_examples():
    f8 = build_field(2, 3)
    assert trace(f8, 1) == 1  # r * 1 mod 2
    assert norm(f8, f8.generator) == 1
    f9 = build_field(3, 2)
    assert trace(f9, 1) == 2
    # the trace is onto F_p and each value has q/p preimages
    for fd in (f8, f9, build_field(5, 2)):
        counts = np.bincount(fd.trace_table, minlength=fd.p)
        assert set(counts.tolist()) == {fd.q // fd.p}


def test_norm_is_multiplicative():
    fd = build_field(3, 3)
    for a in range(1, fd.q, 5):
        for b in range(1, fd.q, 7):
            assert norm(fd, fd.mul(a, b)) == norm(fd, a) * norm(fd, b) % fd.p


def test_discrete_log_round_trip():
    fd = build_field(5, 3)
    for t in range(0, fd.q - 1, 11):
        assert discrete_log(fd, fd.gpow(t)) == t
    with pytest.raises(ValueError):
        discrete_log(fd, 0)


def test_subfield_embedding_is_a_root_of_small_modulus():
    small, big = build_field(2, 2), build_field(2, 6)
    g = subfield_embedding(small, big)
    assert big.pow(g, small.q - 1) == 1
    assert big.log(g) % ((big.q - 1) // (small.q - 1)) == 0
    with pytest.raises(ValueError):
        subfield_embedding(build_field(2, 2), build_field(2, 3))


def test_field_element_interface():
    fd = build_field(3, 2)
    x = fd([0, 1])
    assert x.vector() == (0, 1)
    assert x * x == fd.from_vector([2, 0])  # x^2 = -1
    assert x == 3
    with pytest.raises(ValueError):
        fd.code_of(9)
    with pytest.raises(ValueError):
        fd.code_of(FieldElement(build_field(3), 1))


def test_bad_inputs():
    with pytest.raises(ValueError):
        build_field(4, 1)
    with pytest.raises(ValueError):
        field_of_order(12)
    with pytest.raises(ValueError):
        prime_power(1)
    assert prime_power(3125) == (5, 5)
    assert is_irreducible([1, 1, 0, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)


def test_field_budget():
    with pytest.raises(BudgetExceeded):
        build_field(2, 25)
    with config.budgets(field=2**10):
        with pytest.raises(BudgetExceeded):
            build_field(2, 11)


def test_tables_agree_across_backends(backend):
    from kleinzeta.finite_field import _construct
    for p, r in [(2, 7), (3, 5), (7, 3), (101, 2), (4093, 1)]:
        fd = _construct(p, r)
        ref = build_field(p, r)
        assert np.array_equal(fd.exp_table, ref.exp_table)
        assert np.array_equal(fd.log_table, ref.log_table)

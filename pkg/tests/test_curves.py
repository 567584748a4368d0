import itertools

import pytest

from kleinzeta import config
from kleinzeta.curves import (CountRecord, CurveModel, count, count_affine_brute,
                              count_affine_fermat_formula, count_birational, count_fermat_formula,
                              count_projective_brute, cover_report, delta_minus_one,
                              enumerate_projective_points, klein_count, klein_count_formula,
                              klein_count_nonsplit, normalize, on_curve, parse_curve, phi_cover,
                              tau, tau_preserves_klein)
from kleinzeta.errors import BudgetExceeded
from kleinzeta.finite_field import build_field, field_of_order


def _naive_prime(p, terms):
    """Projective count over F_p: nonzero zeros / (p - 1), plain integers."""
    zeros = 0
    for x, y, z in itertools.product(range(p), repeat=3):
        if (x, y, z) == (0, 0, 0):
            continue
        if sum(c * x**a * y**b * z**e for c, a, b, e in terms) % p == 0:
            zeros += 1
    return zeros // (p - 1)


def _naive_field(fd, terms):
    """Same count over any F_q with the field's scalar operations."""
    zeros = 0
    for pt in itertools.product(range(fd.q), repeat=3):
        if pt == (0, 0, 0):
            continue
        acc = 0
        for c, *ex in terms:
            mono = fd.code_of(c % fd.p)
            for v, e in zip(pt, ex):
                mono = fd.mul(mono, fd.pow(v, e))
            acc = fd.add(acc, mono)
        zeros += acc == 0
    return zeros // (fd.q - 1)


KLEIN = CurveModel("klein")


@pytest.mark.parametrize("p", [2, 3, 5, 11, 13, 29])
def test_klein_brute_matches_naive(p):
    fd = build_field(p)
    assert count_projective_brute(KLEIN, fd).N == _naive_prime(p, KLEIN.monomials())


@pytest.mark.parametrize("q", [4, 8, 9])
def test_klein_brute_matches_naive_extension(q):
    fd = field_of_order(q)
    assert count_projective_brute(KLEIN, fd).N == _naive_field(fd, KLEIN.monomials())


@pytest.mark.parametrize("p,n", [(7, 3), (13, 3), (13, 4), (29, 7), (11, 5)])
def test_fermat_brute_matches_naive(p, n):
    curve = CurveModel("fermat", n)
    assert count_projective_brute(curve, build_field(p)).N == _naive_prime(p, curve.monomials())


def test_known_klein_counts():
    want = {2: 3, 3: 4, 4: 5, 8: 24, 29: 24, 43: 80, 64: 38, 113: 108}
    for q, n in want.items():
        fd = field_of_order(q)
        assert count(KLEIN, fd, "brute").N == n
        assert count(KLEIN, fd, "formula").N == n


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 11, 16, 27, 29, 32, 43, 64, 71, 127, 169, 256])
def test_formula_routes_agree(q):
    fd = field_of_order(q)
    n = count_projective_brute(KLEIN, fd).N
    assert klein_count(fd).N == n
    assert count_birational(fd, "formula").N == n
    assert count_birational(fd, "brute").N == n


def test_split_and_nonsplit_guards():
    with pytest.raises(ValueError):
        klein_count_formula(build_field(13))
    with pytest.raises(ValueError):
        klein_count_nonsplit(build_field(29))
    with pytest.raises(ValueError):
        klein_count(build_field(7))


def test_fermat_small_values():
    assert count_fermat_formula(build_field(7), 3).N == 9
    assert count_fermat_formula(build_field(2), 7).N == 3
    assert count_affine_fermat_formula(build_field(7), 3).N == 6
    assert count_affine_fermat_formula(build_field(5), 7).N == 5
    assert count_affine_fermat_formula(field_of_order(8), 7).N == 14


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 13, 16, 25, 29, 31, 37, 49, 64])
def test_affine_fermat_formula_vs_brute(q):
    fd = field_of_order(q)
    for n in range(2, 10):
        want = sum(1 for x in range(q) for y in range(q)
                   if fd.add(fd.pow(x, n), fd.pow(y, n)) == 1)
        assert count_affine_brute(fd, n).N == want
        assert count_affine_fermat_formula(fd, n).N == want
        assert count(CurveModel("fermat-affine", n), fd, "brute").N == want
        proj = count_projective_brute(CurveModel("fermat", n), fd).N
        assert count_fermat_formula(fd, n).N == proj


def test_delta():
    assert delta_minus_one(build_field(17), 4) == (1, 4)   # -1 = 2^4 is a 4th power mod 17
    assert delta_minus_one(build_field(13), 4) == (0, 0)
    assert delta_minus_one(build_field(7), 2) == (0, 0)    # -1 not a square mod 7
    assert delta_minus_one(field_of_order(8), 7) == (1, 7)


def test_affine_brute_large_q_uses_linear_scan():
    fd = field_of_order(2**13)
    with config.budgets(plane=64):
        rec = count(CurveModel("fermat-affine", 3), fd, "brute")
    assert rec.N == count_affine_fermat_formula(fd, 3).N


def test_plane_budget():
    with pytest.raises(BudgetExceeded):
        count_projective_brute(KLEIN, build_field(4099))
    with config.budgets(plane=64):
        with pytest.raises(BudgetExceeded):
            count_projective_brute(KLEIN, build_field(67))


def test_parse_curve():
    assert parse_curve("klein") == KLEIN
    assert parse_curve("Fermat:7") == CurveModel("fermat", 7)
    assert parse_curve("fermat-affine:3").projective is False
    assert parse_curve("fermat:7").genus == 15
    assert KLEIN.genus == 3
    for bad in ["klein:3", "fermat", "fermat:1", "fermat:x", "hyperbola"]:
        with pytest.raises(ValueError):
            parse_curve(bad)


def test_count_record_validation():
    with pytest.raises(ValueError):
        CountRecord("klein", 2, 1, 8, "brute")
    with pytest.raises(ValueError):
        CountRecord("klein", 2, 1, 3, "guess")


def test_enumeration_and_normalization():
    fd = field_of_order(8)
    pts = enumerate_projective_points(KLEIN, fd)
    assert len(pts) == 24 == len(set(pts))
    assert all(on_curve(KLEIN, fd, pt) for pt in pts)
    assert all(normalize(fd, pt) == pt for pt in pts)
    assert (1, 0, 0) in pts and (0, 1, 0) in pts and (0, 0, 1) in pts
    with pytest.raises(ValueError):
        normalize(fd, (0, 0, 0))


def test_phi_cover_points():
    fd = build_field(29)
    assert phi_cover(fd, (1, 28, 0)) == (0, 1, 0)
    with pytest.raises(ValueError):
        phi_cover(fd, (1, 1, 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 11, 13, 16, 29, 43, 64])
def test_cover_report(q):
    rep = cover_report(field_of_order(q))
    assert rep["ok"] and rep["images_on_klein"] and rep["fiber_sum_ok"]


def test_cover_is_onto_when_unsplit():
    rep = cover_report(build_field(3))
    assert rep["fermat_points"] == rep["klein_points"] == rep["images"] == 4


@pytest.mark.parametrize("q", [8, 29, 43, 64])
def test_tau(q):
    fd = field_of_order(q)
    assert tau_preserves_klein(fd)
    # weights (1, 1, 1) are a projective identity; (1, 2, 4) is not an automorphism
    pts = enumerate_projective_points(KLEIN, fd)
    assert all(tau(fd, pt, (1, 1, 1)) == pt for pt in pts)
    assert not tau_preserves_klein(fd, (1, 2, 4))
    with pytest.raises(ValueError):
        tau(build_field(13), (1, 0, 0))


def test_brute_count_backends_agree(backend):
    for q in (29, 64, 127):
        fd = field_of_order(q)
        assert count_projective_brute(KLEIN, fd).N == klein_count(fd).N

"""Univariate machinery: division, gcd, exact roots, Sturm counting, boxes.

sympy serves as the oracle for gcds, real-root counts, and root values;
the package code never imports it.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from hypothesis import given, settings
from hypothesis import strategies as st

from waringlab.scalars import ONE, ZERO, Scalar
from waringlab.univariate import (_FILTER_PRIME, BoxScalar, Interval,
                                  _eval_mod, _mod_pair, _round_out,
                                  all_roots_real, as_real_poly, cauchy_bound,
                                  certified_root_boxes, count_real_roots,
                                  fraction_sqrt, gaussian_sqrt,
                                  interval_solve, is_squarefree,
                                  isolate_real_roots, poly_divmod, poly_eval,
                                  poly_gcd, poly_mul, poly_monic,
                                  refine_real_root, roots_over_gaussians,
                                  solve_quadratic, squarefree_part,
                                  sturm_sequence)

T = sympy.symbols("t")


def to_sympy_poly(p):
    expr = sum((sympy.Rational(c.re) + sympy.I * sympy.Rational(c.im))
               * T ** k for k, c in enumerate(p))
    return sympy.Poly(expr, T, domain="QQ_I")


def rand_poly(rng, deg, lo=-4, hi=4):
    coeffs = [Scalar.of(rng.randint(lo, hi)) for _ in range(deg)]
    coeffs.append(Scalar.of(rng.choice([1, 2, -1, 3])))
    return coeffs


def test_poly_divmod_reconstructs():
    rng = random.Random(5)
    for _ in range(40):
        a = rand_poly(rng, rng.randint(0, 6))
        b = rand_poly(rng, rng.randint(0, 3))
        q, r = poly_divmod(a, b)
        back = poly_mul(q, b)
        total = [ZERO] * max(len(back), len(r), len(a))
        for i, c in enumerate(back):
            total[i] = total[i] + c
        for i, c in enumerate(r):
            total[i] = total[i] + c
        for i, c in enumerate(a):
            assert total[i] == c
        assert len(r) < len(b) or all(c.is_zero for c in r)


def test_poly_gcd_matches_sympy():
    rng = random.Random(9)
    for _ in range(30):
        a = rand_poly(rng, rng.randint(1, 4))
        b = rand_poly(rng, rng.randint(1, 4))
        ours = to_sympy_poly(poly_gcd(a, b))
        theirs = to_sympy_poly(a).gcd(to_sympy_poly(b)).monic()
        assert ours == theirs


def test_gcd_picks_up_common_factors():
    # (t-1)(t-2) and (t-1)(t+5) share exactly t-1
    a = poly_mul([Scalar.of(-1), ONE], [Scalar.of(-2), ONE])
    b = poly_mul([Scalar.of(-1), ONE], [Scalar.of(5), ONE])
    assert poly_gcd(a, b) == [Scalar.of(-1), ONE]


def test_is_squarefree_matches_sympy():
    rng = random.Random(13)
    for trial in range(40):
        p = rand_poly(rng, rng.randint(1, 4))
        if trial % 3 == 0:
            p = poly_mul(p, p)  # force a square
        sp = to_sympy_poly(p)
        expected = all(m == 1 for _, m in sp.factor_list()[1])
        assert is_squarefree(p) == expected


def test_squarefree_part_strips_multiplicity():
    p = poly_mul([ONE, ONE], poly_mul([ONE, ONE], [Scalar.of(-2), ONE]))
    sf = squarefree_part(p)
    assert is_squarefree(sf)
    assert to_sympy_poly(sf) == to_sympy_poly(
        poly_monic(poly_mul([ONE, ONE], [Scalar.of(-2), ONE])))


def test_fraction_sqrt():
    assert fraction_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert fraction_sqrt(Fraction(2)) is None
    assert fraction_sqrt(Fraction(0)) == 0


def test_gaussian_sqrt_roundtrip():
    rng = random.Random(17)
    for _ in range(40):
        z = Scalar.of(Fraction(rng.randint(-5, 5), rng.choice((1, 2))),
                      Fraction(rng.randint(-5, 5), rng.choice((1, 2))))
        w = gaussian_sqrt(z * z)
        assert w is not None and w * w == z * z
    assert gaussian_sqrt(Scalar.of(2)) is None
    assert gaussian_sqrt(Scalar.of(0, 1)) is None


def test_solve_quadratic_exact_cases():
    # t^2 - 5t + 6 = (t-2)(t-3)
    roots = solve_quadratic(ONE, Scalar.of(-5), Scalar.of(6))
    assert roots is not None and set(roots) == {Scalar.of(2), Scalar.of(3)}
    # t^2 + 1 over the Gaussian rationals
    roots = solve_quadratic(ONE, ZERO, ONE)
    assert roots is not None
    assert set(roots) == {Scalar.of(0, 1), Scalar.of(0, -1)}
    # t^2 - 2 has no rational (or Gaussian rational) roots
    assert solve_quadratic(ONE, ZERO, Scalar.of(-2)) is None


def test_roots_over_gaussians_matches_sympy():
    rng = random.Random(21)
    hits = 0
    for _ in range(40):
        root_vals = [Scalar.of(rng.randint(-3, 3),
                               rng.randint(-1, 1) if rng.random() < 0.4
                               else 0)
                     for _ in range(rng.randint(1, 3))]
        if len(set(root_vals)) != len(root_vals):
            continue
        p = [ONE]
        for v in root_vals:
            p = poly_mul(p, [-v, ONE])
        got = roots_over_gaussians(p)
        assert got is not None
        assert sorted(got, key=lambda s: s.sort_key()) == sorted(
            root_vals, key=lambda s: s.sort_key())
        hits += 1
    assert hits >= 25


def test_roots_over_gaussians_refuses_irrational():
    # t^2 - 2: roots exist over R but not over Q(i)
    assert roots_over_gaussians([Scalar.of(-2), ZERO, ONE]) is None


def test_count_real_roots_matches_sympy():
    rng = random.Random(29)
    for _ in range(30):
        p = rand_poly(rng, rng.randint(1, 5))
        sf = squarefree_part(p)
        ours = count_real_roots(as_real_poly(sf))
        theirs = sympy.Poly([c.re for c in reversed(sf)], T).count_roots()
        assert ours == theirs


def test_all_roots_real():
    # (t-1)(t+2)(t-1/2) versus t^2+1 times a real root
    p = poly_mul(poly_mul([Scalar.of(-1), ONE], [Scalar.of(2), ONE]),
                 [Scalar.of(Fraction(-1, 2)), ONE])
    assert all_roots_real(p)
    q = poly_mul([ONE, ZERO, ONE], [Scalar.of(-1), ONE])
    assert not all_roots_real(q)


def test_sturm_sequence_signs_and_bound():
    p = as_real_poly([Scalar.of(-2), ZERO, ONE])  # t^2 - 2
    seq = sturm_sequence(p)
    assert len(seq) >= 2
    bound = cauchy_bound(p)
    assert bound >= 2  # both roots inside [-bound, bound]
    assert count_real_roots(p, -bound, bound) == 2


def test_isolate_and_refine_real_roots():
    # roots at -1, 1/3, 2
    p = poly_mul(poly_mul([ONE, ONE], [Scalar.of(Fraction(-1, 3)), ONE]),
                 [Scalar.of(-2), ONE])
    rp = as_real_poly(p)
    raw = isolate_real_roots(rp)
    assert len(raw) == 3
    expected = [Fraction(-1), Fraction(1, 3), Fraction(2)]
    for (lo, hi), want in zip(sorted(raw), sorted(expected)):
        lo2, hi2 = refine_real_root(rp, lo, hi, Fraction(1, 10 ** 12))
        assert lo2 <= want <= hi2
        assert hi2 - lo2 < Fraction(1, 10 ** 12)


def test_certified_root_boxes_cover_all_roots():
    # squarefree with two real and two complex roots: (t^2+1)(t-1)(t+3)
    p = poly_mul([ONE, ZERO, ONE],
                 poly_mul([Scalar.of(-1), ONE], [Scalar.of(3), ONE]))
    radius = Fraction(1, 10 ** 20)
    boxes = certified_root_boxes(p, radius)
    assert len(boxes) == 4
    targets = [Scalar.of(1), Scalar.of(-3), Scalar.of(0, 1),
               Scalar.of(0, -1)]
    for t in targets:
        hits = [b for b in boxes
                if (b.center - t).norm() <= radius * radius]
        assert len(hits) == 1


def test_certified_root_boxes_reject_non_squarefree():
    p = poly_mul([ONE, ONE], [ONE, ONE])
    with pytest.raises(ValueError):
        certified_root_boxes(p, Fraction(1, 10 ** 10))


def test_interval_solve_small_system():
    a = BoxScalar.exact(Scalar.of(2))
    b = BoxScalar.exact(Scalar.of(1))
    c = BoxScalar.exact(Scalar.of(1))
    d = BoxScalar.exact(Scalar.of(1))
    # [[2,1],[1,1]] x = [3, 2] has solution [1, 1]
    sol = interval_solve([[a, b], [c, d]],
                         [BoxScalar.exact(Scalar.of(3)),
                          BoxScalar.exact(Scalar.of(2))])
    assert sol is not None
    for box in sol:
        assert box.re.contains(Fraction(1))
        assert box.im.contains(Fraction(0))


def test_poly_eval_horner():
    p = [Scalar.of(1), Scalar.of(-2), Scalar.of(3)]  # 3t^2 - 2t + 1
    assert poly_eval(p, Scalar.of(2)) == Scalar.of(9)


fracs = st.fractions(min_value=-50, max_value=50, max_denominator=10 ** 12)
radii = st.fractions(min_value=0, max_value=2, max_denominator=10 ** 6)


@given(fracs, fracs)
@settings(max_examples=80, deadline=None)
def test_round_out_is_outward_and_tight(a, b):
    lo, hi = (a, b) if a <= b else (b, a)
    box = _round_out(lo, hi)
    assert box.lo <= lo <= hi <= box.hi
    if lo == hi:
        assert (box.lo, box.hi) == (lo, hi)
    else:
        # growth stays far below the sixty-four guard bits
        assert box.hi - box.lo <= (hi - lo) * (1 + Fraction(1, 2 ** 62))


@given(fracs, fracs, radii, radii)
@settings(max_examples=60, deadline=None)
def test_interval_ops_contain_exact_values(x, y, rx, ry):
    ix = Interval(x - rx, x + rx)
    iy = Interval(y - ry, y + ry)
    s = ix + iy
    assert s.lo <= x + y <= s.hi
    d = ix - iy
    assert d.lo <= x - y <= d.hi
    p = ix * iy
    assert p.lo <= x * y <= p.hi
    if ix.lo > 0 or ix.hi < 0:
        r = ix.recip()
        assert r.lo <= Fraction(1) / x <= r.hi


def test_interval_chain_keeps_denominators_bounded():
    # z -> z^2 + c stays near a fixed point for c close to -1/3; without
    # outward rounding the exact denominators square at every step
    c = Interval(Fraction(-1, 3) - Fraction(1, 10 ** 9),
                 Fraction(-1, 3) + Fraction(1, 10 ** 9))
    z = c
    for _ in range(25):
        z = z * z + c
    # orbit settles near the attracting fixed point (1 - sqrt(7/3))/2
    assert Fraction(-1, 2) < z.lo <= z.hi < Fraction(-1, 5)
    assert z.lo.denominator.bit_length() < 4000
    assert z.hi.denominator.bit_length() < 4000


def test_modular_filter_never_discards_true_roots():
    rng = random.Random(5)
    p = _FILTER_PRIME
    agree = 0
    for _ in range(200):
        deg = rng.randint(1, 6)
        coeffs = [Scalar.of(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                            Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                  for _ in range(deg + 1)]
        cand = Scalar.of(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                         Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        pairs = [_mod_pair(z, p) for z in coeffs]
        cm = _mod_pair(cand, p)
        if cm is None or any(q is None for q in pairs):
            continue
        if poly_eval(coeffs, cand).is_zero:
            assert _eval_mod(pairs, cm, p)
        agree += 1
    assert agree > 150

    # (t - w)(t - 1): both roots survive the filter
    w = Scalar.of(Fraction(3, 7), Fraction(-2, 5))
    quad = [w, -(ONE + w), ONE]
    pairs = [_mod_pair(z, p) for z in quad]
    assert _eval_mod(pairs, _mod_pair(w, p), p)
    assert _eval_mod(pairs, _mod_pair(ONE, p), p)
    assert not _eval_mod(pairs, _mod_pair(Scalar.of(17), p), p)

"""Span machinery: Veronese rows, h1, curve power bases, restrictions.

The h1 oracle recomputes the span dimension in sympy straight from the
monomial values of the canonical point coordinates, so the package rank
code never checks itself.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
import sympy

from waringlab.binary import complex_rank, power_point
from waringlab.forms import HomogeneousForm, monomial_exponents
from waringlab.points import (LINE, CurveSpec, PointSet, ProjectivePoint)
from waringlab.scalars import ONE, ZERO, Scalar
from waringlab.spans import (Conclusion, HypothesisFails, NotUnique,
                             VeroneseSpace, catalecticant_rank,
                             conic_power_basis, curve_meet_point,
                             curve_power_basis, embed_on_conic,
                             embed_on_line, h1_ideal, line_power_basis,
                             membership, off_curve_agreement,
                             pair_power_basis, parametrize_conic, power_row,
                             restrict_to_conic, restrict_to_line,
                             spans_disjoint, unique_intersection_point)


def P(*vals) -> ProjectivePoint:
    return ProjectivePoint.of(*vals)


def pow_form(p: ProjectivePoint, d: int) -> HomogeneousForm:
    return HomogeneousForm.from_coeff_vector(p.m + 1, d,
                                             list(power_row(p, d)))


def pow_sum(pts, coeffs, d: int) -> HomogeneousForm:
    n = pts[0].m + 1
    acc = [ZERO] * len(power_row(pts[0], d))
    for p, c in zip(pts, coeffs):
        for k, v in enumerate(power_row(p, d)):
            acc[k] = acc[k] + Scalar.of(c) * v
    return HomogeneousForm.from_coeff_vector(n, d, acc)


def to_sym(z: Scalar):
    return sympy.Rational(z.re) + sympy.I * sympy.Rational(z.im)


def oracle_h1(pts, d: int) -> int:
    rows = []
    for p in pts:
        row = []
        for exp in monomial_exponents(p.m + 1, d):
            val = sympy.Integer(1)
            for c, e in zip(p.coords, exp):
                val *= to_sym(c) ** e
            row.append(val)
        rows.append(row)
    span_dim = sympy.Matrix(rows).rank() - 1
    return len(pts) - 1 - span_dim


def test_power_row_matches_sympy_expansion():
    rng = random.Random(81)
    xs = sympy.symbols("x0 x1 x2")
    for _ in range(8):
        p = ProjectivePoint.of(*(rng.randint(-3, 3) for _ in range(2)), 1)
        d = rng.randint(2, 4)
        expanded = sympy.expand(
            sum(to_sym(c) * v for c, v in zip(p.coords, xs)) ** d)
        poly = sympy.Poly(expanded, *xs)
        for exp, got in zip(monomial_exponents(3, d), power_row(p, d)):
            assert poly.coeff_monomial(
                xs[0] ** exp[0] * xs[1] ** exp[1] * xs[2] ** exp[2]
            ) == to_sym(got)


def test_veronese_space_dimension():
    assert VeroneseSpace(2, 3).N == comb(5, 3) - 1
    assert VeroneseSpace(3, 2).N == comb(5, 2) - 1


def test_h1_collinear_law_against_oracle():
    for d in (3, 4, 5):
        for k in (0, 1, 2):
            pts = [P(1, t, 0) for t in range(d + 1 + k)]
            rep = h1_ideal(PointSet.of(pts), d)
            assert rep.h1 == k == oracle_h1(pts, d)
            assert rep.independent == (k == 0)
            assert rep.set_size == d + 1 + k


def test_h1_general_points_match_oracle():
    rng = random.Random(83)
    for _ in range(10):
        d = rng.randint(2, 4)
        n = rng.randint(2, comb(d + 2, 2))
        pts = set()
        while len(pts) < n:
            pts.add(P(rng.randint(-4, 4), rng.randint(-4, 4), 1))
        pts = sorted(pts, key=lambda p: p.sort_key())
        rep = h1_ideal(PointSet.of(pts), d)
        assert rep.h1 == oracle_h1(pts, d)
        assert rep.span_dim == rep.set_size - 1 - rep.h1


def test_h1_rejects_empty_set():
    with pytest.raises(ValueError):
        h1_ideal(PointSet.of([]), 3)


def test_membership_of_power_sums():
    p1, p2, q = P(1, 0, 0), P(1, 1, 0), P(0, 0, 1)
    f = pow_sum([p1, p2], [1, 2], 3)
    s = PointSet.of([p1, p2])
    assert membership(f, s, 3, "C")
    assert membership(f, s, 3, "R")
    assert not membership(f, PointSet.of([p1]), 3, "C")
    assert not membership(pow_form(q, 3), s, 3, "C")
    with pytest.raises(ValueError):
        membership(f, s, 4, "C")
    with pytest.raises(ValueError):
        membership(f, s, 3, "Q")
    i_pt = ProjectivePoint((ONE, Scalar.of(0, 1), ZERO))
    with pytest.raises(ValueError):
        membership(pow_form(i_pt, 3), PointSet.of([i_pt]), 3, "R")


def test_unique_intersection_point_finds_the_meet():
    d = 3
    t = PointSet.of([P(1, 0, 0), P(0, 1, 0), P(1, 1, 0)])
    e = PointSet.of([P(0, 0, 1)])
    g = pow_sum([P(1, 0, 0), P(1, 1, 0)], [1, 1], d)
    form = pow_sum([P(1, 0, 0), P(1, 1, 0), P(0, 0, 1)], [1, 1, 5], d)
    got = unique_intersection_point(form, e, t, d)
    assert isinstance(got, HomogeneousForm)
    assert got == g.canonical()


def test_unique_intersection_empty_e_returns_canonical_form():
    f = pow_form(P(1, 2, 0), 3)
    got = unique_intersection_point(f, PointSet.of([]), PointSet.of(
        [P(1, 0, 0)]), 3)
    assert got == f.canonical()


def test_unique_intersection_guards():
    t = PointSet.of([P(1, 0, 0), P(0, 1, 0), P(1, 1, 0)])
    with pytest.raises(ValueError):
        unique_intersection_point(pow_form(P(1, 0, 0), 2),
                                  PointSet.of([P(1, 0, 0)]), t, 2)


def test_unique_intersection_empty_meet():
    d = 2
    t = PointSet.of([P(1, 0, 0), P(0, 1, 0), P(1, 1, 0)])
    form = pow_sum([P(0, 0, 1), P(1, 1, 1)], [1, 1], d)
    got = unique_intersection_point(form, PointSet.of([P(1, 1, 1)]), t, d)
    assert isinstance(got, NotUnique) and "empty" in got.reason


def test_unique_intersection_positive_dimensional():
    # powers of three on-line points span the full degree-2 line space,
    # so a fourth on-line power together with an on-line form meets in
    # a plane, not a point
    d = 2
    t = PointSet.of([P(1, 0, 0), P(0, 1, 0), P(1, 1, 0)])
    form = pow_sum([P(1, 0, 0), P(1, -1, 0)], [1, 3], d)
    got = unique_intersection_point(form, PointSet.of([P(1, 2, 0)]), t, d)
    assert isinstance(got, NotUnique) and "positive" in got.reason


def test_off_curve_agreement_equal_and_not():
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    d = 4
    shared_off = [P(0, 0, 1), P(1, 1, 1)]
    a = PointSet.of([P(1, 0, 0), P(1, 1, 0)] + shared_off)
    b = PointSet.of([P(1, 2, 0), P(1, 3, 0), P(1, 4, 0)] + shared_off)
    res = off_curve_agreement(a, b, line, d)
    assert isinstance(res, Conclusion) and res.equal
    c = PointSet.of([P(1, 2, 0), P(0, 1, 1), P(1, 1, 1)])
    res2 = off_curve_agreement(a, c, line, d)
    assert isinstance(res2, Conclusion) and not res2.equal


def test_off_curve_agreement_hypothesis_fails():
    # four collinear off-curve points in degree 4 - 1 - 1 = 2 overshoot
    # the line budget by one, so the span hypothesis is void
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    stack = [P(0, 1, 1), P(0, 1, 2), P(0, 1, 3), P(0, 1, 4)]
    a = PointSet.of([P(1, 0, 0)] + stack[:2])
    b = PointSet.of([P(1, 1, 0)] + stack[2:])
    res = off_curve_agreement(a, b, line, 3)
    assert isinstance(res, HypothesisFails) and res.h1 == 1


def test_off_curve_agreement_needs_degree_above_curve():
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    s = PointSet.of([P(0, 0, 1)])
    with pytest.raises(ValueError):
        off_curve_agreement(s, s, line, 1)


def test_catalecticant_rank_frozen_values():
    xs = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    f3 = pow_sum(xs, [1, 1, 1], 3)          # x^3 + y^3 + z^3
    assert catalecticant_rank(f3) == 3
    assert catalecticant_rank(f3, 0) == 1
    one = pow_form(P(1, 1, 1), 3)
    assert catalecticant_rank(one) == 1
    assert catalecticant_rank(one, 1) == 1
    with pytest.raises(ValueError):
        catalecticant_rank(f3, 7)


def test_catalecticant_never_exceeds_support_size():
    rng = random.Random(89)
    for _ in range(6):
        d = rng.randint(3, 5)
        pts = [P(rng.randint(-3, 3), rng.randint(-3, 3), 1)
               for _ in range(3)]
        f = pow_sum(pts, [1, 2, -1], d)
        if f.is_zero:
            continue
        assert catalecticant_rank(f) <= 3


def test_line_restriction_round_trip():
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    d = 3
    f = pow_sum([P(1, 2, 0), P(1, -1, 0)], [1, -3], d)
    g = restrict_to_line(f, line)
    assert g == power_point((ONE, Scalar.of(2)), d) + power_point(
        (ONE, Scalar.of(-1)), d).scale(Scalar.of(-3))
    rc, dec = complex_rank(g)
    assert rc == 2
    assert set(dec.points) == {(ONE, Scalar.of(2)), (ONE, Scalar.of(-1))}
    with pytest.raises(ValueError):
        restrict_to_line(pow_form(P(0, 0, 1), d), line)


def test_embed_on_line_hits_expected_points():
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    got = embed_on_line(line, [(ONE, Scalar.of(2)), (ZERO, ONE)])
    assert got == [P(1, 2, 0), P(0, 1, 0)]


def test_line_power_basis_rank_and_guard():
    line = CurveSpec.line(P(1, 2, 3), P(0, 1, -1))
    basis = line_power_basis(line, 4)
    assert len(basis) == 5
    conic_plane = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    conic = CurveSpec.conic(conic_plane,
                            [ZERO, ZERO, ONE, Scalar.of(-1), ZERO, ZERO])
    with pytest.raises(ValueError):
        line_power_basis(conic, 4)


def test_parametrize_conic_identities():
    plane = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    conic = CurveSpec.conic(plane,
                            [ZERO, ZERO, ONE, Scalar.of(-1), ZERO, ZERO])
    param = parametrize_conic(conic, P(1, 0, 0))
    assert param.is_real
    seen = set()
    for s, t in ((ONE, ZERO), (ZERO, ONE), (ONE, ONE),
                 (ONE, Scalar.of(-2))):
        p = param.point_at(s, t)
        assert conic.contains(p)
        seen.add(p)
    assert len(seen) == 4
    with pytest.raises(ValueError):
        parametrize_conic(conic, P(1, 1, 0))


def test_conic_restriction_doubles_degree():
    plane = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    conic = CurveSpec.conic(plane,
                            [ZERO, ZERO, ONE, Scalar.of(-1), ZERO, ZERO])
    param = parametrize_conic(conic, P(1, 0, 0))
    d = 3
    p = param.point_at(ONE, ONE)
    g = restrict_to_conic(pow_form(p, d), param)
    assert g.degree == 2 * d
    rc, dec = complex_rank(g)
    assert rc == 1 and dec.points == ((ONE, ONE),)
    with pytest.raises(ValueError):
        restrict_to_conic(pow_form(P(1, 1, 0), d), param)
    assert len(conic_power_basis(param, d)) == 2 * d + 1


def test_embed_on_conic_stays_on_conic():
    plane = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    conic = CurveSpec.conic(plane,
                            [ZERO, ZERO, ONE, Scalar.of(-1), ZERO, ZERO])
    param = parametrize_conic(conic, P(1, 0, 0))
    pts = embed_on_conic(param, [(ONE, ZERO), (ONE, Scalar.of(3))])
    assert all(conic.contains(p) for p in pts)
    assert len(set(pts)) == 2


def test_pair_power_basis_in_p3():
    l1 = CurveSpec.line(P(1, 0, 0, 0), P(0, 1, 0, 0))
    l2 = CurveSpec.line(P(0, 0, 1, 0), P(0, 0, 0, 1))
    pair = CurveSpec.two_lines(l1, l2)
    d = 3
    basis = pair_power_basis(pair, d)
    assert len(basis) == 2 * (d + 1)
    assert spans_disjoint(line_power_basis(l1, d), line_power_basis(l2, d))
    with pytest.raises(ValueError):
        pair_power_basis(l1, d)


def test_curve_power_basis_dispatch():
    d = 3
    l1 = CurveSpec.line(P(1, 0, 0), P(0, 0, 1))
    l2 = CurveSpec.line(P(0, 1, 0), P(0, 0, 1))
    red = CurveSpec.reducible_from_lines(l1, l2)
    assert len(curve_power_basis(red, d)) == 2 * d + 1
    assert len(curve_power_basis(l1, d)) == d + 1
    plane = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    smooth = CurveSpec.conic(plane,
                             [ZERO, ZERO, ONE, Scalar.of(-1), ZERO, ZERO])
    with pytest.raises(ValueError):
        curve_power_basis(smooth, d)
    param = parametrize_conic(smooth, P(1, 0, 0))
    assert len(curve_power_basis(smooth, d, param)) == 2 * d + 1


def test_spans_disjoint_detects_overlap():
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    basis = line_power_basis(line, 2)
    assert not spans_disjoint(basis, [list(power_row(P(1, 5, 0), 2))])
    assert spans_disjoint(basis, [list(power_row(P(0, 0, 1), 2))])


def test_curve_meet_point_against_line_span():
    line = CurveSpec.line(P(1, 0, 0), P(0, 1, 0))
    d = 3
    g = pow_sum([P(1, 0, 0), P(1, 1, 0)], [1, 1], d)
    form = pow_sum([P(1, 0, 0), P(1, 1, 0), P(0, 0, 1)], [1, 1, 2], d)
    got = curve_meet_point(form, PointSet.of([P(0, 0, 1)]),
                           line_power_basis(line, d), d)
    assert got == g.canonical()
    stray = curve_meet_point(pow_form(P(1, 1, 1), d), PointSet.of(
        [P(0, 0, 1)]), line_power_basis(line, d), d)
    assert isinstance(stray, NotUnique)

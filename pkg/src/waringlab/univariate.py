"""Univariate polynomial utilities behind the binary-form rank engine.

Polynomials are coefficient lists in ascending degree.  Two coefficient
domains appear: Scalar lists for everything algebraic (gcd, division,
Gaussian-rational roots) and Fraction lists for the real-root machinery
(Sturm sequences, isolation, sign counts), which never needs imaginary
parts.

Roots are produced in two modes.  Exact mode proposes candidates from a
floating-point Durand-Kerner sweep, snaps them to small rationals, and keeps
only candidates that verify by exact evaluation; it reports failure (None)
rather than returning an unverified root.  Implicit mode returns certified
disks: exact dyadic Newton polishing plus the bound that some root lies
within n*|p(z)/p'(z)| of z, all comparisons done in rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .scalars import ONE, ZERO, Scalar

Poly = list[Scalar]
RealPoly = list[Fraction]


# -- generic coefficient-list arithmetic -------------------------------------

def poly_trim(p: Sequence[Scalar]) -> Poly:
    out = list(p)
    while out and out[-1].is_zero:
        out.pop()
    return out


def poly_degree(p: Sequence[Scalar]) -> int:
    q = poly_trim(p)
    return len(q) - 1


def poly_is_zero(p: Sequence[Scalar]) -> bool:
    return all(c.is_zero for c in p)


def poly_add(a: Sequence[Scalar], b: Sequence[Scalar]) -> Poly:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ZERO
        y = b[i] if i < len(b) else ZERO
        out.append(x + y)
    return poly_trim(out)


def poly_sub(a: Sequence[Scalar], b: Sequence[Scalar]) -> Poly:
    return poly_add(a, [-c for c in b])


def poly_scale(a: Sequence[Scalar], s: Scalar) -> Poly:
    if s.is_zero:
        return []
    return [c * s for c in a]


def poly_mul(a: Sequence[Scalar], b: Sequence[Scalar]) -> Poly:
    a = poly_trim(a)
    b = poly_trim(b)
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_divmod(a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple[Poly, Poly]:
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        f = r[-1] / lead
        k = len(r) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            r[i + k] = r[i + k] - f * c
        r = poly_trim(r)
    return poly_trim(q), r


def poly_monic(a: Sequence[Scalar]) -> Poly:
    a = poly_trim(a)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def poly_gcd(a: Sequence[Scalar], b: Sequence[Scalar]) -> Poly:
    a = poly_trim(a)
    b = poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def poly_derivative(a: Sequence[Scalar]) -> Poly:
    return poly_trim([c * Scalar.of(i) for i, c in enumerate(a)][1:])


def poly_eval(a: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(list(a)):
        acc = acc * x + c
    return acc


def is_squarefree(a: Sequence[Scalar]) -> bool:
    a = poly_trim(a)
    if len(a) <= 1:
        return bool(a)
    return poly_degree(poly_gcd(a, poly_derivative(a))) == 0


def squarefree_part(a: Sequence[Scalar]) -> Poly:
    a = poly_trim(a)
    if len(a) <= 2:
        return poly_monic(a)
    g = poly_gcd(a, poly_derivative(a))
    q, r = poly_divmod(a, g)
    assert not r
    return poly_monic(q)


# -- square roots in Q and Q(i) ----------------------------------------------

def fraction_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z: Scalar) -> Optional[Scalar]:
    """A square root of z inside Q(i), or None when no such root exists."""
    if z.is_zero:
        return ZERO
    if z.im == 0:
        if z.re > 0:
            r = fraction_sqrt(z.re)
            return None if r is None else Scalar.of(r)
        r = fraction_sqrt(-z.re)
        return None if r is None else Scalar(Fraction(0), r)
    w = fraction_sqrt(z.norm())
    if w is None:
        return None
    half = Fraction(1, 2)
    a2 = (z.re + w) * half
    a = fraction_sqrt(a2)
    if a is None or a == 0:
        return None
    b = z.im / (2 * a)
    root = Scalar(a, b)
    assert root * root == z
    return root


def solve_quadratic(a: Scalar, b: Scalar,
                    c: Scalar) -> Optional[tuple[Scalar, Scalar]]:
    """Roots of a t^2 + b t + c over Q(i); None when they fall outside."""
    if a.is_zero:
        raise ValueError("not a quadratic")
    disc = b * b - Scalar.of(4) * a * c
    s = gaussian_sqrt(disc)
    if s is None:
        return None
    two_a = Scalar.of(2) * a
    return ((-b + s) / two_a, (-b - s) / two_a)


# -- exact Gaussian-rational root extraction ----------------------------------

_SNAP_DENOMS = (1, 6, 60, 840, 10 ** 4, 10 ** 6, 10 ** 9, 10 ** 12)

_FILTER_PRIME = (1 << 61) - 1


def _snap(x: float) -> list[Fraction]:
    out = []
    f = Fraction(x)
    for dlim in _SNAP_DENOMS:
        cand = f.limit_denominator(dlim)
        if not out or cand != out[-1]:
            out.append(cand)
    return out


def _mod_pair(z: Scalar, p: int) -> Optional[tuple[int, int]]:
    """z reduced mod p as a pair, or None when a denominator hits p."""
    try:
        re = z.re.numerator * pow(z.re.denominator, -1, p) % p
        im = z.im.numerator * pow(z.im.denominator, -1, p) % p
    except ValueError:
        return None
    return re, im


def _eval_mod(coeffs: list[tuple[int, int]], cand: tuple[int, int],
              p: int) -> bool:
    """Horner mod p on Gaussian pairs; True when the value is zero mod p."""
    ar, ai = 0, 0
    cr, ci = cand
    for br, bi in reversed(coeffs):
        ar, ai = (ar * cr - ai * ci + br) % p, (ar * ci + ai * cr + bi) % p
    return ar == 0 and ai == 0


def _float_roots(p: Sequence[Scalar]) -> list[complex]:
    """Durand-Kerner sweep; purely heuristic, every output gets verified."""
    coeffs = [complex(float(c.re), float(c.im)) for c in poly_trim(p)]
    n = len(coeffs) - 1
    if n <= 0:
        return []
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    bound = 1.0 + max(abs(c) for c in coeffs[:-1]) if n else 1.0
    zs = [bound * (0.41 + 0.87j) ** (k + 1) for k in range(n)]
    for _ in range(400):
        moved = 0.0
        for i in range(n):
            num = 0j
            for c in reversed(coeffs):
                num = num * zs[i] + c
            den = 1.0 + 0j
            for j in range(n):
                if j != i:
                    den *= zs[i] - zs[j]
            if den == 0:
                zs[i] += 1e-6 + 1e-6j
                continue
            step = num / den
            zs[i] -= step
            moved = max(moved, abs(step))
        if moved < 1e-14:
            break
    return zs


def roots_over_gaussians(p: Sequence[Scalar]) -> Optional[list[Scalar]]:
    """All roots of p, each verified exactly in Q(i); None if p fails to split.

    Candidates come from float approximations snapped to small-denominator
    rationals; only exact verification p(z) == 0 admits a root, and admitted
    roots are divided out so multiplicities are honest.
    """
    work = poly_monic(p)
    deg = len(work) - 1
    if deg < 0:
        raise ValueError("zero polynomial has no root list")
    roots: list[Scalar] = []
    while len(work) - 1 > 0:
        if len(work) - 1 == 1:
            roots.append(-work[0] / work[1])
            break
        if len(work) - 1 == 2:
            pair = solve_quadratic(work[2], work[1], work[0])
            if pair is None:
                return None
            roots.extend(pair)
            break
        found = None
        p = _FILTER_PRIME
        coeffs_mod = [_mod_pair(c, p) for c in work]
        filtering = all(c is not None for c in coeffs_mod)
        for z0 in _float_roots(work):
            for re_c in _snap(z0.real):
                for im_c in _snap(z0.imag):
                    cand = Scalar(re_c, im_c)
                    if filtering:
                        cm = _mod_pair(cand, p)
                        if cm is not None and not _eval_mod(
                                coeffs_mod, cm, p):
                            continue
                    if poly_eval(work, cand).is_zero:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        work, rem = poly_divmod(work, [-found, ONE])
        assert not rem
    roots.sort(key=lambda z: z.sort_key())
    return roots


# -- Sturm machinery over the reals -------------------------------------------

def as_real_poly(p: Sequence[Scalar]) -> RealPoly:
    out = []
    for c in p:
        if c.im != 0:
            raise ValueError("polynomial is not real")
        out.append(c.re)
    while out and out[-1] == 0:
        out.pop()
    return out


def _r_eval(p: RealPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _r_derivative(p: RealPoly) -> RealPoly:
    return [c * i for i, c in enumerate(p)][1:]


def _r_divmod(a: RealPoly, b: RealPoly) -> tuple[RealPoly, RealPoly]:
    r = list(a)
    q: RealPoly = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(r) >= len(b) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        f = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            r[i + k] -= f * c
    while r and r[-1] == 0:
        r.pop()
    return q, r


def sturm_sequence(p: RealPoly) -> list[RealPoly]:
    p = [c for c in p]
    while p and p[-1] == 0:
        p.pop()
    if not p:
        return []
    seq = [p, _r_derivative(p)]
    while seq[-1]:
        _, rem = _r_divmod(seq[-2], seq[-1])
        if not rem:
            break
        seq.append([-c for c in rem])
    return seq


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sturm_at(seq: list[RealPoly], x: Optional[Fraction], top: bool) -> int:
    signs = []
    for q in seq:
        if not q:
            signs.append(0)
        elif x is None:
            s = _sign(q[-1])
            if not top and (len(q) - 1) % 2 == 1:
                s = -s
            signs.append(s)
        else:
            signs.append(_sign(_r_eval(q, x)))
    return _variations(signs)


def count_real_roots(p: RealPoly, lo: Optional[Fraction] = None,
                     hi: Optional[Fraction] = None) -> int:
    """Distinct real roots of p in (lo, hi]; None endpoints mean infinity."""
    seq = sturm_sequence(p)
    if not seq or len(seq[0]) <= 1:
        return 0
    va = _sturm_at(seq, lo, top=False)
    vb = _sturm_at(seq, hi, top=True)
    return va - vb


def cauchy_bound(p: RealPoly) -> Fraction:
    q = [c for c in p]
    while q and q[-1] == 0:
        q.pop()
    if len(q) <= 1:
        return Fraction(1)
    lead = abs(q[-1])
    m = max(abs(c) for c in q[:-1])
    return Fraction(1) + m / lead


def all_roots_real(p: Sequence[Scalar]) -> bool:
    """True when every complex root of p is real (multiplicity ignored)."""
    rp = as_real_poly(p)
    if len(rp) <= 1:
        return True
    sf = squarefree_part([Scalar.of(c) for c in rp])
    rsf = as_real_poly(sf)
    return count_real_roots(rsf) == len(rsf) - 1


def isolate_real_roots(p: RealPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], one distinct real root in each, sorted."""
    while p and p[-1] == 0:
        p = p[:-1]
    if len(p) <= 1:
        return []
    b = cauchy_bound(p)
    total = count_real_roots(p, -b, b)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b, total)]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = count_real_roots(p, lo, mid)
        stack.append((mid, hi, cnt - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def refine_real_root(p: RealPoly, lo: Fraction, hi: Fraction,
                     width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (a, b] with one root below the width."""
    if _r_eval(p, hi) == 0:
        return (hi, hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _r_eval(p, mid) == 0:
            return (mid, mid)
        if count_real_roots(p, mid, hi) == 1:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


# -- certified complex root boxes ----------------------------------------------

@dataclass(frozen=True)
class RootBox:
    """A disk certified to contain exactly one root of its polynomial."""

    center: Scalar
    radius: Fraction

    def to_json(self) -> dict:
        from .scalars import format_rational
        return {"center": self.center.to_json(),
                "radius": format_rational(self.radius)}


def _dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


def _dyadic_scalar(z: Scalar, bits: int) -> Scalar:
    return Scalar(_dyadic(z.re, bits), _dyadic(z.im, bits))


def certified_root_boxes(p: Sequence[Scalar],
                         radius: Fraction) -> list[RootBox]:
    """One certified disk of the given radius per root of a squarefree p.

    Certificate: some root lies within n*|p(z)/p'(z)| of any z (log-derivative
    bound), checked by comparing n^2 * N(p(z)) <= radius^2 * N(p'(z)) in exact
    arithmetic; n pairwise-disjoint such disks for a degree-n polynomial then
    hold exactly one root each.
    """
    work = poly_monic(p)
    n = len(work) - 1
    if n <= 0:
        return []
    if not is_squarefree(work):
        raise ValueError("certified boxes need a squarefree polynomial")
    dwork = poly_derivative(work)
    bits = 240
    for attempt in range(4):
        centers = []
        ok = True
        for z in _float_roots(work):
            c = Scalar(Fraction(z.real), Fraction(z.imag))
            c = _dyadic_scalar(c, 64)
            for _ in range(3 + attempt):
                dv = poly_eval(dwork, c)
                if dv.is_zero:
                    ok = False
                    break
                c = c - poly_eval(work, c) / dv
                c = _dyadic_scalar(c, bits)
            if not ok:
                break
            pv = poly_eval(work, c)
            dv = poly_eval(dwork, c)
            if dv.is_zero or n * n * pv.norm() > radius * radius * dv.norm():
                ok = False
                break
            centers.append(c)
        if ok:
            four_r2 = 4 * radius * radius
            for a, b in itertools.combinations(centers, 2):
                if (a - b).norm() <= four_r2:
                    ok = False
                    break
        if ok:
            centers.sort(key=lambda z: z.sort_key())
            return [RootBox(c, radius) for c in centers]
        bits *= 2
    raise ArithmeticError("root certification did not converge")


# -- rectangle arithmetic for implicit-mode solves ------------------------------

_ROUND_GUARD_BITS = 64


def _round_out(lo: Fraction, hi: Fraction) -> "Interval":
    """Widen to a dyadic grid fine enough to keep relative growth tiny.

    Exact endpoints pass through untouched, so zero-width data stays
    exact.  Everything else is snapped outward to denominator 2^k with
    2^-k at least sixty-four bits below the current width; without this
    the denominators double at every elimination step.
    """
    if lo == hi:
        return Interval(lo, hi)
    w = hi - lo
    k = _ROUND_GUARD_BITS + max(
        0, w.denominator.bit_length() - w.numerator.bit_length() + 1)
    scale = 1 << k
    if lo.denominator <= scale and hi.denominator <= scale:
        return Interval(lo, hi)
    lo2 = Fraction(lo.numerator * scale // lo.denominator, scale)
    hi2 = Fraction(-((-hi.numerator * scale) // hi.denominator), scale)
    return Interval(lo2, hi2)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @staticmethod
    def exact(x: Fraction) -> "Interval":
        return Interval(x, x)

    def __add__(self, o: "Interval") -> "Interval":
        return _round_out(self.lo + o.lo, self.hi + o.hi)

    def __sub__(self, o: "Interval") -> "Interval":
        return _round_out(self.lo - o.hi, self.hi - o.lo)

    def __mul__(self, o: "Interval") -> "Interval":
        vals = (self.lo * o.lo, self.lo * o.hi,
                self.hi * o.lo, self.hi * o.hi)
        return _round_out(min(vals), max(vals))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def recip(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return _round_out(1 / self.hi, 1 / self.lo)

    def __truediv__(self, o: "Interval") -> "Interval":
        return self * o.recip()

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class BoxScalar:
    """A rectangle in the complex plane with exact rational corners."""

    re: Interval
    im: Interval

    @staticmethod
    def exact(z: Scalar) -> "BoxScalar":
        return BoxScalar(Interval.exact(z.re), Interval.exact(z.im))

    @staticmethod
    def from_box(box: RootBox) -> "BoxScalar":
        r = box.radius
        return BoxScalar(
            Interval(box.center.re - r, box.center.re + r),
            Interval(box.center.im - r, box.center.im + r))

    def __add__(self, o: "BoxScalar") -> "BoxScalar":
        return BoxScalar(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "BoxScalar") -> "BoxScalar":
        return BoxScalar(self.re - o.re, self.im - o.im)

    def __mul__(self, o: "BoxScalar") -> "BoxScalar":
        return BoxScalar(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    def __neg__(self) -> "BoxScalar":
        return BoxScalar(-self.re, -self.im)

    def recip(self) -> "BoxScalar":
        n = self.re * self.re + self.im * self.im
        if n.lo <= 0:
            raise ZeroDivisionError("box may contain zero")
        return BoxScalar(self.re / n, (-self.im) / n)

    def __truediv__(self, o: "BoxScalar") -> "BoxScalar":
        return self * o.recip()

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    @property
    def excludes_zero(self) -> bool:
        return (not self.re.contains(Fraction(0))
                or not self.im.contains(Fraction(0)))

    def contains_zero(self) -> bool:
        return self.re.contains(Fraction(0)) and self.im.contains(Fraction(0))

    def power(self, e: int) -> "BoxScalar":
        out = BoxScalar.exact(ONE)
        for _ in range(e):
            out = out * self
        return out

    def to_json(self) -> dict:
        from .scalars import format_rational
        return {"re": [format_rational(self.re.lo), format_rational(self.re.hi)],
                "im": [format_rational(self.im.lo), format_rational(self.im.hi)]}


def interval_solve(matrix: list[list[BoxScalar]],
                   rhs: list[BoxScalar]) -> list[BoxScalar]:
    """Gaussian elimination with rectangle entries; pivots must exclude zero."""
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    ncols = len(matrix[0])
    if any(len(row) != ncols + 1 for row in m) or n < ncols:
        raise ValueError("system shape mismatch")
    for col in range(ncols):
        piv = next((i for i in range(col, n) if m[i][col].excludes_zero), None)
        if piv is None:
            raise ZeroDivisionError("no usable pivot; refine the boxes")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].recip()
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [m[i][ncols] for i in range(ncols)]

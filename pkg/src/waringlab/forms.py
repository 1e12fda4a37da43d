"""Homogeneous forms with exact coefficients.

A HomogeneousForm of degree d in num_vars variables is a sparse map from
exponent tuples (e_0, ..., e_{num_vars-1}) with sum d to nonzero Scalars.
The monomial order is fixed once and for all: graded lexicographic, which for
a single degree block means plain lexicographic descending, so x0^d comes
first and x_{n-1}^d last.  Every coefficient vector in the package is aligned
to this order.

A LinearForm is a degree-1 form kept in canonical projective scale (first
nonzero coefficient equal to 1); raising it to a power uses the multinomial
theorem directly, which keeps the d-th powers of linear forms exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar

Exponent = tuple[int, ...]


@lru_cache(maxsize=None)
def monomial_exponents(num_vars: int, degree: int) -> tuple[Exponent, ...]:
    """All exponent tuples of the given total degree, lexicographic descending."""
    if num_vars <= 0:
        raise ValueError("num_vars must be positive")
    if num_vars == 1:
        return ((degree,),)
    out: list[Exponent] = []
    for e in range(degree, -1, -1):
        for rest in monomial_exponents(num_vars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def multinomial(degree: int, exps: Exponent) -> int:
    """d! / (e_0! * ... * e_k!) for sum(exps) == degree."""
    out = 1
    remaining = degree
    for e in exps:
        out *= math.comb(remaining, e)
        remaining -= e
    return out


@dataclass(frozen=True)
class LinearForm:
    """A nonzero linear form in canonical projective scale."""

    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        lead = next((c for c in self.coeffs if not c.is_zero), None)
        if lead is None:
            raise ValueError("linear form must be nonzero")
        if lead != ONE:
            object.__setattr__(
                self, "coeffs", tuple(c / lead for c in self.coeffs))

    @property
    def num_vars(self) -> int:
        return len(self.coeffs)

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs)

    def conjugate(self) -> "LinearForm":
        return LinearForm(tuple(c.conjugate() for c in self.coeffs))

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        acc = ZERO
        for c, v in zip(self.coeffs, point):
            acc = acc + c * v
        return acc

    def as_form(self) -> "HomogeneousForm":
        return HomogeneousForm.from_coeff_map(
            self.num_vars, 1,
            {tuple(1 if i == j else 0 for i in range(self.num_vars)): c
             for j, c in enumerate(self.coeffs)})


@dataclass(frozen=True, eq=False)
class HomogeneousForm:
    num_vars: int
    degree: int
    coeffs: Mapping[Exponent, Scalar] = field(default_factory=dict)

    # coeffs never stores zeros; from_coeff_map is the canonicalizing door.

    @staticmethod
    def zero(num_vars: int, degree: int) -> "HomogeneousForm":
        return HomogeneousForm(num_vars, degree, {})

    @staticmethod
    def from_coeff_map(num_vars: int, degree: int,
                       coeffs: Mapping[Exponent, Scalar]) -> "HomogeneousForm":
        clean: dict[Exponent, Scalar] = {}
        for exp, c in coeffs.items():
            exp = tuple(exp)
            if len(exp) != num_vars or any(e < 0 for e in exp) or sum(exp) != degree:
                raise ValueError(f"bad exponent {exp} for degree {degree}")
            if not c.is_zero:
                clean[exp] = c
        return HomogeneousForm(num_vars, degree, clean)

    @staticmethod
    def from_coeff_vector(num_vars: int, degree: int,
                          vec: Sequence[Scalar]) -> "HomogeneousForm":
        exps = monomial_exponents(num_vars, degree)
        if len(vec) != len(exps):
            raise ValueError("coefficient vector has wrong length")
        return HomogeneousForm.from_coeff_map(
            num_vars, degree, dict(zip(exps, vec)))

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs.values())

    def coeff(self, exp: Exponent) -> Scalar:
        return self.coeffs.get(tuple(exp), ZERO)

    def coeff_vector(self) -> tuple[Scalar, ...]:
        return tuple(self.coeffs.get(e, ZERO)
                     for e in monomial_exponents(self.num_vars, self.degree))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and self.degree == other.degree
                and dict(self.coeffs) == dict(other.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "HomogeneousForm") -> None:
        if self.num_vars != other.num_vars or self.degree != other.degree:
            raise ValueError("forms live in different spaces")

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            out[exp] = out.get(exp, ZERO) + c
        return HomogeneousForm.from_coeff_map(self.num_vars, self.degree, out)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + other.scale(-ONE)

    def scale(self, factor: Scalar) -> "HomogeneousForm":
        if factor.is_zero:
            return HomogeneousForm.zero(self.num_vars, self.degree)
        return HomogeneousForm(
            self.num_vars, self.degree,
            {e: c * factor for e, c in self.coeffs.items()})

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if self.num_vars != other.num_vars:
            raise ValueError("forms live in different spaces")
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(e)
                out[e] = c1 * c2 if prev is None else prev + c1 * c2
        return HomogeneousForm.from_coeff_map(
            self.num_vars, self.degree + other.degree, out)

    def conjugate(self) -> "HomogeneousForm":
        return HomogeneousForm(
            self.num_vars, self.degree,
            {e: c.conjugate() for e, c in self.coeffs.items()})

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        acc = ZERO
        for exp, c in self.coeffs.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    term = term * (v ** e)
            acc = acc + term
        return acc

    def canonical(self) -> "HomogeneousForm":
        """Projective representative: first nonzero coefficient scaled to 1."""
        for exp in monomial_exponents(self.num_vars, self.degree):
            c = self.coeffs.get(exp)
            if c is not None:
                return self.scale(ONE / c)
        return self

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for exp in monomial_exponents(self.num_vars, self.degree):
            c = self.coeffs.get(exp)
            if c is not None:
                terms.append({"exp": list(exp), **c.to_json()})
        return {"m": self.num_vars - 1, "d": self.degree, "terms": terms}

    @staticmethod
    def from_json(obj: dict) -> "HomogeneousForm":
        num_vars = int(obj["m"]) + 1
        degree = int(obj["d"])
        coeffs = {tuple(int(e) for e in t["exp"]): Scalar.from_json(t)
                  for t in obj["terms"]}
        return HomogeneousForm.from_coeff_map(num_vars, degree, coeffs)


def power_of_linear(linear: LinearForm, degree: int) -> HomogeneousForm:
    """(sum c_i x_i)^degree expanded by the multinomial theorem."""
    n = linear.num_vars
    out: dict[Exponent, Scalar] = {}
    for exp in monomial_exponents(n, degree):
        c = Scalar.of(multinomial(degree, exp))
        for ci, e in zip(linear.coeffs, exp):
            if e:
                if ci.is_zero:
                    c = ZERO
                    break
                c = c * (ci ** e)
        if not c.is_zero:
            out[exp] = c
    return HomogeneousForm(n, degree, out)


def combine(terms: Iterable[tuple[Scalar, LinearForm]],
            degree: int) -> HomogeneousForm:
    """sum of lambda_i * L_i^degree, exactly."""
    acc: HomogeneousForm | None = None
    for lam, lin in terms:
        piece = power_of_linear(lin, degree).scale(lam)
        acc = piece if acc is None else acc + piece
    if acc is None:
        raise ValueError("combine needs at least one term")
    return acc


def conjugate_form(form: HomogeneousForm) -> HomogeneousForm:
    return form.conjugate()


def form_substitute(form: HomogeneousForm,
                    images: Sequence[HomogeneousForm]) -> HomogeneousForm:
    """Substitute x_i -> images[i]; images share a space and a common degree."""
    if len(images) != form.num_vars:
        raise ValueError("need one image per variable")
    tgt_vars = images[0].num_vars
    img_deg = images[0].degree
    for g in images:
        if g.num_vars != tgt_vars or g.degree != img_deg:
            raise ValueError("substitution images must share space and degree")
    # memoized powers of each image
    powers: list[list[HomogeneousForm]] = []
    for g in images:
        powers.append([HomogeneousForm.from_coeff_map(
            tgt_vars, 0, {(0,) * tgt_vars: ONE})])
    out = HomogeneousForm.zero(tgt_vars, form.degree * img_deg)
    for exp, c in sorted(form.coeffs.items()):
        term: HomogeneousForm | None = None
        for i, e in enumerate(exp):
            if e == 0:
                continue
            while len(powers[i]) <= e:
                powers[i].append(powers[i][-1] * images[i])
            piece = powers[i][e]
            term = piece if term is None else term * piece
        if term is None:
            term = HomogeneousForm.from_coeff_map(
                tgt_vars, 0, {(0,) * tgt_vars: ONE})
        out = out + term.scale(c)
    return out

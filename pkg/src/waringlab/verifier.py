"""Case classification: test a (P, S_C, S_R) triple against the structure
theorem's three shapes and report every check exactly.

The pipeline mirrors how the structure is forced: hypothesis checks first
(budget, strict size inequality, memberships, positive h1 of the union),
then detection of rich curves (lines holding at least d+2 of the points,
conics holding at least 2d+2, and disjoint line pairs rich on both legs),
then one verification attempt per detected curve in a fixed order.  A
report never throws: every anomaly is recorded as a failed check, every
number it carries is exact, and identical inputs yield identical bytes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import linalg
from .binary import complex_rank, real_rank
from .factory import Instance
from .forms import HomogeneousForm
from .points import (SMOOTH_CONIC, CurveSpec, PointSet, ProjectivePoint,
                     find_rich_conics, find_rich_lines, split_on_curve)
from .spans import (NotUnique, curve_meet_point, h1_ideal, line_power_basis,
                    membership, off_curve_agreement, pair_power_basis,
                    parametrize_conic, power_row, restrict_to_conic,
                    restrict_to_line, unique_intersection_point)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    note: str = ""
    data: tuple[tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        out: dict = {"id": self.check_id, "passed": self.passed}
        if self.note:
            out["note"] = self.note
        if self.data:
            out["data"] = {k: v for k, v in self.data}
        return out


@dataclass(frozen=True)
class CaseAttempt:
    case_label: str
    curve: CurveSpec
    checks: tuple[CheckResult, ...]
    meet_points: tuple[tuple[str, HomogeneousForm], ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "case": self.case_label,
            "curve": self.curve.to_json(),
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "points": {name: form.to_json()
                       for name, form in self.meet_points},
        }


@dataclass(frozen=True)
class CaseReport:
    mode: str
    m: int
    d: int
    case_label: Optional[str]
    hypothesis_checks: tuple[CheckResult, ...]
    h1_total: int
    detected_lines: tuple[tuple[CurveSpec, int], ...]
    detected_conics: tuple[tuple[CurveSpec, int], ...]
    detected_pairs: tuple[tuple[CurveSpec, int, int], ...]
    attempts: tuple[CaseAttempt, ...]
    notes: tuple[str, ...] = ()

    @property
    def passing_cases(self) -> tuple[str, ...]:
        seen = []
        for a in self.attempts:
            if a.passed and a.case_label not in seen:
                seen.append(a.case_label)
        return tuple(seen)

    @property
    def headline(self) -> Optional[str]:
        for a in self.attempts:
            if a.passed:
                return a.case_label
        return None

    @property
    def overall_pass(self) -> bool:
        return (all(c.passed for c in self.hypothesis_checks)
                and self.headline is not None)

    @property
    def label_match(self) -> Optional[bool]:
        if self.case_label is None:
            return None
        return self.case_label in self.passing_cases

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "m": self.m,
            "d": self.d,
            "case_label": self.case_label,
            "hypothesis_checks": [c.to_json()
                                  for c in self.hypothesis_checks],
            "h1_total": self.h1_total,
            "detected": {
                "lines": [{"curve": c.to_json(), "count": n}
                          for c, n in self.detected_lines],
                "conics": [{"curve": c.to_json(), "count": n}
                           for c, n in self.detected_conics],
                "pairs": [{"curve": c.to_json(), "counts": [a, b]}
                          for c, a, b in self.detected_pairs],
            },
            "attempts": [a.to_json() for a in self.attempts],
            "passing_cases": list(self.passing_cases),
            "headline": self.headline,
            "overall_pass": self.overall_pass,
            "label_match": self.label_match,
            "notes": list(self.notes),
        }


def _sorted_keys(points) -> list:
    return sorted(p.sort_key() for p in points)


def _is_real_data(form: HomogeneousForm, s_c: PointSet,
                  s_r: PointSet) -> bool:
    return (form.is_real and s_c.is_conjugation_stable()
            and all(p.is_real for p in s_r))


# -- hypothesis layer -------------------------------------------------------------

def check_hypotheses(form: HomogeneousForm, s_c: PointSet, s_r: PointSet,
                     d: int) -> tuple[list[CheckResult], int]:
    checks: list[CheckResult] = []
    valid = len(s_c) > 0 and len(s_r) > 0 and form.degree == d \
        and not form.is_zero
    checks.append(CheckResult(
        "input-valid", valid,
        "" if valid else "empty point set or degree mismatch"))
    if not valid:
        return checks, 0
    budget = len(s_c) + len(s_r) <= 3 * d - 1
    checks.append(CheckResult(
        "budget", budget, "",
        (("sizes", f"{len(s_c)}+{len(s_r)}"), ("limit", str(3 * d - 1)))))
    checks.append(CheckResult(
        "rank-inequality", len(s_c) < len(s_r), "",
        (("complex", str(len(s_c))), ("real", str(len(s_r))))))
    try:
        ok_c = membership(form, s_c, d, "C")
        checks.append(CheckResult("membership-complex", ok_c))
    except ValueError as err:
        checks.append(CheckResult("membership-complex", False, str(err)))
    try:
        ok_r = membership(form, s_r, d, "R")
        checks.append(CheckResult("membership-real", ok_r))
    except ValueError as err:
        checks.append(CheckResult("membership-real", False, str(err)))
    rep = h1_ideal(s_c.union(s_r), d)
    checks.append(CheckResult(
        "h1-positive", rep.h1 > 0, "",
        (("h1", str(rep.h1)),)))
    return checks, rep.h1


# -- detection layer --------------------------------------------------------------

@dataclass(frozen=True)
class DetectedStructure:
    lines: tuple[tuple[CurveSpec, int], ...]
    conics: tuple[tuple[CurveSpec, int], ...]
    pairs: tuple[tuple[CurveSpec, int, int], ...]

    @property
    def empty(self) -> bool:
        return not (self.lines or self.conics or self.pairs)


def detect_structure(union: PointSet, d: int,
                     line_threshold: Optional[int] = None,
                     conic_threshold: Optional[int] = None
                     ) -> DetectedStructure:
    lt = d + 2 if line_threshold is None else line_threshold
    ct = 2 * d + 2 if conic_threshold is None else conic_threshold
    lines = find_rich_lines(union, lt)
    conics = find_rich_conics(union, ct)
    pairs = []
    for (l1, n1), (l2, n2) in itertools.combinations(lines, 2):
        try:
            pair = CurveSpec.two_lines(l1, l2)
        except ValueError:
            continue
        first, second = pair.branches
        counts = {l1.sort_key(): n1, l2.sort_key(): n2}
        pairs.append((pair, counts[first.sort_key()],
                      counts[second.sort_key()]))
    pairs.sort(key=lambda row: (-(row[1] + row[2]), row[0].sort_key()))
    return DetectedStructure(tuple(lines), tuple(conics), tuple(pairs))


# -- case (a) ----------------------------------------------------------------------

def _meet_both_ways(form: HomogeneousForm, off_c: PointSet,
                    off_r: PointSet, on_c: PointSet, on_r: PointSet,
                    d: int, real_data: bool,
                    label: str) -> tuple[Optional[HomogeneousForm],
                                         list[CheckResult]]:
    """Intersection point from the complex and the real span data.

    Both reads must exist, agree, and be real on real-hypothesis input.
    """
    checks: list[CheckResult] = []
    try:
        p1 = unique_intersection_point(form, off_c, on_c, d)
        p2 = unique_intersection_point(form, off_r, on_r, d)
    except (ValueError, ArithmeticError) as err:
        checks.append(CheckResult(label, False, str(err)))
        return None, checks
    if isinstance(p1, NotUnique) or isinstance(p2, NotUnique):
        reason = p1.reason if isinstance(p1, NotUnique) else p2.reason
        checks.append(CheckResult(label, False, reason))
        return None, checks
    if p1 != p2:
        checks.append(CheckResult(
            label, False, "complex and real span reads disagree"))
        return None, checks
    if real_data and not p1.is_real:
        checks.append(CheckResult(label, False,
                                  "meet point is not real"))
        return None, checks
    checks.append(CheckResult(
        label, True,
        "meet point agrees across both span reads and is real"
        if real_data else
        "meet point agrees across both span reads"))
    return p1, checks


def _rank_checks(restricted, on_c: PointSet, on_r: PointSet,
                 prefix: str) -> list[CheckResult]:
    """Evincing as cardinality: certified binary ranks match the set sizes."""
    out: list[CheckResult] = []
    try:
        rc, dec_c = complex_rank(restricted)
        ok = rc == len(on_c) and dec_c.minimality_certified
        note = "" if ok else f"complex rank {rc} vs {len(on_c)} points"
        if not dec_c.minimality_certified:
            note = "complex rank not certified"
        out.append(CheckResult(prefix + "complex-evincing", ok, note,
                               (("rank", str(rc)),
                                ("points", str(len(on_c))))))
    except (ValueError, ArithmeticError) as err:
        out.append(CheckResult(prefix + "complex-evincing", False,
                               str(err)))
    try:
        rr, dec_r = real_rank(restricted)
        ok = rr == len(on_r) and dec_r.minimality_certified
        note = "" if ok else f"real rank {rr} vs {len(on_r)} points"
        if not dec_r.minimality_certified:
            note = "real rank not certified"
        out.append(CheckResult(prefix + "real-evincing", ok, note,
                               (("rank", str(rr)),
                                ("points", str(len(on_r))))))
    except (ValueError, ArithmeticError) as err:
        out.append(CheckResult(prefix + "real-evincing", False, str(err)))
    return out


def _membership_checks(point_form: HomogeneousForm, on_c: PointSet,
                       on_r: PointSet, d: int,
                       prefix: str) -> list[CheckResult]:
    out = []
    try:
        ok = membership(point_form, on_c, d, "C")
        out.append(CheckResult(prefix + "membership-complex", ok))
    except ValueError as err:
        out.append(CheckResult(prefix + "membership-complex", False,
                               str(err)))
    try:
        ok = membership(point_form, on_r, d, "R")
        out.append(CheckResult(prefix + "membership-real", ok))
    except ValueError as err:
        out.append(CheckResult(prefix + "membership-real", False,
                               str(err)))
    return out


def verify_case_a(form: HomogeneousForm, s_c: PointSet, s_r: PointSet,
                  line: CurveSpec, d: int) -> CaseAttempt:
    on_c, off_c = split_on_curve(s_c, line)
    on_r, off_r = split_on_curve(s_r, line)
    real_data = _is_real_data(form, s_c, s_r)
    checks: list[CheckResult] = []
    checks.append(CheckResult(
        "a.i", _sorted_keys(off_c) == _sorted_keys(off_r),
        "", (("off_complex", str(len(off_c))),
             ("off_real", str(len(off_r))))))
    meets: list[tuple[str, HomogeneousForm]] = []
    sub: list[CheckResult] = []
    point, meet_checks = _meet_both_ways(form, off_c, off_r, on_c, on_r,
                                         d, real_data, "a.ii.meet")
    sub.extend(meet_checks)
    if point is not None:
        meets.append(("P_l", point))
        try:
            restricted = restrict_to_line(point, line)
            sub.extend(_rank_checks(restricted, on_c, on_r, "a.ii."))
        except (ValueError, ArithmeticError) as err:
            sub.append(CheckResult("a.ii.restriction", False, str(err)))
        sub.extend(_membership_checks(point, on_c, on_r, d, "a.ii."))
    checks.append(CheckResult(
        "a.ii", all(c.passed for c in sub),
        "; ".join(c.note for c in sub if c.note)))
    checks.extend(sub)
    union = on_c.union(on_r)
    checks.append(CheckResult(
        "a.iii", len(union) >= d + 2 and len(on_c) < len(on_r), "",
        (("on_curve_union", str(len(union))), ("d_plus_2", str(d + 2)),
         ("on_complex", str(len(on_c))), ("on_real", str(len(on_r))))))
    return CaseAttempt("a", line, tuple(checks), tuple(meets))


# -- case (b) ----------------------------------------------------------------------

def _branch_split(point_form: HomogeneousForm, on_set: PointSet,
                  left: CurveSpec, right: CurveSpec, node: ProjectivePoint,
                  d: int) -> Optional[tuple[HomogeneousForm,
                                            HomogeneousForm]]:
    """Write the on-conic part as (left-branch sum) + (right-branch sum).

    Solves for the coefficients over the given support; None when the
    support does not determine the split uniquely or the node carries
    a point.
    """
    pts = list(on_set)
    if node in pts:
        return None
    cols = [list(power_row(p, d)) for p in pts]
    if linalg.column_rank(cols) != len(pts):
        return None
    sol = linalg.solve_columns(cols, list(point_form.coeff_vector()))
    if sol is None:
        return None
    n = point_form.num_vars
    part_l = HomogeneousForm.zero(n, d)
    part_r = HomogeneousForm.zero(n, d)
    for p, lam in zip(pts, sol):
        term = HomogeneousForm.from_coeff_vector(
            n, d, [lam * c for c in power_row(p, d)])
        if left.contains(p):
            part_l = part_l + term
        elif right.contains(p):
            part_r = part_r + term
        else:
            return None
    return part_l, part_r


def verify_case_b(form: HomogeneousForm, s_c: PointSet, s_r: PointSet,
                  conic: CurveSpec, d: int) -> CaseAttempt:
    on_c, off_c = split_on_curve(s_c, conic)
    on_r, off_r = split_on_curve(s_r, conic)
    real_data = _is_real_data(form, s_c, s_r)
    checks: list[CheckResult] = []
    checks.append(CheckResult(
        "b.i", _sorted_keys(off_c) == _sorted_keys(off_r),
        "", (("off_complex", str(len(off_c))),
             ("off_real", str(len(off_r))))))
    meets: list[tuple[str, HomogeneousForm]] = []
    sub: list[CheckResult] = []
    point, meet_checks = _meet_both_ways(form, off_c, off_r, on_c, on_r,
                                         d, real_data, "b.ii.meet")
    sub.extend(meet_checks)
    if point is not None:
        meets.append(("P_C", point))
        if conic.kind == SMOOTH_CONIC:
            sub.extend(_smooth_conic_evincing(point, conic, on_c, on_r, d))
        else:
            sub.extend(_reducible_conic_evincing(point, conic, on_c, on_r,
                                                 d, meets))
        sub.extend(_membership_checks(point, on_c, on_r, d, "b.ii."))
    checks.append(CheckResult(
        "b.ii", all(c.passed for c in sub),
        "; ".join(c.note for c in sub if c.note)))
    checks.extend(sub)
    union = on_c.union(on_r)
    checks.append(CheckResult(
        "b.iii", len(union) >= 2 * d + 2 and len(on_c) < len(on_r), "",
        (("on_curve_union", str(len(union))),
         ("two_d_plus_2", str(2 * d + 2)),
         ("on_complex", str(len(on_c))), ("on_real", str(len(on_r))))))
    if conic.kind == SMOOTH_CONIC:
        checks.append(CheckResult("b.iv", True, "smooth conic; no branch "
                                  "condition applies"))
    else:
        node = conic.node
        rows = []
        ok = True
        branches = conic.branch_lines()
        if branches is None or node is None:
            checks.append(CheckResult("b.iv", False,
                                      "branches are not rational"))
        else:
            for tag, branch in zip(("left", "right"), branches):
                cnt = sum(1 for p in union
                          if branch.contains(p) and p != node)
                rows.append((tag, str(cnt)))
                ok = ok and cnt >= d + 1
            rows.append(("d_plus_1", str(d + 1)))
            checks.append(CheckResult("b.iv", ok, "", tuple(rows)))
    return CaseAttempt("b", conic, tuple(checks), tuple(meets))


def _smooth_conic_evincing(point: HomogeneousForm, conic: CurveSpec,
                           on_c: PointSet, on_r: PointSet,
                           d: int) -> list[CheckResult]:
    base = next((p for p in on_r if p.is_real), None)
    if base is None:
        return [CheckResult(
            "b.ii.parametrization", False,
            "no real on-conic point anchors a real parametrization")]
    try:
        param = parametrize_conic(conic, base)
    except (ValueError, ArithmeticError) as err:
        return [CheckResult("b.ii.parametrization", False, str(err))]
    out = [CheckResult("b.ii.parametrization", True)]
    try:
        restricted = restrict_to_conic(point, param)
        out.extend(_rank_checks(restricted, on_c, on_r, "b.ii."))
    except (ValueError, ArithmeticError) as err:
        out.append(CheckResult("b.ii.restriction", False, str(err)))
    return out


def _reducible_conic_evincing(point: HomogeneousForm, conic: CurveSpec,
                              on_c: PointSet, on_r: PointSet, d: int,
                              meets: list) -> list[CheckResult]:
    branches = conic.branch_lines()
    node = conic.node
    if branches is None or node is None:
        return [CheckResult("b.ii.split", False,
                            "branches are not rational")]
    left, right = branches
    split_c = _branch_split(point, on_c, left, right, node, d)
    split_r = _branch_split(point, on_r, left, right, node, d)
    if split_c is None or split_r is None:
        return [CheckResult("b.ii.split", False,
                            "branch split is not unique over the given "
                            "support")]
    if split_c != split_r:
        return [CheckResult("b.ii.split", False,
                            "complex and real branch splits disagree")]
    out = [CheckResult("b.ii.split", True)]
    part_l, part_r = split_c
    meets.append(("P_C_left", part_l))
    meets.append(("P_C_right", part_r))
    for tag, part, branch in (("left.", part_l, left),
                              ("right.", part_r, right)):
        bc = PointSet.of(p for p in on_c if branch.contains(p))
        br = PointSet.of(p for p in on_r if branch.contains(p))
        try:
            restricted = restrict_to_line(part, branch)
            out.extend(_rank_checks(restricted, bc, br, "b.ii." + tag))
        except (ValueError, ArithmeticError) as err:
            out.append(CheckResult("b.ii." + tag + "restriction", False,
                                   str(err)))
    return out


# -- case (c) ----------------------------------------------------------------------

def verify_case_c(form: HomogeneousForm, s_c: PointSet, s_r: PointSet,
                  pair: CurveSpec, d: int) -> CaseAttempt:
    left, right = pair.branches
    on_c, off_c = split_on_curve(s_c, pair)
    on_r, off_r = split_on_curve(s_r, pair)
    real_data = _is_real_data(form, s_c, s_r)
    checks: list[CheckResult] = []
    checks.append(CheckResult(
        "c.i", _sorted_keys(off_c) == _sorted_keys(off_r),
        "", (("off_complex", str(len(off_c))),
             ("off_real", str(len(off_r))))))
    lc = PointSet.of(p for p in s_c if left.contains(p))
    lr = PointSet.of(p for p in s_r if left.contains(p))
    rc_set = PointSet.of(p for p in s_c if right.contains(p))
    rr_set = PointSet.of(p for p in s_r if right.contains(p))
    u_left, u_right = lc.union(lr), rc_set.union(rr_set)
    checks.append(CheckResult(
        "c.ii", len(u_left) >= d + 2 and len(u_right) >= d + 2, "",
        (("left_union", str(len(u_left))),
         ("right_union", str(len(u_right))),
         ("d_plus_2", str(d + 2)))))
    meets: list[tuple[str, HomogeneousForm]] = []
    try:
        basis = pair_power_basis(pair, d)
    except (ValueError, ArithmeticError) as err:
        checks.append(CheckResult("c.iii", False, str(err)))
        return CaseAttempt("c", pair, tuple(checks), ())
    o1 = curve_meet_point(form, off_c, basis, d)
    o2 = curve_meet_point(form, off_r, basis, d)
    if isinstance(o1, NotUnique) or isinstance(o2, NotUnique):
        reason = o1.reason if isinstance(o1, NotUnique) else o2.reason
        checks.append(CheckResult("c.iii", False, reason))
        return CaseAttempt("c", pair, tuple(checks), ())
    if o1 != o2:
        checks.append(CheckResult(
            "c.iii", False, "complex and real span reads disagree"))
        return CaseAttempt("c", pair, tuple(checks), ())
    if real_data and not o1.is_real:
        checks.append(CheckResult("c.iii", False,
                                  "meet point is not real"))
        return CaseAttempt("c", pair, tuple(checks), ())
    checks.append(CheckResult("c.iii", True))
    meets.append(("O_Gamma", o1))
    sub: list[CheckResult] = []
    left_basis = line_power_basis(left, d)
    right_basis = line_power_basis(right, d)
    sol = linalg.solve_columns(
        [list(v) for v in left_basis] + [list(v) for v in right_basis],
        list(o1.coeff_vector()))
    if sol is None:
        sub.append(CheckResult("c.iv.split", False,
                               "meet point left the joint span"))
    else:
        n = form.num_vars
        o_l = HomogeneousForm.zero(n, d)
        for lam, vec in zip(sol[:d + 1], left_basis):
            o_l = o_l + HomogeneousForm.from_coeff_vector(
                n, d, [lam * c for c in vec])
        o_r = HomogeneousForm.zero(n, d)
        for lam, vec in zip(sol[d + 1:], right_basis):
            o_r = o_r + HomogeneousForm.from_coeff_vector(
                n, d, [lam * c for c in vec])
        if real_data and (not o_l.is_real or not o_r.is_real):
            sub.append(CheckResult("c.iv.split", False,
                                   "line components are not real"))
        elif o_l.is_zero or o_r.is_zero:
            sub.append(CheckResult("c.iv.split", False,
                                   "a line component vanished"))
        else:
            sub.append(CheckResult("c.iv.split", True))
            meets.append(("O_l", o_l))
            meets.append(("O_r", o_r))
            for tag, part, line, bc, br in (
                    ("left.", o_l, left, lc, lr),
                    ("right.", o_r, right, rc_set, rr_set)):
                try:
                    restricted = restrict_to_line(part, line)
                    sub.extend(_rank_checks(restricted, bc, br,
                                            "c.iv." + tag))
                except (ValueError, ArithmeticError) as err:
                    sub.append(CheckResult("c.iv." + tag + "restriction",
                                           False, str(err)))
                sub.extend(_membership_checks(part, bc, br, d,
                                              "c.iv." + tag))
    checks.append(CheckResult(
        "c.iv", all(c.passed for c in sub),
        "; ".join(c.note for c in sub if c.note)))
    checks.extend(sub)
    return CaseAttempt("c", pair, tuple(checks), tuple(meets))


# -- classification ----------------------------------------------------------------

def classify_triple(form: HomogeneousForm, s_c: PointSet, s_r: PointSet,
                    d: int, m: int, case_label: Optional[str] = None,
                    mode: str = "raw",
                    line_threshold: Optional[int] = None,
                    conic_threshold: Optional[int] = None) -> CaseReport:
    notes: list[str] = []
    if mode == "raw":
        notes.append("rank hypotheses assumed: the given sets are taken "
                     "as evincing without global certification")
    hyp, h1_total = check_hypotheses(form, s_c, s_r, d)
    if not all(c.passed for c in hyp):
        return CaseReport(mode, m, d, case_label, tuple(hyp), h1_total,
                          (), (), (), (), tuple(notes))
    union = s_c.union(s_r)
    det = detect_structure(union, d, line_threshold, conic_threshold)
    attempts: list[CaseAttempt] = []
    for line, _count in det.lines:
        attempts.append(verify_case_a(form, s_c, s_r, line, d))
    for conic, _count in det.conics:
        attempts.append(verify_case_b(form, s_c, s_r, conic, d))
    for pair, _a, _b in det.pairs:
        attempts.append(verify_case_c(form, s_c, s_r, pair, d))
    if det.empty:
        notes.append("no rich line, conic, or disjoint line pair found; "
                     "input sits outside the structure dichotomy")
        near = find_rich_lines(union, d + 1)
        for (l1, n1), (l2, n2) in itertools.combinations(near, 2):
            if n1 == d + 1 and n2 == d + 1:
                try:
                    CurveSpec.two_lines(l1, l2)
                except ValueError:
                    continue
                notes.append("two disjoint lines hold exactly d+1 points "
                             "each; such points impose independent "
                             "conditions and carry no span failure")
                break
    return CaseReport(mode, m, d, case_label, tuple(hyp), h1_total,
                      det.lines, det.conics, det.pairs, tuple(attempts),
                      tuple(notes))


def classify(inst: Instance, line_threshold: Optional[int] = None,
             conic_threshold: Optional[int] = None) -> CaseReport:
    return classify_triple(inst.form, inst.s_c, inst.s_r, inst.d, inst.m,
                           case_label=inst.case_label, mode="instance",
                           line_threshold=line_threshold,
                           conic_threshold=conic_threshold)


def coherence_check(form: HomogeneousForm, s_c: PointSet, s_r: PointSet,
                    curve: CurveSpec, d: int):
    """Off-curve agreement read through the span hypothesis machinery."""
    return off_curve_agreement(s_c, s_r, curve, d)

"""Checks for every claim attached to a catalog entry.

Membership is exact over Q(u): x^3 + A x^2 + B x must be a square rational
function.  Torsion is sampled at seeded random fibers.  Independence is a
canonical-height regulator at one fiber, which suffices because
specialization is a homomorphism.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog_data
from .catalog import (DegenerateParameter, FamilyEntry, NonSquareY, catalog_list, get_entry,
                      j_invariant_function, random_parameter, sample_parameters, specialize)
from .curves import Curve, Point, SingularCurve
from .exact_math import RatFunc, factor_hints, format_rational, parse_expr, ratfunc_is_square
from .heights import canonical_height, regulator_value
from .torsion import group_tag, torsion_structure


class VerificationError(ArithmeticError):
    def __init__(self, message: str, report: "VerificationReport | None" = None):
        super().__init__(message)
        self.report = report


class SymbolicFailure(VerificationError):
    """A claimed x-coordinate whose x^3 + A x^2 + B x is not a square."""

    def __init__(self, message, value: RatFunc, report=None):
        super().__init__(message, report)
        self.value = value


class TorsionMismatch(VerificationError):
    def __init__(self, message, parameter: Fraction, report=None):
        super().__init__(message, report)
        self.parameter = parameter


class DependentPoints(VerificationError):
    def __init__(self, message, determinant: float, report=None):
        super().__init__(message, report)
        self.determinant = determinant


@dataclass
class Claim:
    name: str
    kind: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "passed": self.passed,
                "detail": self.detail, "data": self.data}


@dataclass
class VerificationReport:
    entry_id: str
    claims: list[Claim] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.claims)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.claims.extend(other.claims)
        self.elapsed += other.elapsed
        return self

    def to_json(self) -> dict:
        return {"entry": self.entry_id, "ok": self.ok, "elapsed": round(self.elapsed, 3),
                "claims": [c.to_json() for c in self.claims]}


def _entry(entry) -> FamilyEntry:
    return get_entry(entry) if isinstance(entry, str) else entry


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def _square_witness(value: RatFunc, y: RatFunc | None) -> RatFunc | None:
    if y is not None:
        return y if y * y == value else None
    return ratfunc_is_square(value)


def verify_membership(entry, strict: bool = True) -> VerificationReport:
    """Every claimed x (and the torsion generator) gives a square right-hand side over Q(u)."""
    entry = _entry(entry)
    t0 = time.perf_counter()
    report = VerificationReport(entry.id)
    pts = list(entry.claimed_points)
    if entry.torsion_generator is not None:
        pts.append(entry.torsion_generator)
    failures = []
    for p in pts:
        s = entry.rhs(p.x)
        w = _square_witness(s, p.y)
        report.claims.append(Claim(
            f"point {p.label}", "membership", w is not None,
            "printed y" if p.y is not None else "square root over Q(u)",
            {"x": str(p.x), "y": str(w) if w is not None else None},
        ))
        if w is None:
            failures.append((p.label, s))
    for c in entry.conditional_points:
        # A, B and x all move with param = substitution(new_param)
        sub = c.substitution
        A, B = entry.A.compose(sub), entry.B.compose(sub)
        x = c.x.compose(sub)
        s = x * (x * (x + A) + B)
        if entry.C is not None:
            s = s + entry.C.compose(sub)
        w = ratfunc_is_square(s)
        report.claims.append(Claim(
            f"conditional {c.label} at {entry.param} = {sub.pretty(c.new_param)}", "membership",
            w is not None, "square root over Q(new parameter)",
            {"x": str(x), "y": str(w) if w is not None else None},
        ))
        if w is None:
            failures.append((c.label, s))
    report.elapsed = time.perf_counter() - t0
    if failures and strict:
        label, s = failures[0]
        raise SymbolicFailure(f"{entry.id}: {label} gives a non-square right-hand side", s, report)
    return report


def verify_ancestry(entry, strict: bool = True) -> VerificationReport:
    """j(entry) equals j(ancestor) composed with the stored map, as rational functions."""
    entry = _entry(entry)
    t0 = time.perf_counter()
    report = VerificationReport(entry.id)
    if entry.chain and entry.C is None:
        parent_id, m = entry.chain[0]
        parent = get_entry(parent_id)
        same = j_invariant_function(parent).compose(m) == j_invariant_function(entry)
        report.claims.append(Claim(f"ancestry {parent_id}", "ancestry", same,
                                   f"{parent.param} = {m.pretty(entry.param)}"))
        if not same and strict:
            raise VerificationError(f"{entry.id}: j-invariant differs from {parent_id}", report)
    report.elapsed = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

def _contains(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    """Whether Z/b1 x Z/b2 has a subgroup isomorphic to Z/s1 x Z/s2 (invariant factors)."""
    b = (1,) * (2 - len(big)) + tuple(big)
    s = (1,) * (2 - len(small)) + tuple(small)
    return b[0] % s[0] == 0 and b[1] % s[1] == 0


def verify_torsion(entry, samples: int = 20, seed: int = 1, strict: bool = True) -> VerificationReport:
    """The claimed group at ``samples`` random fibers.

    A fiber whose group strictly contains the claimed one lies on a thin
    special subfamily (for instance Z/2 x Z/8 inside a Z/8 family); it is
    recorded and replaced by the next sample rather than counted.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    entry = _entry(entry)
    t0 = time.perf_counter()
    report = VerificationReport(entry.id)
    want = entry.claimed_torsion
    bad: list[tuple[Fraction, str]] = []
    rows, special = [], []
    for q in sample_parameters(entry, 5 * samples, seed):
        if len(rows) == samples:
            break
        E = entry.curve_at(q)
        res = torsion_structure(E)
        note = res.tag
        if res.exact and res.group != want and _contains(res.group, want):
            special.append({"param": format_rational(q), "group": res.tag})
            continue
        ok = res.exact and res.group == want
        if ok and entry.torsion_generator is not None:
            try:
                T = specialize(entry, q).torsion_point
                order = E.point_order(T)
            except (DegenerateParameter, NonSquareY) as exc:
                order, note = None, f"{note}; generator: {exc}"
            if order != want[-1]:
                ok = False
                note = f"{note}; generator order {order}"
        rows.append({"param": format_rational(q), "group": res.tag, "ok": ok})
        if not ok:
            bad.append((q, note))
    if len(rows) < samples:
        bad.append((Fraction(0), f"only {len(rows)} generic fibers among {5 * samples} samples"))
    detail = "; ".join(f"{format_rational(q)}: {n}" for q, n in bad)
    if special:
        detail = "; ".join(filter(None, [detail, "special fibers skipped: " + ", ".join(
            f"{r['param']} ({r['group']})" for r in special)]))
    report.claims.append(Claim(
        f"torsion {group_tag(want)} at {samples} fibers", "torsion", not bad, detail,
        {"samples": rows, "special": special, "seed": seed},
    ))
    report.elapsed = time.perf_counter() - t0
    if bad and strict:
        raise TorsionMismatch(f"{entry.id}: torsion differs at {format_rational(bad[0][0])}", bad[0][0], report)
    return report


# ---------------------------------------------------------------------------
# independence
# ---------------------------------------------------------------------------

def _nontorsion_fiber(entry: FamilyEntry, q) -> tuple[object, list[str]]:
    """Specialization at q, or the first integer >= 2 where all points lift and none is torsion."""
    if q is not None:
        return specialize(entry, q), []
    skipped = []
    n = 2
    while True:
        try:
            s = specialize(entry, n)
        except (DegenerateParameter, NonSquareY) as exc:
            skipped.append(f"{n}: {exc}")
        else:
            torsion = [lbl for lbl, P in s.points if s.curve.point_order(P, 12) is not None]
            if not torsion:
                return s, skipped
            skipped.append(f"{n}: {', '.join(torsion)} specialize to torsion")
        n += 1
        if n > 200:
            raise DegenerateParameter(f"{entry.id}: no usable integer fiber below 200")


def verify_independence(entry, q=None, eps: float = 1e-6, height_eps: float = 1e-10,
                        strict: bool = True, extra_points: list[Point] | None = None) -> VerificationReport:
    entry = _entry(entry)
    t0 = time.perf_counter()
    report = VerificationReport(entry.id)
    if not entry.claimed_points:
        report.elapsed = time.perf_counter() - t0
        return report
    s, skipped = _nontorsion_fiber(entry, None if q is None else Fraction(q))
    E = s.curve
    pts = [P for _, P in s.points] + list(extra_points or [])
    with factor_hints(entry.prime_hints(s.param)):
        heights = [canonical_height(E, P, height_eps) for P in pts]
        reg = regulator_value(E, pts, height_eps)
    torsion = [lbl for (lbl, _), h in zip(s.points, heights) if h.value <= h.error_bound]
    ok = not torsion and reg.value > eps and reg.value - reg.error_bound > 0
    report.claims.append(Claim(
        f"independence of {len(pts)} point(s) at {entry.param} = {format_rational(s.param)}", "independence",
        ok, "; ".join(skipped),
        {"param": format_rational(s.param), "regulator": reg.value, "error_bound": reg.error_bound,
         "heights": [h.value for h in heights], "curve": E.to_json(), "skipped": skipped},
    ))
    report.elapsed = time.perf_counter() - t0
    if not ok and strict:
        raise DependentPoints(f"{entry.id}: regulator {reg.value:.3g} at {format_rational(s.param)}",
                              reg.value, report)
    return report


# ---------------------------------------------------------------------------
# intermediate mechanisms and the two-parameter Hadano identity
# ---------------------------------------------------------------------------

def verify_mechanisms(strict: bool = True) -> VerificationReport:
    """Each square condition becomes a literal square after its substitution."""
    t0 = time.perf_counter()
    report = VerificationReport("mechanisms")
    for name, expr, var, subs in catalog_data.MECHANISMS:
        f = parse_expr(expr, var)
        for sub, new_var in subs:
            f = f.compose(parse_expr(sub, new_var))
        w = ratfunc_is_square(f)
        report.claims.append(Claim(name, "mechanism", w is not None, expr,
                                   {"root": str(w) if w is not None else None}))
    report.elapsed = time.perf_counter() - t0
    if not report.ok and strict:
        bad = next(c for c in report.claims if not c.passed)
        raise VerificationError(f"mechanism {bad.name} is not a square", report)
    return report


def _hadano_fiber(a: Fraction, v: Fraction):
    lit = f"(({a.numerator})/({a.denominator}))"
    ev = {k: parse_expr(s.replace("a", lit), "v") for k, s in catalog_data.HADANO_2PARAM.items()
          if isinstance(s, str)}
    P = tuple(parse_expr(s.replace("a", lit), "v")(v) for s in catalog_data.HADANO_2PARAM["P"])
    T = tuple(parse_expr(s.replace("a", lit), "v")(v) for s in catalog_data.HADANO_2PARAM["T"])
    return Curve(ev["A"](v), ev["B"](v)), Point(*P), Point(*T)


def verify_hadano_identity(samples: int = 20, seed: int = 0, strict: bool = True) -> VerificationReport:
    """The two-parameter model carries P and a point of order 6 at random (a, v)."""
    t0 = time.perf_counter()
    report = VerificationReport("Z6_HADANO(a,v)")
    rng = random.Random(seed)
    rows, bad = [], []
    while len(rows) < samples:
        a, v = random_parameter(rng), random_parameter(rng)
        try:
            E, P, T = _hadano_fiber(a, v)
        except (SingularCurve, ZeroDivisionError):
            continue
        ok = E.on_curve(P) and E.on_curve(T) and E.point_order(T) == 6
        rows.append({"a": format_rational(a), "v": format_rational(v), "ok": ok})
        if not ok:
            bad.append((a, v))
    report.claims.append(Claim(f"two-parameter model at {samples} (a, v)", "identity", not bad,
                               str(bad[:3]) if bad else "", {"samples": rows}))
    report.elapsed = time.perf_counter() - t0
    if bad and strict:
        raise VerificationError("two-parameter Hadano identity fails", report)
    return report


# ---------------------------------------------------------------------------
# everything
# ---------------------------------------------------------------------------

def verify_entry(entry_id: str, samples: int = 20, seed: int = 1, eps: float = 1e-6) -> VerificationReport:
    """All checks for one entry, collected rather than raised."""
    entry = get_entry(entry_id)
    report = VerificationReport(entry.id)
    for step in (
        lambda: verify_membership(entry, strict=False),
        lambda: verify_ancestry(entry, strict=False),
        lambda: verify_torsion(entry, samples, seed, strict=False),
        lambda: verify_independence(entry, eps=eps, strict=False),
    ):
        try:
            report.extend(step())
        except (ArithmeticError, ValueError) as exc:
            report.claims.append(Claim("error", "error", False, f"{type(exc).__name__}: {exc}"))
    return report


def verify_all(ids: list[str] | None = None, samples: int = 20, seed: int = 1, eps: float = 1e-6,
               workers: int = 1) -> list[VerificationReport]:
    """Reports in catalog order, then the mechanism and Hadano reports."""
    ids = ids or [e.id for e in catalog_list()]
    args = [(i, samples, seed, eps) for i in ids]
    if workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_entry_star, args))
    else:
        reports = [verify_entry(*a) for a in args]
    reports.append(verify_mechanisms(strict=False))
    reports.append(verify_hadano_identity(strict=False, seed=seed))
    return reports


def _verify_entry_star(args) -> VerificationReport:
    return verify_entry(*args)

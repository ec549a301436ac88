"""Rank-three curves from matched pairs of rank-two substitutions.

Both torsion families carry two rank-two subfamilies, obtained from a common
rank-one family by w = w1(u) and w = w2(u).  A fiber where w1(r) = w2(s)
carries the points of both, so three independent points.  The matching
equation is quadratic in s, and it is solvable exactly when a quartic in r is
a square: a genus-one curve t^2 = quartic(r), which is mapped to a Weierstrass
cubic whose rational points then produce as many r as needed.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import DegenerateParameter, NonSquareY, get_entry, specialize
from .curves import (INFINITY, ABMap, Curve, GeneralCurve, Point, SingularCurve, ab_isomorphism,
                     integral_twist, tate_to_ab)
from .exact_math import (Poly, RatFunc, factor_hints, format_rational, is_square_int, parse_expr, poly_gcd,
                         poly_sqrt, rational_sqrt, solve_quadratic)
from .heights import canonical_height, naive_height, regulator_value
from .torsion import torsion_structure

log = logging.getLogger(__name__)


class DegenerateQuartic(ValueError):
    pass


class ExhaustedSearch(RuntimeError):
    def __init__(self, message, attempted=()):
        super().__init__(message)
        self.attempted = list(attempted)


class IndependenceFailure(ArithmeticError):
    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


@dataclass(frozen=True)
class QuarticCurve:
    """t^2 = a4 r^4 + a3 r^3 + a2 r^2 + a1 r + a0 with a known point."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    seed: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "seed", tuple(Fraction(c) for c in self.seed))
        if self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        r, t = self.seed
        if t * t != self(r):
            raise ValueError(f"seed {self.seed} is not on the quartic")

    @property
    def poly(self) -> Poly:
        return Poly(list(reversed(self.coeffs)))

    def __call__(self, r) -> Fraction:
        return self.poly(Fraction(r))


@dataclass(frozen=True)
class MatchSpec:
    kind: str
    torsion: tuple[int, ...]
    matching: str                 # the bivariate equation, for display
    s_coeffs: tuple[Poly, Poly, Poly]  # coefficients of s^2, s, 1 as polynomials in r
    family: str                   # catalog id of the rank-two family in r
    partner: str                  # catalog id of the rank-two family in s
    base: str                     # the common rank-one family
    w1: RatFunc
    w2: RatFunc
    third: str                    # label of the base's conditional point that the match adds
    quartic: QuarticCurve
    cubic: Curve

    def at(self, r) -> tuple[Fraction, Fraction, Fraction]:
        r = Fraction(r)
        return tuple(c(r) for c in self.s_coeffs)

    def s_discriminant(self) -> Poly:
        c2, c1, c0 = self.s_coeffs
        return c1 * c1 - 4 * c2 * c0


def _r_poly(text: str) -> Poly:
    return parse_expr(text, "r").num


def _spec(kind, torsion, matching, s2, s1, s0, family, partner, base, w1, w2, third, quartic, seed, cubic):
    return MatchSpec(
        kind, torsion, matching, (_r_poly(s2), _r_poly(s1), _r_poly(s0)), family, partner, base,
        parse_expr(w1, "u"), parse_expr(w2, "u"), third, QuarticCurve(quartic, seed), Curve(*cubic),
    )


SPECS: dict[str, MatchSpec] = {
    "z8": _spec(
        "z8", (8,), "319 + 290 r - 29 r^2 - 120 r s - 11 s^2 + 10 r s^2 + r^2 s^2 = 0",
        "r^2 + 10*r - 11", "-120*r", "319 + 290*r - 29*r^2",
        "Z8_R2_A", "Z8_R2_B", "Z8_AA", "(11 - u^2)/(10*u)", "(29 - 12*u + u^2)/(-29 + u^2)", "x2",
        (29, 0, 62, 0, 3509), (1, 60), (-463, 45936),
    ),
    "z2x6": _spec(
        "z2x6", (2, 6),
        "-35 + 10 r - 15 r^2 - 14 s - 4 r s + 2 r^2 s + 21 s^2 + 2 r s^2 + r^2 s^2 = 0",
        "r^2 + 2*r + 21", "2*r^2 - 4*r - 14", "-15*r^2 + 10*r - 35",
        "Z26_R2_A", "Z26_R2_B", "Z26_AA", "2*(7 + u^2)/(-7 - 2*u + u^2)", "(5 - 2*u + u^2)/(-5 + u^2)", "x2",
        (1, 1, 20, -7, 49), (1, 8), (-43, 280),
    ),
}


def get_spec(kind: str) -> MatchSpec:
    try:
        return SPECS[kind]
    except KeyError:
        raise ValueError(f"unknown torsion kind {kind!r}; expected one of {sorted(SPECS)}") from None


def solve_match(spec: MatchSpec, r) -> list[Fraction]:
    """Rational s with matching(r, s) = 0; empty when the equation is identically zero or has none."""
    a, b, c = spec.at(r)
    if a == b == c == 0:
        return []
    try:
        return solve_quadratic(a, b, c)
    except ArithmeticError:
        return []
    except ValueError:
        return []


# ---------------------------------------------------------------------------
# quartic -> cubic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticMap:
    """Birational map between t^2 = quartic(r) and an AB cubic.

    The seed is moved to r = 0, the classical transformation for
    v^2 = a u^4 + b u^3 + c u^2 + d u + q^2 gives a long Weierstrass model, and
    that model is brought to AB shape.
    """

    quartic: QuarticCurve
    long_model: GeneralCurve
    to_ab: ABMap
    curve: Curve
    q: Fraction
    c: Fraction
    d: Fraction

    def forward(self, r, t) -> Point:
        u = Fraction(r) - self.quartic.seed[0]
        v = Fraction(t)
        q, c, d = self.q, self.c, self.d
        if u == 0:
            if v == q:
                return INFINITY
            a1, a2, a3 = self.long_model.a1, self.long_model.a2, self.long_model.a3
            return self.to_ab.forward(Point(-a2, a1 * a2 - a3))
        x = (2 * q * (v + q) + d * u) / (u * u)
        y = (4 * q * q * (v + q) + 2 * q * (d * u + c * u * u) - d * d * u * u / (2 * q)) / u ** 3
        return self.to_ab.forward(Point(x, y))

    def inverse(self, P: Point) -> tuple[Fraction, Fraction] | None:
        """(r, t) for P, or None when P has no affine image (the points over r = infinity)."""
        if P.is_infinity:
            return self.quartic.seed
        L = self.to_ab.inverse(P)
        q, c, d = self.q, self.c, self.d
        if L.y == 0:
            return None
        u = (2 * q * (L.x + c) - d * d / (2 * q)) / L.y
        v = -q + u * (u * L.x - d) / (2 * q)
        return u + self.quartic.seed[0], v


def quartic_to_cubic(Q: QuarticCurve) -> QuarticMap:
    f = Q.poly
    if poly_sqrt(f) is not None or poly_sqrt(-1 * f) is not None:
        raise DegenerateQuartic("the quartic is a square; the curve has genus zero")
    if poly_gcd(f, f.derivative()).degree > 0:
        raise DegenerateQuartic("the quartic has a repeated root")
    r0, q = Q.seed
    if q == 0:
        raise DegenerateQuartic("the seed must have t != 0")
    g = f.compose(Poly([r0, 1]))  # g(u) = f(r0 + u)
    e, d, c, b, a = (g[i] for i in range(5))
    assert e == q * q
    a1 = d / q
    a2 = c - d * d / (4 * q * q)
    a3 = 2 * q * b
    a4 = -4 * q * q * a
    a6 = a2 * a4
    W = GeneralCurve(a1, a2, a3, a4, a6)
    E, phi = tate_to_ab(W)
    M = QuarticMap(Q, W, phi, E, q, c, d)
    r1, t1 = Q.seed
    if M.inverse(M.forward(r1, -t1)) != (r1, -t1):
        raise ArithmeticError("quartic map does not invert on the seed")
    return M


def cubic_map(spec: MatchSpec) -> tuple[QuarticMap, ABMap]:
    """The quartic map and an isomorphism from its cubic onto the stated auxiliary cubic."""
    M = quartic_to_cubic(spec.quartic)
    iso = ab_isomorphism(M.curve, spec.cubic)
    if iso is None:
        raise ArithmeticError(f"{spec.kind}: transformed cubic is not isomorphic to {spec.cubic!r}")
    return M, iso


# ---------------------------------------------------------------------------
# points on the auxiliary cubic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AuxPoint:
    point: Point
    torsion: bool
    height: float

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "torsion": self.torsion, "height": self.height}


def aux_points(spec: MatchSpec, search_bound: int = 200) -> list[AuxPoint]:
    """Integral points with |x| <= bound on the auxiliary cubic, one per +-y."""
    if search_bound < 1:
        raise ValueError("search_bound must be at least 1")
    E = spec.cubic
    out = []
    for x in range(-search_bound, search_bound + 1):
        rhs = E.rhs(Fraction(x))
        if rhs < 0 or rhs.denominator != 1 or not is_square_int(int(rhs)):
            continue
        P = E.check(Point(Fraction(x), rational_sqrt(rhs)))
        tors = E.point_order(P, 12) is not None
        h = 0.0 if tors else canonical_height(E, P).value
        out.append(AuxPoint(P, tors, h))
    return out


def _generators(E: Curve, pts: list[AuxPoint], eps: float = 1e-6) -> list[Point]:
    """Greedy independent subset of the non-torsion points, lowest height first."""
    gens: list[Point] = []
    for a in sorted((p for p in pts if not p.torsion), key=lambda p: (p.height, p.point.x)):
        trial = gens + [a.point]
        if regulator_value(E, trial).value > eps:
            gens = trial
    return gens


def _torsion_points(E: Curve) -> list[Point]:
    res = torsion_structure(E)
    pts = {INFINITY}
    for g in res.generators:
        new = set()
        for T in pts:
            Q = T
            for _ in range(max(res.group)):
                new.add(Q)
                Q = E.add(Q, g)
        pts |= new
    return sorted(pts, key=lambda P: (not P.is_infinity, P.x or 0, P.y or 0))


# ---------------------------------------------------------------------------
# parameters and curves
# ---------------------------------------------------------------------------

@dataclass
class Candidate:
    r: Fraction
    s: list[Fraction]
    w: Fraction | None
    source: str
    status: str = "ok"
    curve: Curve | None = None
    points: list[Point] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "r": format_rational(self.r), "s": [format_rational(x) for x in self.s],
            "u": format_rational(self.r), "w": None if self.w is None else format_rational(self.w),
            "source": self.source, "status": self.status,
            "curve": None if self.curve is None else self.curve.to_json(),
            "points": [P.to_json() for P in self.points],
        }


def _third_point(spec: MatchSpec, E: Curve, w: Fraction) -> Point:
    """The base family's conditional point at w, carried onto E."""
    base = get_entry(spec.base)
    cond = next(c for c in base.conditional_points if c.label == spec.third)
    Ew = base.curve_at(w)
    P = Ew.lift_x(cond.x(w))
    if P is None:
        raise NonSquareY(f"{spec.third} is not on the base fiber at w = {format_rational(w)}")
    iso = ab_isomorphism(Ew, E)
    if iso is None:
        raise ArithmeticError("base fiber is not isomorphic to the rank-two fiber")
    return iso.forward(P)


def _evaluate(spec: MatchSpec, r: Fraction, source: str) -> Candidate:
    s_vals = solve_match(spec, r)
    cand = Candidate(r, s_vals, None, source)
    if not s_vals:
        cand.status = "filtered: no rational s"
        return cand
    try:
        w = spec.w1(r)
    except ZeroDivisionError:
        cand.status = "filtered: w1 has a pole"
        return cand
    cand.w = w
    if any(spec.w2(s) != w for s in s_vals if spec.w2.den(s) != 0):
        raise ArithmeticError(f"w1({r}) != w2(s) for a solution of the matching equation")
    try:
        sp = specialize(get_entry(spec.family), r)
        E = sp.curve
        third = _third_point(spec, E, w)
    except (DegenerateParameter, NonSquareY, SingularCurve, ZeroDivisionError) as exc:
        cand.status = f"filtered: {exc}"
        return cand
    cand.curve = E
    cand.points = [P for _, P in sp.points] + [third]
    return cand


def _partner_check(spec: MatchSpec, cand: Candidate) -> bool | None:
    """j of the partner family at s equals j of the candidate curve (None if no usable s)."""
    partner = get_entry(spec.partner)
    for s in cand.s:
        try:
            return partner.curve_at(s).j_invariant() == cand.curve.j_invariant()
        except DegenerateParameter:
            continue
    return None


def iter_candidates(spec: MatchSpec, search_bound: int = 200, max_multiple: int = 3):
    """Candidates in order of the naive height of the auxiliary point, seed first."""
    M, iso = cubic_map(spec)
    E = spec.cubic
    seen: set[Fraction] = set()
    yield _evaluate(spec, spec.quartic.seed[0], "seed")
    seen.add(spec.quartic.seed[0])
    pts = aux_points(spec, search_bound)
    gens = _generators(E, pts)
    if not gens:
        raise ExhaustedSearch(f"{spec.kind}: no non-torsion point with |x| <= {search_bound}")
    tors = _torsion_points(E)
    combos = []
    rng = range(-max_multiple, max_multiple + 1)
    for ns in itertools.product(rng, repeat=len(gens)):
        if not any(ns):
            continue
        Q = INFINITY
        for n, g in zip(ns, gens):
            Q = E.add(Q, E.scalar_mul(n, g))
        for T in tors:
            R = E.add(Q, T)
            if not R.is_infinity:
                combos.append((naive_height(R), ns, T, R))
    combos.sort(key=lambda c: (c[0], c[3].x, c[3].y))
    for _, ns, T, R in combos:
        rt = M.inverse(iso.inverse(R))
        if rt is None:
            continue
        r, t = rt
        if r in seen:
            continue
        seen.add(r)
        assert t * t == spec.quartic(r)
        label = " + ".join(f"{n}*{g}" for n, g in zip(ns, gens) if n)
        yield _evaluate(spec, r, f"{label} + {T}" if not T.is_infinity else label)


def generate_parameters(spec: MatchSpec, count: int, search_bound: int = 200,
                        filtered: list | None = None, max_candidates: int = 200) -> list[Candidate]:
    if count < 1:
        return []
    out: list[Candidate] = []
    tried: list[Candidate] = []
    seen_j: set[Fraction] = set()
    for cand in iter_candidates(spec, search_bound):
        tried.append(cand)
        if cand.status == "ok" and cand.curve.j_invariant() in seen_j:
            continue
        if cand.status != "ok":
            log.info("%s: r = %s %s", spec.kind, format_rational(cand.r), cand.status)
            if filtered is not None:
                filtered.append(cand)
            continue
        seen_j.add(cand.curve.j_invariant())
        out.append(cand)
        if len(out) == count or len(tried) >= max_candidates:
            break
    if len(out) < count:
        raise ExhaustedSearch(f"{spec.kind}: found {len(out)} of {count} parameters", tried)
    return out


@dataclass
class Rank3Curve:
    candidate: Candidate
    torsion: str
    regulator: float
    error_bound: float
    partner_j_equal: bool | None

    def to_json(self) -> dict:
        d = self.candidate.to_json()
        d.update(torsion=self.torsion, regulator=self.regulator, error_bound=self.error_bound,
                 partner_j_equal=self.partner_j_equal)
        return d


def _reduced(spec: MatchSpec, cand: Candidate) -> tuple[Curve, list[Point]]:
    """The twist-minimal integral model of the candidate curve and its points."""
    E = cand.curve
    with factor_hints(get_entry(spec.family).prime_hints(cand.r)):
        A, B, t = integral_twist(E.A, E.B)
    red = Curve(A, B)
    return red, [red.check(Point(t * t * P.x, t ** 3 * P.y)) for P in cand.points]


def build_rank3(spec: MatchSpec, count: int, eps: float = 1e-6, search_bound: int = 200,
                filtered: list | None = None, failures: list | None = None,
                max_candidates: int = 60) -> list[Rank3Curve]:
    """count curves with the target torsion and three independent points."""
    if count < 1:
        raise ValueError("count must be at least 1")
    out: list[Rank3Curve] = []
    failed: list[Candidate] = []
    tried = 0
    seen_j: set[Fraction] = set()
    for cand in iter_candidates(spec, search_bound):
        tried += 1
        if tried > max_candidates:
            break
        if cand.status != "ok":
            log.info("%s: r = %s %s", spec.kind, format_rational(cand.r), cand.status)
            if filtered is not None:
                filtered.append(cand)
            continue
        E = cand.curve
        if E.j_invariant() in seen_j:
            continue
        res = torsion_structure(E)
        if res.group != spec.torsion:
            cand.status = f"torsion {res.tag}"
            failed.append(cand)
            continue
        with factor_hints(get_entry(spec.family).prime_hints(cand.r)):
            reg = regulator_value(E, cand.points)
        if not reg.value - reg.error_bound > eps:
            cand.status = f"regulator {reg.value:.4g}"
            failed.append(cand)
            continue
        seen_j.add(E.j_invariant())
        cand.curve, cand.points = _reduced(spec, cand)
        out.append(Rank3Curve(cand, res.tag, reg.value, reg.error_bound, _partner_check(spec, cand)))
        if len(out) == count:
            break
    if failures is not None:
        failures.extend(failed)
    if len(out) < count:
        if failed:
            raise IndependenceFailure(f"{spec.kind}: {len(failed)} candidate(s) failed the checks", failed)
        raise ExhaustedSearch(f"{spec.kind}: found {len(out)} of {count} curves", [])
    return out

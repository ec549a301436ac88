"""Weierstrass models over Q and the chord-tangent group law.

Two model types share one implementation through their a-invariants:

* :class:`Curve` is ``y^2 = x^3 + A x^2 + B x``; (0, 0) is always 2-torsion.
* :class:`GeneralCurve` is the long form with ``a1, a2, a3, a4, a6``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_math import Q, factor_integer, format_rational, parse_rational, rational_roots, rational_sqrt, Poly


class SingularCurve(ValueError):
    pass


class PointNotOnCurve(ValueError):
    pass


class NoRational2Torsion(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when both coordinates are None."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Q(self.x))
            object.__setattr__(self, "y", Q(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(infinity)"
        return f"Point({format_rational(self.x)}, {format_rational(self.y)})"

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": format_rational(self.x), "y": format_rational(self.y)}

    @classmethod
    def from_json(cls, data) -> "Point":
        if data == "infinity":
            return INFINITY
        return cls(parse_rational(data["x"]), parse_rational(data["y"]))


INFINITY = Point()


class _Weierstrass:
    """Group law and invariants shared by both model types."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6")

    def _init_ainvs(self, a1, a2, a3, a4, a6):
        for name, val in zip(_Weierstrass.__slots__, (a1, a2, a3, a4, a6)):
            object.__setattr__(self, name, Q(val))
        if self.discriminant == 0:
            raise SingularCurve(f"singular model {self!r}")

    def __setattr__(self, name, value):
        raise AttributeError("curves are immutable")

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self) -> tuple[Fraction, Fraction]:
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def j_invariant(self) -> Fraction:
        c4, _ = self.c_invariants
        return c4 ** 3 / self.discriminant

    # -- points -------------------------------------------------------------
    def on_curve(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        a1, a2, a3, a4, a6 = self.ainvs
        x, y = P.x, P.y
        return y * y + a1 * x * y + a3 * y == ((x + a2) * x + a4) * x + a6

    def check(self, P: Point) -> Point:
        if not self.on_curve(P):
            raise PointNotOnCurve(f"{P!r} is not on {self!r}")
        return P

    def lift_x(self, x) -> Point | None:
        """A point with the given x (larger y when there are two), or None."""
        x = Q(x)
        a1, a2, a3, a4, a6 = self.ainvs
        h = a1 * x + a3
        f = ((x + a2) * x + a4) * x + a6
        s = rational_sqrt(h * h + 4 * f)
        if s is None:
            return None
        return Point(x, (s - h) / 2)

    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, -P.y - self.a1 * P.x - self.a3)

    def _add(self, P: Point, R: Point) -> Point:
        if P.is_infinity:
            return R
        if R.is_infinity:
            return P
        a1, a2, a3, a4, a6 = self.ainvs
        x1, y1, x2, y2 = P.x, P.y, R.x, R.y
        if x1 == x2:
            den = y1 + y2 + a1 * x2 + a3
            if den == 0:
                return INFINITY
            den = 2 * y1 + a1 * x1 + a3
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            nu = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def add(self, P: Point, R: Point) -> Point:
        return self._add(self.check(P), self.check(R))

    def scalar_mul(self, n: int, P: Point) -> Point:
        self.check(P)
        if n < 0:
            n, P = -n, self.neg(P)
        result, base = INFINITY, P
        while n:
            if n & 1:
                result = self._add(result, base)
            n >>= 1
            if n:
                base = self._add(base, base)
        return result

    def point_order(self, P: Point, max_order: int = 16) -> int | None:
        """Exact order of P if it is at most max_order, else None."""
        self.check(P)
        R = P
        for n in range(1, max_order + 1):
            if R.is_infinity:
                return n
            R = self._add(R, P)
        return None

    # -- integral long model --------------------------------------------------
    def short_cubic(self) -> tuple[Fraction, Fraction, Fraction]:
        """(a2', a4', a6') of ``Y^2 = x^3 + a2' x^2 + a4' x + a6'`` with Y = y + (a1 x + a3)/2."""
        b2, b4, b6, _ = self.b_invariants
        return b2 / 4, b4 / 2, b6 / 4


class Curve(_Weierstrass):
    """y^2 = x^3 + A x^2 + B x."""

    __slots__ = ()

    def __init__(self, A, B):
        A, B = Q(A), Q(B)
        if B == 0 or A * A == 4 * B:
            raise SingularCurve(f"y^2 = x^3 + ({A})x^2 + ({B})x is singular")
        self._init_ainvs(0, A, 0, B, 0)

    @property
    def A(self) -> Fraction:
        return self.a2

    @property
    def B(self) -> Fraction:
        return self.a4

    def rhs(self, x) -> Fraction:
        x = Q(x)
        return x * (x * x + self.a2 * x + self.a4)

    def j_invariant(self) -> Fraction:
        A, B = self.A, self.B
        return 256 * (A * A - 3 * B) ** 3 / (B * B * (A * A - 4 * B))

    def two_torsion(self) -> list[Point]:
        roots = sorted(rational_roots(Poly([self.B, self.A, 1])))
        return [Point(0, 0)] + [Point(r, 0) for r in roots]

    def twist(self, t) -> "Curve":
        t = Q(t)
        return Curve(t * t * self.A, t ** 4 * self.B)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(("AB", self.A, self.B))

    def __repr__(self) -> str:
        return f"Curve(A={format_rational(self.A)}, B={format_rational(self.B)})"

    def to_json(self) -> dict:
        return {"model": "AB", "A": format_rational(self.A), "B": format_rational(self.B)}


class GeneralCurve(_Weierstrass):
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    __slots__ = ()

    def __init__(self, a1, a2, a3, a4, a6):
        self._init_ainvs(a1, a2, a3, a4, a6)

    def __eq__(self, other):
        return isinstance(other, GeneralCurve) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(("W",) + self.ainvs)

    def __repr__(self) -> str:
        return "GeneralCurve(" + ", ".join(format_rational(a) for a in self.ainvs) + ")"

    def to_json(self) -> dict:
        return {"model": "W", "a": [format_rational(a) for a in self.ainvs]}


def curve_from_json(data: dict) -> Curve | GeneralCurve:
    if data.get("model") == "AB":
        return Curve(parse_rational(data["A"]), parse_rational(data["B"]))
    if data.get("model") == "W":
        return GeneralCurve(*(parse_rational(a) for a in data["a"]))
    raise ValueError(f"unknown curve model in {data!r}")


def curve_ab(A, B) -> Curve:
    return Curve(A, B)


def tate_curve(b, c) -> GeneralCurve:
    """E(b, c): y^2 + (1 - c)xy - by = x^3 - bx^2, with (0, 0) on it."""
    b, c = Q(b), Q(c)
    if b == 0:
        raise SingularCurve("Tate normal form needs b != 0")
    return GeneralCurve(1 - c, -b, -b, 0, 0)


# ---------------------------------------------------------------------------
# twists and isomorphisms of AB models
# ---------------------------------------------------------------------------

def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _qval(q: Fraction, p: int) -> int | None:
    if q == 0:
        return None
    return _valuation(q.numerator, p) - _valuation(q.denominator, p)


def integral_twist(A, B) -> tuple[Fraction, Fraction, Fraction]:
    """(A', B', t) with A' = t^2 A, B' = t^4 B integral and minimal.

    Minimal means no prime p has p^2 | A' and p^4 | B'.  Requires factoring
    the denominators and gcd(num A, num B).
    """
    A, B = Q(A), Q(B)
    if B == 0:
        raise SingularCurve("B = 0")
    g = math.gcd(A.numerator, B.numerator)
    support = A.denominator * B.denominator * g
    t = Fraction(1)
    for p in factor_integer(support):
        vb = _qval(B, p)
        va = _qval(A, p)
        e = -(vb // 4)  # smallest e with 4e + vb >= 0
        if va is not None:
            e = max(e, -(va // 2))
        t *= Fraction(p) ** e
    return t * t * A, t ** 4 * B, t


@dataclass(frozen=True)
class ABMap:
    """Coordinate change (x, y) -> (t^2 (x - e), t^3 (y + (a1 x + a3)/2))."""

    e: Fraction
    t: Fraction
    a1: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)

    def forward(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        t = self.t
        return Point(t * t * (P.x - self.e), t ** 3 * (P.y + (self.a1 * P.x + self.a3) / 2))

    def inverse(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        t = self.t
        x = P.x / (t * t) + self.e
        return Point(x, P.y / t ** 3 - (self.a1 * x + self.a3) / 2)


def tate_to_ab(E: _Weierstrass, root: Fraction | None = None) -> tuple[Curve, ABMap]:
    """AB model isomorphic to E, with the point map.

    Completes the square in y and translates a rational root of the resulting
    cubic to x = 0; by default the smallest root, or ``root`` if given.  The
    result is then scaled to a minimal integral model.
    """
    a2, a4, a6 = E.short_cubic()
    roots = rational_roots(Poly([a6, a4, a2, 1]))
    if not roots:
        raise NoRational2Torsion(f"{E!r} has no rational 2-torsion point")
    if root is None:
        e = roots[0]
    else:
        e = Q(root)
        if e not in roots:
            raise NoRational2Torsion(f"{e} is not a root of the 2-division cubic")
    A = 3 * e + a2
    B = (3 * e + 2 * a2) * e + a4
    A2, B2, t = integral_twist(A, B)
    return Curve(A2, B2), ABMap(e, t, E.a1, E.a3)


def ab_isomorphism(E1: Curve, E2: Curve) -> ABMap | None:
    """A rational map E1 -> E2 of the shape x -> t^2 (x - e), or None.

    e runs over the x-coordinates of the rational 2-torsion of E1, which are
    the only translations keeping the AB shape.
    """
    if E1.j_invariant() != E2.j_invariant():
        return None
    for T in E1.two_torsion():
        e = T.x
        A = 3 * e + E1.A
        B = (3 * e + 2 * E1.A) * e + E1.B
        if A != 0:
            t2 = E2.A / A
            t = rational_sqrt(t2)
            if t is not None and t ** 4 * B == E2.B:
                return ABMap(e, t)
        elif E2.A == 0:
            t4 = E2.B / B
            t2 = rational_sqrt(t4)
            if t2 is not None:
                t = rational_sqrt(t2)
                if t is not None:
                    return ABMap(e, t)
    return None


def isomorphic(E1: Curve, E2: Curve) -> bool:
    return ab_isomorphism(E1, E2) is not None

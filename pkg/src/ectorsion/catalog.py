"""Registry of the parametrized families and their claimed points.

Entries are built once from :mod:`ectorsion.catalog_data`.  Derived entries
are recomputed from their parent by substitution; printed coefficients, when
present, must agree with the recomputation up to a quartic twist, and the twist
found is recorded on the entry.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from . import catalog_data
from .curves import Curve, GeneralCurve, Point, SingularCurve, integral_twist
from .exact_math import (Poly, RatFunc, as_ratfunc, format_rational, parse_expr,
                         ratfunc_is_square, rational_roots, rational_sqrt)
from .torsion import parse_group_tag, group_tag


class CatalogError(ValueError):
    pass


class DegenerateParameter(ValueError):
    pass


class NonSquareY(ValueError):
    pass


@dataclass(frozen=True)
class ClaimedPoint:
    label: str
    x: RatFunc
    y: RatFunc | None = None

    def scaled(self, t: RatFunc) -> "ClaimedPoint":
        return ClaimedPoint(self.label, self.x * t * t, None if self.y is None else self.y * t ** 3)

    def composed(self, sub: RatFunc) -> "ClaimedPoint":
        return ClaimedPoint(self.label, self.x.compose(sub), None if self.y is None else self.y.compose(sub))


@dataclass(frozen=True)
class ConditionalPoint:
    """x(param) that becomes a point once param = substitution(new_param)."""

    label: str
    x: RatFunc
    substitution: RatFunc
    new_param: str


@dataclass(frozen=True)
class FamilyEntry:
    id: str
    param: str
    A: RatFunc
    B: RatFunc
    claimed_torsion: tuple[int, ...]
    claimed_points: tuple[ClaimedPoint, ...] = ()
    torsion_generator: ClaimedPoint | None = None
    conditional_points: tuple[ConditionalPoint, ...] = ()
    C: RatFunc | None = None  # constant term; only the Z/7 model has one
    chain: tuple[tuple[str, RatFunc], ...] = ()  # (ancestor id, ancestor parameter in terms of ours)
    twist: RatFunc = field(default_factory=lambda: as_ratfunc(1))
    provenance: str = ""
    degeneracy: tuple[Fraction, ...] = ()

    @property
    def model(self) -> str:
        return "AB" if self.C is None else "W"

    @property
    def parent(self) -> str | None:
        return self.chain[0][0] if self.chain else None

    def curve_at(self, q) -> Curve | GeneralCurve:
        try:
            A, B = self.A(q), self.B(q)
            if self.C is None:
                return Curve(A, B)
            return GeneralCurve(0, A, 0, B, self.C(q))
        except ZeroDivisionError as exc:
            raise DegenerateParameter(f"{self.id}: pole at {q}") from exc
        except SingularCurve as exc:
            raise DegenerateParameter(f"{self.id}: singular fiber at {q}") from exc

    def prime_hints(self, q) -> tuple[int, ...]:
        """Integers at q whose primes cover the discriminant of the fiber; see factor_hints."""
        q = Fraction(q)
        out = {q.numerator, q.denominator}
        for f in _hint_polys(self):
            v = f(q)
            out.update((v.numerator, v.denominator))
        return tuple(sorted(abs(v) for v in out if abs(v) > 1))

    def rhs(self, x: RatFunc) -> RatFunc:
        s = x * (x * (x + self.A) + self.B)
        if self.C is not None:
            s = s + self.C
        return s

    def to_json(self) -> dict:
        def rf(f):
            return f.to_json()

        def pt(p):
            d = {"label": p.label, "x": rf(p.x)}
            if p.y is not None:
                d["y"] = rf(p.y)
            return d

        out = {
            "id": self.id,
            "parameter": self.param,
            "model": self.model,
            "A": rf(self.A),
            "B": rf(self.B),
            "claimed_points": [pt(p) for p in self.claimed_points],
            "torsion": group_tag(self.claimed_torsion),
            "torsion_generator": pt(self.torsion_generator) if self.torsion_generator else None,
            "conditional_points": [
                {"label": c.label, "x": rf(c.x), "substitution": rf(c.substitution), "new_parameter": c.new_param}
                for c in self.conditional_points
            ],
            "ancestry": [{"id": a, "map": rf(m)} for a, m in self.chain],
            "degeneracy": [format_rational(q) for q in self.degeneracy],
            "provenance": self.provenance,
        }
        if self.C is not None:
            out["C"] = rf(self.C)
        return out


# ---------------------------------------------------------------------------
# substitution and degeneracy
# ---------------------------------------------------------------------------

def _clearing_twist(A: RatFunc, B: RatFunc, sub: RatFunc) -> RatFunc:
    """t with t^2 A(sub), t^4 B(sub) polynomial."""
    d = sub.den
    if A.is_poly() and B.is_poly():
        k = max(math.ceil(max(A.num.degree, 0) / 2), math.ceil(max(B.num.degree, 0) / 4))
        return as_ratfunc(d ** k)
    A1, B1 = A.compose(sub), B.compose(sub)
    return as_ratfunc(A1.den * B1.den)


def _content_twist(A: RatFunc, B: RatFunc) -> Fraction:
    """Constant c making c^2 A, c^4 B integral with no removable prime power."""
    if not (A.is_poly() and B.is_poly()) or A.num.is_zero():
        return Fraction(1)
    cA, _ = A.num.primitive()
    cB, _ = B.num.primitive()
    return integral_twist(cA, cB)[2]


_HINT_POLYS: dict[str, tuple[Poly, ...]] = {}


def _hint_polys(entry: FamilyEntry) -> tuple[Poly, ...]:
    """Irreducible factors over Z of the numerators and denominators of A, B, A^2 - 4B (or C)."""
    if entry.id not in _HINT_POLYS:
        import sympy

        x = sympy.Symbol("x")
        funcs = [entry.A, entry.B, entry.A * entry.A - 4 * entry.B]
        if entry.C is not None:
            funcs.append(entry.C)
        polys = set()
        for f in funcs:
            for g in (f.num, f.den):
                if g.is_constant():
                    continue
                _, cs = g.primitive()
                expr = sympy.Poly(list(reversed(cs)), x)
                for h, _ in expr.factor_list()[1]:
                    polys.add(Poly(list(reversed([int(c) for c in h.all_coeffs()]))))
        _HINT_POLYS[entry.id] = tuple(sorted(polys, key=lambda p: (p.degree, p.int_coeffs)))
    return _HINT_POLYS[entry.id]


def substitute(entry: FamilyEntry, sub: RatFunc, new_param: str, new_id: str | None = None) -> FamilyEntry:
    """Compose the family with param = sub(new_param) and clear denominators by a quartic twist."""
    sub = as_ratfunc(sub)
    if sub.is_constant():
        raise ValueError("substitution must be non-constant")
    t = _clearing_twist(entry.A, entry.B, sub)
    t = t * _content_twist(entry.A.compose(sub) * t * t, entry.B.compose(sub) * t ** 4)
    t2 = t * t
    A = entry.A.compose(sub) * t2
    B = entry.B.compose(sub) * t2 * t2
    C = None if entry.C is None else entry.C.compose(sub) * t2 ** 3
    pts = tuple(p.composed(sub).scaled(t) for p in entry.claimed_points)
    gen = entry.torsion_generator.composed(sub).scaled(t) if entry.torsion_generator else None
    chain = ((entry.id, sub),) + tuple((a, m.compose(sub)) for a, m in entry.chain)
    out = FamilyEntry(
        id=new_id or f"{entry.id}*", param=new_param, A=A, B=B, C=C,
        claimed_torsion=entry.claimed_torsion, claimed_points=pts, torsion_generator=gen,
        chain=chain, twist=t, provenance=entry.provenance,
    )
    return replace(out, degeneracy=compute_degeneracy(out))


def _roots(f: Poly) -> set[Fraction]:
    if f.is_zero() or f.is_constant():
        return set()
    return set(rational_roots(f))


def compute_degeneracy(entry: FamilyEntry) -> tuple[Fraction, ...]:
    """Rational parameters with B = 0, a singular fiber, or a vanishing denominator."""
    A, B, C = entry.A, entry.B, entry.C
    bad: set[Fraction] = set()
    if C is None:
        bad |= _roots(B.num)
        bad |= _roots((A * A - 4 * B).num)
    else:
        disc = A * A * B * B - 4 * B ** 3 - 4 * A ** 3 * C - 27 * C * C + 18 * A * B * C
        bad |= _roots(disc.num)
    for f in (A, B, C):
        if f is not None:
            bad |= _roots(f.den)
    pts = list(entry.claimed_points) + ([entry.torsion_generator] if entry.torsion_generator else [])
    for p in pts:
        bad |= _roots(p.x.den)
        if p.y is not None:
            bad |= _roots(p.y.den)
    for _, m in entry.chain:
        bad |= _roots(m.den)
    return tuple(sorted(bad))


# ---------------------------------------------------------------------------
# building the registry
# ---------------------------------------------------------------------------

def _parse_point(label, xs, ys, var) -> ClaimedPoint:
    return ClaimedPoint(label, parse_expr(xs, var), None if ys is None else parse_expr(ys, var))


def _reconcile(derived: FamilyEntry, A: RatFunc, B: RatFunc) -> FamilyEntry:
    """Rescale a derived entry onto printed coefficients (A, B)."""
    t = ratfunc_is_square(A / derived.A)
    if t is None:
        raise CatalogError(f"{derived.id}: printed A is not a square multiple of the composed A")
    if derived.B * t ** 4 != B:
        raise CatalogError(f"{derived.id}: printed B does not match the twist fixed by A")
    return replace(
        derived, A=A, B=B,
        claimed_points=tuple(p.scaled(t) for p in derived.claimed_points),
        torsion_generator=derived.torsion_generator.scaled(t) if derived.torsion_generator else None,
        twist=derived.twist * t,
    )


def _build(spec: dict, registry: dict[str, FamilyEntry]) -> FamilyEntry:
    var = spec["param"]
    torsion = parse_group_tag(spec["torsion"])
    own_points = tuple(_parse_point(l, x, y, var) for l, x, y in spec.get("points", []))
    conditional = tuple(
        ConditionalPoint(l, parse_expr(x, var), parse_expr(s, np), np)
        for l, x, s, np in spec.get("conditional", [])
    )
    gen_spec = spec.get("generator")
    if "parent" in spec:
        parent = registry[spec["parent"]]
        sub = parse_expr(spec["sub"], var)
        carried = tuple(_parse_point(l, x, y, parent.param) for l, x, y in spec.get("parent_points", []))
        base = replace(parent, claimed_points=carried)
        if gen_spec is not None:
            base = replace(base, torsion_generator=None)
        entry = substitute(base, sub, var, spec["id"])
        if "A" in spec:
            entry = _reconcile(entry, parse_expr(spec["A"], var), parse_expr(spec["B"], var))
        entry = replace(entry, claimed_points=entry.claimed_points + own_points)
    else:
        entry = FamilyEntry(
            id=spec["id"], param=var, A=parse_expr(spec["A"], var), B=parse_expr(spec["B"], var),
            C=parse_expr(spec["C"], var) if "C" in spec else None,
            claimed_torsion=torsion, claimed_points=own_points,
        )
    if gen_spec is not None:
        entry = replace(entry, torsion_generator=_parse_point("T", gen_spec[0], gen_spec[1], var))
    entry = replace(entry, id=spec["id"], claimed_torsion=torsion, conditional_points=conditional,
                    provenance=spec["provenance"])
    return replace(entry, degeneracy=compute_degeneracy(entry))


@lru_cache(maxsize=1)
def _registry() -> tuple[FamilyEntry, ...]:
    reg: dict[str, FamilyEntry] = {}
    for spec in catalog_data.ENTRIES:
        reg[spec["id"]] = _build(spec, reg)
    return tuple(reg.values())


def catalog_list() -> list[FamilyEntry]:
    return list(_registry())


def get_entry(entry_id: str) -> FamilyEntry:
    for e in _registry():
        if e.id == entry_id:
            return e
    raise KeyError(f"no catalog entry {entry_id!r}")


def catalog_json() -> dict:
    return {"entries": [e.to_json() for e in catalog_list()]}


# ---------------------------------------------------------------------------
# specialization and sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Specialization:
    param: Fraction
    curve: Curve | GeneralCurve
    points: tuple[tuple[str, Point], ...]
    torsion_point: Point | None


def _lift(E, p: ClaimedPoint, q: Fraction, entry_id: str) -> Point:
    try:
        x = p.x(q)
        y = None if p.y is None else p.y(q)
    except ZeroDivisionError as exc:
        raise DegenerateParameter(f"{entry_id}: {p.label} has a pole at {q}") from exc
    if y is not None:
        return E.check(Point(x, y))
    P = E.lift_x(x)
    if P is None:
        raise NonSquareY(f"{entry_id}: y^2 for {p.label} is not a rational square at {q}")
    return P


def specialize(entry: FamilyEntry, q) -> Specialization:
    q = Fraction(q)
    if q in entry.degeneracy:
        raise DegenerateParameter(f"{entry.id}: {format_rational(q)} is in the degeneracy set")
    E = entry.curve_at(q)
    pts = tuple((p.label, _lift(E, p, q, entry.id)) for p in entry.claimed_points)
    T = _lift(E, entry.torsion_generator, q, entry.id) if entry.torsion_generator else None
    return Specialization(q, E, pts, T)


def random_parameter(rng: random.Random, bound: int = 50) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def sample_parameters(entry: FamilyEntry, count: int, seed: int = 0, bound: int = 50) -> list[Fraction]:
    """count distinct non-degenerate parameters, deterministic in seed."""
    rng = random.Random(seed)
    out: list[Fraction] = []
    seen: set[Fraction] = set()
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise DegenerateParameter(f"{entry.id}: could not find {count} good parameters")
        q = random_parameter(rng, bound)
        if q in seen or q in entry.degeneracy:
            continue
        seen.add(q)
        try:
            entry.curve_at(q)
        except DegenerateParameter:
            continue
        out.append(q)
    return out


def first_good_integer(entry: FamilyEntry, start: int = 2) -> int:
    q = start
    while True:
        try:
            specialize(entry, q)
            return q
        except (DegenerateParameter, NonSquareY):
            q += 1


def j_invariant_function(entry: FamilyEntry) -> RatFunc:
    A, B = entry.A, entry.B
    if entry.C is not None:
        raise ValueError("j-invariant function implemented for AB models only")
    return 256 * (A * A - 3 * B) ** 3 / (B * B * (A * A - 4 * B))

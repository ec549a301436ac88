"""Rational torsion: point counts mod p, the reduction bound, and the exact group.

The exact group comes from rational roots of division polynomials (odd part)
and repeated halving of 2-torsion (2-primary part).  Roots are found by p-adic
lifting, so there is no candidate cap to fall back from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import divpoly
from .curves import INFINITY, Curve, Point, _Weierstrass
from .exact_math import Poly, RootSearchFailed, _SMALL_PRIMES, rational_roots

MAZUR_GROUPS: tuple[tuple[int, ...], ...] = tuple(
    [(n,) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)] + [(2, 2 * m) for m in (1, 2, 3, 4)]
)


class BadReduction(ValueError):
    pass


class BadPrime(ValueError):
    pass


def group_order(group: tuple[int, ...]) -> int:
    return math.prod(group)


def group_tag(group: tuple[int, ...]) -> str:
    return "x".join(f"Z/{n}" for n in group)


def parse_group_tag(tag: str) -> tuple[int, ...]:
    parts = tag.replace(" ", "").replace("×", "x").split("x")
    group = tuple(int(p.removeprefix("Z/")) for p in parts)
    if group not in MAZUR_GROUPS:
        raise ValueError(f"{tag!r} is not a rational torsion group")
    return group


@dataclass(frozen=True)
class TorsionResult:
    group: tuple[int, ...]
    generators: tuple[Point, ...]
    primes_used: tuple[int, ...]
    bound: int
    exact: bool = True
    notes: tuple[str, ...] = field(default=())

    @property
    def order(self) -> int:
        return group_order(self.group)

    @property
    def tag(self) -> str:
        return group_tag(self.group)


# ---------------------------------------------------------------------------
# counting points
# ---------------------------------------------------------------------------

@lru_cache(maxsize=512)
def _square_table(p: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    table = np.full(p, -1, dtype=np.int64)
    table[(x * x) % p] = 1
    table[0] = 0
    return table


def _cubic_mod(E: _Weierstrass, p: int) -> tuple[int, int, int]:
    if p == 2:
        raise BadPrime("p = 2 is not supported")
    a2, a4, a6 = E.short_cubic()
    out = []
    for c in (a2, a4, a6):
        if c.denominator % p == 0:
            raise BadPrime(f"{p} divides a denominator of the model")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    a2, a4, a6 = out
    disc = (a2 * a2 * a4 * a4 - 4 * a4 ** 3 - 4 * a2 ** 3 * a6 - 27 * a6 * a6 + 18 * a2 * a4 * a6) % p
    if disc == 0:
        raise BadReduction(f"bad reduction at {p}")
    return a2, a4, a6


def count_points_mod_p(E: _Weierstrass, p: int) -> int:
    """#E(F_p) = p + 1 + sum_x chi(f(x)) on the completed-square model."""
    a2, a4, a6 = _cubic_mod(E, p)
    x = np.arange(p, dtype=np.int64)
    g = (((x + a2) % p * x % p + a4) % p * x % p + a6) % p
    return int(p + 1 + _square_table(p)[g].sum())


def is_good_prime(E: _Weierstrass, p: int) -> bool:
    try:
        _cubic_mod(E, p)
    except (BadPrime, BadReduction):
        return False
    return True


def good_primes(E: _Weierstrass, count: int | None = None, limit: int | None = None) -> list[int]:
    out = []
    for p in _SMALL_PRIMES[1:]:
        if limit is not None and p > limit:
            break
        if is_good_prime(E, p):
            out.append(p)
            if count is not None and len(out) == count:
                break
    return out


def torsion_order_bound(E: _Weierstrass, num_primes: int = 12) -> tuple[int, list[int]]:
    """gcd of #E(F_p) over the first num_primes good odd primes, and those primes."""
    if num_primes < 3:
        raise ValueError("num_primes must be at least 3")
    primes = good_primes(E, num_primes)
    g = 0
    for p in primes:
        g = math.gcd(g, count_points_mod_p(E, p))
    return g, primes


# ---------------------------------------------------------------------------
# finding torsion points
# ---------------------------------------------------------------------------

def _points_with_x(E: _Weierstrass, xs) -> list[Point]:
    pts = []
    for x in xs:
        P = E.lift_x(x)
        if P is not None:
            pts.append(P)
            Q = E.neg(P)
            if Q != P:
                pts.append(Q)
    return pts


def _halves(E: _Weierstrass, P: Point) -> list[Point]:
    """All rational Q with 2Q = P (P affine)."""
    a2, a4, a6 = E.short_cubic()
    f = Poly([a6, a4, a2, 1])
    fp = f.derivative()
    # x(2Q) = f'^2 / 4f - a2 - 2x on Y^2 = f(x)
    eq = fp * fp - 4 * f * Poly([a2 + P.x, 2])
    return [Q for Q in _points_with_x(E, rational_roots(eq)) if E._add(Q, Q) == P]


def _two_primary(E: _Weierstrass) -> list[Point]:
    """Every affine point of 2-power order."""
    a2, a4, a6 = E.short_cubic()
    order2 = [Q for Q in _points_with_x(E, rational_roots(Poly([a6, a4, a2, 1])))
              if E._add(Q, Q) == INFINITY]
    found = list(order2)
    frontier = list(order2)
    while frontier:
        nxt = []
        for P in frontier:
            for Q in _halves(E, P):
                if Q not in found:
                    found.append(Q)
                    nxt.append(Q)
        frontier = nxt
    return found


def _odd_generator(E: _Weierstrass, bound: int) -> tuple[Point, int]:
    """A generator of the odd part (cyclic for rational curves) and its order."""
    best, best_order = INFINITY, 1
    for ell in (3, 5, 7):
        if bound % ell:
            continue
        for P in _points_with_x(E, rational_roots(divpoly.psi(E, ell))):
            if E.point_order(P, ell) == ell:
                best, best_order = P, ell
                break
    if best_order == 3 and bound % 9 == 0:
        fs = divpoly.polynomials(E, 9)
        candidates = rational_roots(fs[9].exact_div(fs[3]))
        for P in _points_with_x(E, candidates):
            if E.point_order(P, 9) == 9:
                return P, 9
    return best, best_order


def _order(E: _Weierstrass, P: Point, cap: int = 16) -> int:
    n = E.point_order(P, cap)
    if n is None:
        raise ArithmeticError(f"{P!r} expected to be torsion")
    return n


def torsion_structure(E: _Weierstrass, num_primes: int = 12) -> TorsionResult:
    bound, primes = torsion_order_bound(E, num_primes)
    try:
        two = _two_primary(E) if bound % 2 == 0 else []
        odd, odd_order = _odd_generator(E, bound)
    except RootSearchFailed as exc:
        # lower bound from the always-present 2-torsion of an AB model
        lower = (2,) if isinstance(E, Curve) else (1,)
        gens = (Point(0, 0),) if isinstance(E, Curve) else ()
        return TorsionResult(lower, gens, tuple(primes), bound, exact=False, notes=(str(exc),))
    size2 = len(two) + 1
    order2 = [P for P in two if E._add(P, P) == INFINITY]
    big2 = max(two, key=lambda P: _order(E, P), default=INFINITY)
    big2_order = _order(E, big2) if not big2.is_infinity else 1
    gen1 = E._add(big2, odd)
    n1 = big2_order * odd_order
    if len(order2) == 3:
        group = (2, n1)
        multiple = E.scalar_mul(n1 // 2, gen1)
        second = next(T for T in order2 if T != multiple)
        gens = (gen1, second)
    else:
        group = (n1,)
        gens = (gen1,) if n1 > 1 else ()
    assert size2 * odd_order == group_order(group)
    if group not in MAZUR_GROUPS:
        raise ArithmeticError(f"non-Mazur group {group} found on {E!r}")
    return TorsionResult(group, gens, tuple(primes), bound, exact=True)

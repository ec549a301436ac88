"""Canonical heights, pairings and regulators.

Normalisation: h(P) ~ log max(|a|, |d^2|) for x(P) = a/d^2, i.e. twice the
"half-height" convention.  The height is split into local pieces on an
integral model y^2 = x^3 + a2 x^2 + a4 x + a6:

    h(P) = 2 * (lam_inf(P) + log d + sum over singular primes of lam_p(P))

lam_inf is Tate's series on a translate whose real points all have x >= 1.
At a prime where P reduces to a singular point, lam_p comes from the first
multiple mP that reduces to a nonsingular point, via
lam(mP) = m^2 lam(P) - v(psi_m(P)) log p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from . import divpoly
from .curves import INFINITY, Point, PointNotOnCurve, _Weierstrass
from .exact_math import factor_integer

DEFAULT_EPS = 1e-10
_DPS = 60


class InfinityPoint(ValueError):
    pass


@dataclass(frozen=True)
class HeightValue:
    value: float
    error_bound: float

    def __post_init__(self):
        if not self.error_bound > 0:
            raise ValueError("error_bound must be positive")

    def __float__(self) -> float:
        return self.value


def naive_height(P: Point) -> float:
    if P.is_infinity:
        raise InfinityPoint("naive height of the point at infinity")
    x = Fraction(P.x)
    return math.log(max(abs(x.numerator), x.denominator))


# ---------------------------------------------------------------------------
# integral model
# ---------------------------------------------------------------------------

def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class _Model:
    a2: int
    a4: int
    a6: int
    scale: Fraction      # x' = scale^2 * x
    shift: tuple         # (a1, a3) of the source model

    def point(self, P: Point) -> tuple[Fraction, Fraction]:
        a1, a3 = self.shift
        u = self.scale
        return u * u * P.x, u ** 3 * (P.y + (a1 * P.x + a3) / 2)

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        b2, b4, b6 = 4 * self.a2, 2 * self.a4, 4 * self.a6
        return b2, b4, b6, self.a2 * 4 * self.a6 - self.a4 * self.a4

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def cubic(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6


def integral_model(E: _Weierstrass) -> _Model:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 with integer a_i, reached by x -> u^2 x."""
    a2, a4, a6 = E.short_cubic()
    u = 1
    primes: set[int] = set()
    for c in (a2, a4, a6):
        primes.update(factor_integer(c.denominator))
    for p in primes:
        k = max(math.ceil(_vp(c.denominator, p) / w) for c, w in ((a2, 2), (a4, 4), (a6, 6)))
        u *= p ** k
    out = [c * u ** w for c, w in ((a2, 2), (a4, 4), (a6, 6))]
    assert all(c.denominator == 1 for c in out)
    return _Model(*(int(c) for c in out), Fraction(u), (E.a1, E.a3))


# ---------------------------------------------------------------------------
# local heights
# ---------------------------------------------------------------------------

def _archimedean(M: _Model, x: Fraction, tol: float) -> tuple[mpmath.mpf, float]:
    """Tate's series for lam_inf on the translate x -> x - r with x - r >= 1."""
    # exact isolating intervals; floating root finders stall on large coefficients
    low = min(iv[0][0] for iv in sympy.Poly([1, M.a2, M.a4, M.a6], sympy.Symbol("x")).intervals())
    r = math.floor(low) - 1
    with mpmath.workdps(_DPS):
        a2 = M.a2 + 3 * r
        a4 = M.a4 + 2 * M.a2 * r + 3 * r * r
        a6 = M.cubic(r)
        b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
        b8 = 4 * a2 * a6 - a4 * a4
        xs = x - r
        t = mpmath.mpf(xs.denominator) / xs.numerator
        total = mpmath.log(mpmath.mpf(xs.numerator) / xs.denominator) / 2
        scale = mpmath.mpf(1) / 8
        biggest = mpmath.mpf(0)
        for _ in range(400):
            z = 1 - b4 * t ** 2 - 2 * b6 * t ** 3 - b8 * t ** 4
            w = 4 * t + b2 * t ** 2 + 2 * b4 * t ** 3 + b6 * t ** 4
            lz = mpmath.log(z)
            total += scale * lz
            biggest = max(biggest, abs(lz))
            scale /= 4
            t = w / z
            # a single small term proves nothing: log z can return to size later
            tail = scale * (biggest + 1) / 3
            if tail < tol / 16:
                return total, float(tail)
        raise ArithmeticError("Tate series failed to converge")


def _singular_primes(M: _Model, x: Fraction) -> list[int]:
    """Primes where (x, y) reduces to the singular point of the integral model."""
    X, Z = x.numerator, x.denominator
    dF = 3 * X * X + 2 * M.a2 * X * Z + M.a4 * Z * Z
    F4 = 4 * (X ** 3 + M.a2 * X * X * Z + M.a4 * X * Z * Z + M.a6 * Z ** 3)
    g = math.gcd(dF, F4, M.discriminant)
    return sorted(p for p in factor_integer(g) if Z % p and dF % p == 0 and F4 % p == 0)


def _transform(a, P, u, r, s, t):
    """Apply x = u^2 x' + r, y = u^3 y' + u^2 s x' + t to a-invariants and a point."""
    a1, a2, a3, a4, a6 = a
    b = (
        Fraction(a1 + 2 * s, u),
        Fraction(a2 - s * a1 + 3 * r - s * s, u ** 2),
        Fraction(a3 + r * a1 + 2 * t, u ** 3),
        Fraction(a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, u ** 4),
        Fraction(a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1, u ** 6),
    )
    x, y = P
    x2 = (x - r) / u ** 2
    return b, (x2, (y - s * u * u * x2 - t) / u ** 3)


def _disc(a) -> int:
    a1, a2, a3, a4, a6 = a
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _local_minimal(M: _Model, P, p: int):
    """A model minimal at p, the image of P, and v_p of the total scaling."""
    a = (0, M.a2, 0, M.a4, M.a6)
    k = 0
    while _vp(_disc(a), p) >= 12:
        if p >= 5:
            cands = [(-a[1] * pow(3, -1, p * p) % (p * p), 0, 0)]
        else:
            cands = [(r, s, t) for r in range(p * p) for s in range(p) for t in range(p ** 3)]
        for r, s, t in cands:
            b, Q = _transform(a, P, p, r, s, t)
            if all(c.denominator == 1 for c in b):
                a, P, k = tuple(int(c) for c in b), Q, k + 1
                break
        else:
            break
    return a, P, k


def _reduces_singular(a, P, p: int) -> bool:
    a1, a2, a3, a4, a6 = a
    x, y = P
    if x.denominator % p == 0:
        return False
    fx = 3 * x * x + 2 * a2 * x + a4 - a1 * y
    fy = 2 * y + a1 * x + a3
    return fx.numerator % p == 0 and fy.numerator % p == 0


def _val_mod(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    return min(_vp(n, p), cap)


def _multiples_height(a, x: Fraction, p: int, mmax: int, K: int) -> Fraction | None:
    """lam_p / log p from the first multiple with nonsingular reduction; None if K is too small."""
    a1, a2, a3, a4, a6 = a
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    X, Z = x.numerator, x.denominator
    mod = p ** K
    f3, f4, F = (v % mod for v in divpoly.seeds(b2, b4, b6, b8, X % mod, Z % mod))
    vF = _val_mod(F, p, K)
    fs = divpoly.sequence(f3, f4, F, mmax + 1, 0, 1, mod)
    for m in range(2, mmax + 1):
        fm, fl, fr = fs[m], fs[m - 1], fs[m + 1]
        vfm = _val_mod(fm, p, K)
        if m % 2:
            num = (X * fm * fm - F * fl * fr) % mod
            den = Z * fm * fm % mod
            vpsi = Fraction(vfm)
        else:
            num = (X * F * fm * fm - fl * fr) % mod
            den = Z * F * fm * fm % mod
            vpsi = vfm + Fraction(vF, 2)
        num_v, den_v = _val_mod(num, p, K), _val_mod(den, p, K)
        if max(num_v, den_v) >= K - 2:
            return None
        if num_v < den_v:
            return (Fraction(den_v - num_v, 2) - vpsi) / (m * m)
        xm = (num // p ** den_v) * pow(den // p ** den_v, -1, p) % p
        if (xm - X * pow(Z, -1, p)) % p:
            # the singular point is unique, so a different x mod p is nonsingular
            return -vpsi / (m * m)
    raise ArithmeticError(f"no multiple up to {mmax} with nonsingular reduction at {p}")


def _qval(q: Fraction, p: int) -> Fraction:
    if q == 0:
        return Fraction(10 ** 9)  # stands in for +infinity
    return Fraction(_vp(q.numerator, p) if q.numerator % p == 0 else 0
                    - (_vp(q.denominator, p) if q.denominator % p == 0 else 0))


def _singular_local(a, P, p: int) -> Fraction:
    """lam_p / log p at a point with singular reduction on a model minimal at p.

    Closed forms for multiplicative (I_N) and additive reduction, after
    Silverman's algorithm; tests check them against the multiples method.
    """
    a1, a2, a3, a4, a6 = a
    x, y = P
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    v2 = _qval(2 * y + a1 * x + a3, p)
    if (b2 * b2 - 24 * b4) % p:
        N = _vp(_disc(a), p)
        m = min(v2, Fraction(N, 2))
        return -m * (N - m) / (2 * N)
    v3 = _qval(3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x * x + 3 * b6 * x + b8, p)
    if v3 >= 3 * v2:
        return -v2 / 3
    return -v3 / 8


def _nonarchimedean(M: _Model, P, p: int) -> Fraction:
    """lam_p(P) / log p on the integral model M, via a model minimal at p."""
    a, Q, k = _local_minimal(M, P, p)
    x = Q[0]
    if not _reduces_singular(a, Q, p):
        lam = Fraction(_vp(x.denominator, p), 2) if x.denominator % p == 0 else Fraction(0)
    else:
        lam = _singular_local(a, Q, p)
    return lam - k


def _nonarchimedean_multiples(M: _Model, P, p: int) -> Fraction:
    """Same as _nonarchimedean, from the first multiple with nonsingular reduction."""
    a, Q, k = _local_minimal(M, P, p)
    x = Q[0]
    if not _reduces_singular(a, Q, p):
        return _nonarchimedean(M, P, p)
    vd = _vp(_disc(a), p)
    mmax = max(4, vd)
    K = mmax * mmax * vd // 4 + 24
    for _ in range(4):
        lam = _multiples_height(a, x, p, mmax, K)
        if lam is not None:
            return lam - k
        K *= 2
    raise ArithmeticError(f"multiples method did not settle at p = {p}")


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def _is_torsion(E: _Weierstrass, M: _Model, P: Point) -> bool:
    x, _ = M.point(P)
    if x.denominator != 1:
        return False  # Lutz-Nagell on the integral model
    return E.point_order(P, 12) is not None


def canonical_height(E: _Weierstrass, P: Point, eps: float = DEFAULT_EPS) -> HeightValue:
    if eps <= 0:
        raise ValueError("eps must be positive")
    E.check(P)
    if P.is_infinity:
        return HeightValue(0.0, eps)
    M = integral_model(E)
    if _is_torsion(E, M, P):
        return HeightValue(0.0, eps)
    x, _ = M.point(P)
    lam_inf, err = _archimedean(M, x, eps / 4)
    with mpmath.workdps(_DPS):
        total = lam_inf + mpmath.log(math.isqrt(x.denominator))
        for p in _singular_primes(M, x):
            lam = _nonarchimedean(M, M.point(P), p)
            total += mpmath.mpf(lam.numerator) / lam.denominator * mpmath.log(p)
        value = float(2 * total)
    return HeightValue(value, 2 * err + 4 * abs(value) * 2.0 ** -52 + 1e-15)


def height_pairing(E: _Weierstrass, P: Point, Q: Point, eps: float = DEFAULT_EPS) -> HeightValue:
    E.check(P)
    E.check(Q)
    hs = [canonical_height(E, R, eps) for R in (E.add(P, Q), P, Q)]
    value = (hs[0].value - hs[1].value - hs[2].value) / 2
    return HeightValue(value, sum(h.error_bound for h in hs) / 2)


def gram_matrix(E: _Weierstrass, points: list[Point], eps: float = DEFAULT_EPS) -> tuple[list[list[float]], float]:
    """Symmetric pairing matrix and the largest entry error."""
    n = len(points)
    diag = [canonical_height(E, P, eps) for P in points]
    G = [[0.0] * n for _ in range(n)]
    err = max((h.error_bound for h in diag), default=eps)
    for i in range(n):
        G[i][i] = diag[i].value
        for j in range(i + 1, n):
            s = canonical_height(E, E.add(points[i], points[j]), eps)
            G[i][j] = G[j][i] = (s.value - diag[i].value - diag[j].value) / 2
            err = max(err, (s.error_bound + diag[i].error_bound + diag[j].error_bound) / 2)
    return G, err


def regulator_value(E: _Weierstrass, points: list[Point], eps: float = DEFAULT_EPS) -> HeightValue:
    """Gram determinant with a first-order error bound."""
    for P in points:
        E.check(P)
    if not points:
        return HeightValue(1.0, eps)
    G, err = gram_matrix(E, points, eps)
    n = len(points)
    with mpmath.workdps(30):
        det = float(mpmath.det(mpmath.matrix(G)))
    big = max(1.0, max(abs(v) for row in G for v in row))
    bound = n * math.factorial(n) * big ** (n - 1) * err
    return HeightValue(det, max(bound, eps))


def regulator(E: _Weierstrass, points: list[Point], eps: float = DEFAULT_EPS) -> float:
    return regulator_value(E, points, eps).value


def doubling_height(E: _Weierstrass, P: Point, n: int = 5) -> float:
    """lim h(x(2^n P)) / 4^n, truncated; a slow oracle for tests."""
    Q = P
    for _ in range(n):
        Q = E.add(Q, Q)
        if Q.is_infinity:
            return 0.0
    M = integral_model(E)
    x, _ = M.point(Q)
    return math.log(max(abs(x.numerator), x.denominator)) / 4 ** n


__all__ = [
    "DEFAULT_EPS", "HeightValue", "InfinityPoint", "PointNotOnCurve", "canonical_height",
    "doubling_height", "gram_matrix", "height_pairing", "integral_model", "naive_height",
    "regulator", "regulator_value",
]

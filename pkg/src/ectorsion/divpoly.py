"""Division polynomials through the recurrence on f_n.

f_n = psi_n for odd n and psi_n / psi_2 for even n, so every f_n is a
polynomial in x alone.  With F = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6:

    f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
    f_{2m+1} = F^2 f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3        (m even)
    f_{2m+1} = f_{m+2} f_m^3 - F^2 f_{m-1} f_{m+1}^3        (m odd)

The recurrence only uses ring operations, so the same code evaluates
polynomials, rationals or homogeneous integer values.
"""
from __future__ import annotations

from typing import Any

from .exact_math import Poly


def sequence(f3: Any, f4: Any, F: Any, n: int, zero: Any, one: Any, mod: int | None = None) -> list:
    """[f_0, ..., f_n] from the two seeds; f_1 = f_2 = one.

    With ``mod`` every term is reduced, which keeps integer runs small.
    """
    f = [zero, one, one, f3, f4]
    F2 = F * F
    for k in range(5, n + 1):
        m = k // 2
        if k % 2 == 0:
            v = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1])
        elif m % 2 == 0:
            v = F2 * f[m + 2] * f[m] ** 3 - f[m - 1] * f[m + 1] ** 3
        else:
            v = f[m + 2] * f[m] ** 3 - F2 * f[m - 1] * f[m + 1] ** 3
        f.append(v if mod is None else v % mod)
    return f[: n + 1]


def seeds(b2, b4, b6, b8, X, Z=1):
    """(f3, f4, F) homogenised in (X, Z); pass Z = 1 for the affine forms."""
    f3 = 3 * X**4 + b2 * X**3 * Z + 3 * b4 * X**2 * Z**2 + 3 * b6 * X * Z**3 + b8 * Z**4
    f4 = (2 * X**6 + b2 * X**5 * Z + 5 * b4 * X**4 * Z**2 + 10 * b6 * X**3 * Z**3
          + 10 * b8 * X**2 * Z**4 + (b2 * b8 - b4 * b6) * X * Z**5 + (b4 * b8 - b6 * b6) * Z**6)
    F = 4 * X**3 + b2 * X**2 * Z + 2 * b4 * X * Z**2 + b6 * Z**3
    return f3, f4, F


def polynomials(E, n: int) -> list[Poly]:
    """[f_0, ..., f_n] as polynomials in x for the curve E."""
    b2, b4, b6, b8 = E.b_invariants
    x = Poly.x()
    f3, f4, F = seeds(b2, b4, b6, b8, x, Poly.const(1))
    return sequence(f3, f4, F, n, Poly(), Poly.const(1))


def psi(E, n: int) -> Poly:
    """The odd-part division polynomial: psi_n for odd n, psi_n / psi_2 for even n."""
    return polynomials(E, max(n, 4))[n]

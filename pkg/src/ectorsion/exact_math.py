"""Exact arithmetic over Q: rationals, univariate polynomials and rational functions.

Rationals are :class:`fractions.Fraction`.  Polynomials keep integer numerators
with one shared positive denominator so that products, square roots and root
finding run on machine-independent Python ints.
"""
from __future__ import annotations

import ast
import contextlib
import contextvars
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer factoring
# ---------------------------------------------------------------------------

_HINTS: contextvars.ContextVar[tuple[int, ...]] = contextvars.ContextVar("factor_hints", default=())


@contextlib.contextmanager
def factor_hints(hints: Iterable[int]):
    """Integers whose prime factors are likely to show up in factor_integer calls.

    Values of the irreducible factors of a family's coefficients are the typical
    hints: they split large discriminants into pieces sympy factors quickly.
    """
    token = _HINTS.set(_HINTS.get() + tuple(abs(int(h)) for h in hints if abs(int(h)) > 1))
    try:
        yield
    finally:
        _HINTS.reset(token)


def coprime_base(nums: Iterable[int]) -> list[int]:
    """Pairwise coprime integers > 1 such that every input is a product of their powers."""
    base = sorted({abs(n) for n in nums if abs(n) > 1})
    i = 0
    while i < len(base):
        for j in range(i + 1, len(base)):
            g = math.gcd(base[i], base[j])
            if g > 1:
                a, b = base[i] // g, base[j] // g
                base = [c for k, c in enumerate(base) if k not in (i, j)]
                base = sorted(set(base) | {c for c in (g, a, b) if c > 1})
                i = -1
                break
        i += 1
    return base


def factor_integer(n: int) -> dict[int, int]:
    """Prime factorisation of |n|, split first along the active factor hints."""
    import sympy

    n = abs(int(n))
    if n < 2:
        return {}
    hints = [h for h in _HINTS.get() if math.gcd(h, n) > 1]
    if not hints:
        return {int(p): e for p, e in sympy.factorint(n).items()}
    out: dict[int, int] = {}
    for piece in coprime_base([n, *hints]):
        if n % piece:
            continue
        for p in sympy.factorint(piece):
            e, m = 0, n
            while m % p == 0:
                m //= p
                e += 1
            out[int(p)] = e
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def Q(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "/" in text:
        p, q = text.split("/", 1)
        num, den = int(p), int(q)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    return Fraction(int(text))


def format_rational(q: Number) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_sqrt(q: Number) -> Fraction | None:
    """Non-negative square root of q if it is a rational square."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


class InconsistentEquation(ValueError):
    pass


def solve_quadratic(a: Number, b: Number, c: Number) -> list[Fraction]:
    """Rational roots of a*x^2 + b*x + c, ascending.

    Degenerates to the linear equation when a == 0.  Raises
    InconsistentEquation for 0*x + c = 0 with c != 0.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        if b == 0:
            if c == 0:
                raise ValueError("all coefficients are zero")
            raise InconsistentEquation(f"{c} = 0 has no solution")
        return [-c / b]
    s = rational_sqrt(b * b - 4 * a * c)
    if s is None:
        return []
    return sorted({(-b - s) / (2 * a), (-b + s) / (2 * a)})


# ---------------------------------------------------------------------------
# small integer helpers
# ---------------------------------------------------------------------------

def _content(cs: Iterable[int]) -> int:
    return reduce(math.gcd, cs, 0)


def _strip(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(limit + 1) if sieve[i]]


_SMALL_PRIMES = _primes(20000)


# polynomial arithmetic over GF(p); lists low -> high

def _mod_strip(cs: list[int], p: int) -> list[int]:
    cs = [x % p for x in cs]
    return _strip(cs)


def _mod_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] * inv % p
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - f * y) % p
        _strip(a)
    return _strip(q), a


def _mod_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _mod_strip(a, p), _mod_strip(b, p)
    while b:
        a, b = b, _mod_divmod(a, b, p)[1]
    return a


def _deriv_int(cs: Sequence[int]) -> list[int]:
    return [i * cs[i] for i in range(1, len(cs))]


def _squarefree_mod(cs: Sequence[int], p: int) -> bool:
    """True if cs mod p keeps its degree and is squarefree over GF(p)."""
    if cs[-1] % p == 0:
        return False
    g = _mod_gcd(list(cs), _deriv_int(cs), p)
    return len(g) == 1


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial over Q, coefficient i multiplies x**i.

    Stored as integer numerators plus a common positive denominator; the
    numerator content is coprime to the denominator, so equal polynomials have
    equal representations.
    """

    __slots__ = ("_c", "_d")

    def __init__(self, coeffs: Iterable = ()):
        fr = [Q(c) for c in coeffs]
        d = 1
        for f in fr:
            d = d * f.denominator // math.gcd(d, f.denominator)
        self._set([f.numerator * (d // f.denominator) for f in fr], d)

    def _set(self, cs: list[int], d: int) -> None:
        _strip(cs)
        if not cs:
            self._c, self._d = (), 1
            return
        if d < 0:
            cs, d = [-x for x in cs], -d
        g = math.gcd(_content(cs), d)
        if g > 1:
            cs = [x // g for x in cs]
            d //= g
        self._c, self._d = tuple(cs), d

    @classmethod
    def _raw(cls, cs: list[int], d: int = 1) -> "Poly":
        p = cls.__new__(cls)
        p._set(list(cs), d)
        return p

    @classmethod
    def x(cls) -> "Poly":
        return cls._raw([0, 1])

    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = Q(c)
        return cls._raw([c.numerator], c.denominator)

    # -- accessors --------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._d) for c in self._c)

    @property
    def int_coeffs(self) -> tuple[int, ...]:
        """Numerators over the common denominator (see :attr:`denominator`)."""
        return self._c

    @property
    def denominator(self) -> int:
        return self._d

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    @property
    def lc(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return Fraction(self._c[-1], self._d)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._d)
        return Fraction(0)

    def primitive(self) -> tuple[Fraction, list[int]]:
        """(content, primitive integer coefficients) with positive leading coefficient."""
        if not self._c:
            return Fraction(0), []
        g = _content(self._c)
        if self._c[-1] < 0:
            g = -g
        return Fraction(g, self._d), [c // g for c in self._c]

    def monic(self) -> "Poly":
        if not self._c:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self._raw(list(self._c), self._c[-1])

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._d * o._d // math.gcd(self._d, o._d)
        fa, fb = d // self._d, d // o._d
        n = max(len(self._c), len(o._c))
        a = list(self._c) + [0] * (n - len(self._c))
        b = list(o._c) + [0] * (n - len(o._c))
        return self._raw([x * fa + y * fb for x, y in zip(a, b)], d)

    __radd__ = __add__

    def __neg__(self):
        return self._raw([-x for x in self._c], self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(_int_mul(self._c, o._c), self._d * o._d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return self._raw([x * other.denominator for x in self._c], self._d * other.numerator)
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly.const(other), self)
        return NotImplemented

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        # pseudo-division on integers, then rescale
        a, b = list(self._c), list(other._c)
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly(), self
        lcb = b[-1]
        k = len(a) - 1 - db
        q = [0] * (k + 1)
        scale = 1
        for pos in range(k, -1, -1):
            top = a[pos + db] if pos + db < len(a) else 0
            a = [x * lcb for x in a]
            q = [x * lcb for x in q]
            scale *= lcb
            q[pos] += top
            for i, y in enumerate(b):
                a[pos + i] -= top * y
        _strip(a)
        # self*scale = q*other + a  (in numerators; denominators adjusted below)
        # other's numerators are other * other._d
        quotient = Poly._raw(list(q), scale * self._d) * Poly.const(other._d)
        remainder = Poly._raw(a, scale * self._d)
        return quotient, remainder

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, RatFunc):
                return other == self
            return NotImplemented
        return self._c == o._c and self._d == o._d

    def __hash__(self):
        return hash((self._c, self._d))

    def derivative(self) -> "Poly":
        return self._raw(_deriv_int(self._c), self._d)

    def __call__(self, x):
        if isinstance(x, (Poly, RatFunc)):
            return self.compose(x)
        x = Q(x)
        if not self._c:
            return Fraction(0)
        p, q = x.numerator, x.denominator
        n = len(self._c) - 1
        acc = 0
        qp = 1
        # homogeneous Horner: sum c_i p^i q^(n-i)
        for c in reversed(self._c):
            acc = acc * p + c * qp
            qp *= q
        return Fraction(acc, self._d * q ** n)

    def eval_mod(self, x: int, m: int) -> int:
        """Numerator polynomial evaluated at integer x modulo m (denominator ignored)."""
        acc = 0
        for c in reversed(self._c):
            acc = (acc * x + c) % m
        return acc

    def compose(self, r: "Poly | RatFunc") -> "Poly | RatFunc":
        if isinstance(r, Poly):
            acc = Poly()
            for c in reversed(self.coeffs):
                acc = acc * r + c
            return acc
        n, d = r.num, r.den
        k = self.degree
        if k < 0:
            return RatFunc(Poly(), Poly.const(1))
        acc = Poly.const(self[k])
        dpow = Poly.const(1)
        for i in range(k - 1, -1, -1):
            dpow = dpow * d
            acc = acc * n + dpow * self[i]
        return RatFunc(acc, d ** k)

    # -- display ------------------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        return ",".join(format_rational(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{str(self)}])"

    def pretty(self, var: str = "x") -> str:
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self[i]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Inverse of ``str``: comma-separated coefficients, constant term first."""
        text = text.strip()
        if text == "0" or not text:
            return cls()
        return cls(parse_rational(t) for t in text.split(","))


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials."""
    a = a[:]
    db = len(b) - 1
    lcb = b[-1]
    while a and len(a) - 1 >= db:
        top = a[-1]
        k = len(a) - 1 - db
        a = [x * lcb for x in a]
        for i, y in enumerate(b):
            a[i + k] -= top * y
        _strip(a)
    return a


def _prim(cs: list[int]) -> list[int]:
    if not cs:
        return cs
    g = _content(cs)
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def _coprime_by_modular_test(a: Sequence[int], b: Sequence[int]) -> bool:
    # a nontrivial gcd over Q stays nontrivial modulo every prime not dividing the leading terms
    for p in (1000003, 998244353, 2147483647):
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        if len(_mod_gcd(list(a), list(b), p)) == 1:
            return True
    return False


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q (primitive remainder sequence); gcd(0, 0) = 0."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else Poly()
    if g.is_zero():
        return f.monic()
    a, b = _prim(list(f.int_coeffs)), _prim(list(g.int_coeffs))
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return Poly.const(1)
    if _coprime_by_modular_test(a, b):
        return Poly.const(1)
    while b:
        r = _prem(a, b)
        a, b = b, _prim(r)
    return Poly._raw(a, 1).monic()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced and not den.is_constant() and not num.is_zero():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.exact_div(g), den.exact_div(g)
        if num.is_zero():
            den = Poly.const(1)
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def var(cls) -> "RatFunc":
        return cls(Poly.x())

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, reduced=True)
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly.const(other), reduced=True)
        return None

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # cross-cancel before multiplying keeps the result reduced
        g1 = poly_gcd(self.num, o.den) if not o.den.is_constant() else Poly.const(1)
        g2 = poly_gcd(o.num, self.den) if not self.den.is_constant() else Poly.const(1)
        n1, d2 = (self.num.exact_div(g1), o.den.exact_div(g1)) if not g1.is_constant() else (self.num, o.den)
        n2, d1 = (o.num.exact_div(g2), self.den.exact_div(g2)) if not g2.is_constant() else (o.num, self.den)
        return RatFunc(n1 * n2, d1 * d2, reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFunc(o.den, o.num, reduced=True)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n), reduced=True)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        if isinstance(x, (Poly, RatFunc)):
            return self.compose(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num(x) / d

    def compose(self, r: "RatFunc | Poly") -> "RatFunc":
        if isinstance(r, Poly):
            r = RatFunc(r, reduced=True)
        a = self.num.compose(r)
        b = self.den.compose(r)
        return a / b

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        return f"{self.num} / {self.den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def pretty(self, var: str = "x") -> str:
        if self.is_poly():
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"

    def to_json(self) -> dict:
        return {"num": [format_rational(c) for c in self.num.coeffs],
                "den": [format_rational(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(Poly(parse_rational(c) for c in data["num"]),
                   Poly(parse_rational(c) for c in data["den"]))


def as_ratfunc(f) -> RatFunc:
    if isinstance(f, RatFunc):
        return f
    if isinstance(f, Poly):
        return RatFunc(f, reduced=True)
    return RatFunc(Poly.const(f), reduced=True)


# ---------------------------------------------------------------------------
# square roots
# ---------------------------------------------------------------------------

def _int_poly_sqrt(h: Sequence[int]) -> list[int] | None:
    """g in Z[x] with g^2 = h and positive leading coefficient, if any."""
    n = len(h) - 1
    if n < 0:
        return []
    if n % 2:
        return None
    lead = h[-1]
    if lead < 0 or not is_square_int(lead):
        return None
    k = n // 2
    g = [0] * (k + 1)
    g[k] = math.isqrt(lead)
    two_lead = 2 * g[k]
    for i in range(k - 1, -1, -1):
        target = h[k + i]
        s = 0
        for j in range(i + 1, k):
            s += g[j] * g[k + i - j]
        rem = target - s
        if rem % two_lead:
            return None
        g[i] = rem // two_lead
    if _int_mul(g, g) != list(h):
        return None
    return g


def poly_sqrt(f: Poly) -> Poly | None:
    """g with g*g == f and positive leading coefficient, or None."""
    if f.is_zero():
        return Poly()
    # f = H/d, sqrt(f) = sqrt(H*d)/d and a rational square root of an integer
    # polynomial is integral (Gauss)
    d = f.denominator
    g = _int_poly_sqrt([c * d for c in f.int_coeffs])
    if g is None:
        return None
    return Poly._raw(g, d)


def ratfunc_is_square(f: RatFunc) -> RatFunc | None:
    """Square root of f in Q(x), or None.  num*den is a square iff f is."""
    f = as_ratfunc(f)
    if f.num.is_zero():
        return RatFunc(Poly())
    g = poly_sqrt(f.num * f.den)
    if g is None:
        return None
    return RatFunc(g, f.den)


# ---------------------------------------------------------------------------
# rational roots (p-adic lifting)
# ---------------------------------------------------------------------------

class RootSearchFailed(ArithmeticError):
    pass


def _squarefree_part(cs: list[int]) -> list[int]:
    for p in _SMALL_PRIMES[1:60]:
        if _squarefree_mod(cs, p):
            return cs
    f = Poly._raw(cs)
    g = poly_gcd(f, f.derivative())
    if g.is_constant():
        return cs
    return _prim(list(f.exact_div(g).primitive()[1]))


def _integer_roots_monic(m: list[int], prime_limit: int) -> list[int]:
    n = len(m) - 1
    bound = 1 + max(abs(c) for c in m[:-1])
    dm = _deriv_int(m)
    for p in _SMALL_PRIMES[1:]:
        if p > prime_limit:
            break
        if not _squarefree_mod(m, p):
            continue
        residues = []
        for r in range(p):
            acc = 0
            for c in reversed(m):
                acc = (acc * r + c) % p
            if acc == 0:
                residues.append(r)
                if len(residues) == n:
                    break
        roots = []
        for r in residues:
            mod = p
            while mod <= 2 * bound:
                mod = mod * mod
                fr = 0
                for c in reversed(m):
                    fr = (fr * r + c) % mod
                dr = 0
                for c in reversed(dm):
                    dr = (dr * r + c) % mod
                r = (r - fr * pow(dr, -1, mod)) % mod
            y = r if r <= mod // 2 else r - mod
            acc = 0
            for c in reversed(m):
                acc = acc * y + c
            if acc == 0:
                roots.append(y)
        return roots
    raise RootSearchFailed("no prime with squarefree reduction below the search limit")


def rational_roots(f: Poly, *, prime_limit: int = 20000) -> list[Fraction]:
    """All rational roots of f, ascending, without multiplicity.

    Reduces to integer roots of a monic integer polynomial, finds them modulo a
    prime of squarefree reduction and lifts with Newton's iteration past the
    Cauchy bound.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every rational as a root")
    cs = list(f.primitive()[1])
    roots: set[Fraction] = set()
    if cs[0] == 0:
        roots.add(Fraction(0))
        while cs[0] == 0:
            cs.pop(0)
    if len(cs) == 1:
        return sorted(roots)
    cs = _squarefree_part(cs)
    n = len(cs) - 1
    if n == 1:
        roots.add(Fraction(-cs[0], cs[1]))
        return sorted(roots)
    a = cs[-1]
    m = [cs[i] * a ** (n - 1 - i) for i in range(n)] + [1]
    for y in _integer_roots_monic(m, prime_limit):
        roots.add(Fraction(y, a))
    return sorted(roots)


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------

def parse_expr(text: str, var: str = "x") -> RatFunc:
    """Parse an arithmetic expression in one variable into a RatFunc.

    Accepts + - * / ** (or ^), integer literals, parentheses and the variable
    name.  Nothing is evaluated through Python itself.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    x = RatFunc.var()

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return RatFunc(Poly.const(node.value), reduced=True)
        if isinstance(node, ast.Name):
            if node.id != var:
                raise ValueError(f"unexpected name {node.id!r} (variable is {var!r})")
            return x
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                sign = 1
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    sign, e = -1, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** (sign * e.value)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)

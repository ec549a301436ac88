from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ectorsion.catalog import get_entry, specialize
from ectorsion.curves import (INFINITY, Curve, GeneralCurve, NoRational2Torsion, Point, PointNotOnCurve,
                              SingularCurve, ab_isomorphism, curve_from_json, integral_twist, tate_to_ab)

Z8 = Curve(49, 256)
Z26 = Curve(-59, 864)
AUX8 = Curve(-463, 45936)
AUX26 = Curve(-43, 280)


def test_singular_rejected():
    with pytest.raises(SingularCurve):
        Curve(4, 4)  # A^2 = 4B
    with pytest.raises(SingularCurve):
        Curve(1, 0)


def test_j_invariants_against_sympy():
    # j = 256 (A^2 - 3B)^3 / (B^2 (A^2 - 4B)), evaluated with sympy
    assert Z8.j_invariant() == F(4354703137, 352512)
    assert Z26.j_invariant() == F(702595369, 72900)
    assert AUX8.j_invariant() == F(448768940946481, 252430880625)
    assert AUX26.j_invariant() == F(4108974916, 893025)


def test_anchor_points_and_two_torsion():
    T = Point(24, 24)
    assert Z26.on_curve(T)
    assert Z26.point_order(T) == 6
    assert sorted(P.x for P in Z26.two_torsion()) == [0, 27, 32]
    assert AUX8.on_curve(Point(99, 990)) and AUX26.on_curve(Point(7, 14))
    with pytest.raises(PointNotOnCurve):
        Z8.check(Point(1, 1))


def test_twist_is_isomorphism():
    E = Curve(F(1, 4), F(3, 16))
    A, B, t = integral_twist(E.A, E.B)
    assert (A, B) == (E.A * t * t, E.B * t ** 4)
    assert A.denominator == B.denominator == 1
    assert Curve(A, B).j_invariant() == E.j_invariant()
    assert ab_isomorphism(E, Curve(A, B)) is not None


def test_tate_to_ab_maps_points():
    W = GeneralCurve(0, -1, -1, 0, 0)  # b = c = 1 in Tate normal form, (0,0) of order 5
    with pytest.raises(NoRational2Torsion):
        tate_to_ab(W)
    W = GeneralCurve(F(1, 2), F(-3, 4), F(-3, 4), 0, 0)  # has rational 2-torsion
    E, phi = tate_to_ab(W)
    P = Point(0, 0)
    Q = phi.forward(P)
    assert E.on_curve(Q)
    assert phi.inverse(Q) == P
    assert E.point_order(Q) == W.point_order(P)


def test_json_round_trip():
    for E in (Z8, GeneralCurve(0, F(1, 3), 0, -2, 5)):
        assert curve_from_json(E.to_json()) == E
    P = Point(F(-3, 7), F(5, 11))
    assert Point.from_json(P.to_json()) == P
    assert Point.from_json(INFINITY.to_json()) == INFINITY


def _points(E, gens, torsion):
    """Small multiples of generators plus torsion, as a pool for group-law tests."""
    pool = [INFINITY] + list(torsion)
    for g in gens:
        for n in range(-3, 4):
            pool.append(E.scalar_mul(n, g))
    for a in list(pool):
        for b in torsion:
            pool.append(E.add(a, b))
    return list(dict.fromkeys(pool))


def _pools():
    out = []
    s = specialize(get_entry("Z8_R2_A"), 2)
    out.append((s.curve, _points(s.curve, [P for _, P in s.points], [s.torsion_point])))
    out.append((AUX26, _points(AUX26, [Point(7, 14)], [Point(24 - 24, 0), Point(8, 0)])))
    s = specialize(get_entry("Z7_REMARK"), 3)
    out.append((s.curve, _points(s.curve, [], [s.torsion_point, s.curve.scalar_mul(2, s.torsion_point)])))
    return out


POOLS = _pools()
idx = st.integers(0, 10 ** 6)


@settings(max_examples=1000)
@given(st.integers(0, len(POOLS) - 1), idx, idx, idx)
def test_group_law_axioms(k, i, j, m):
    E, pool = POOLS[k]
    P, Q, R = pool[i % len(pool)], pool[j % len(pool)], pool[m % len(pool)]
    assert E.add(P, INFINITY) == P
    assert E.add(P, E.neg(P)) == INFINITY
    assert E.add(P, Q) == E.add(Q, P)
    assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))
    assert E.on_curve(E.add(P, Q))


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_scalar_mul_is_homomorphism(a, b):
    E, P = AUX8, Point(99, 990)
    assert E.add(E.scalar_mul(a, P), E.scalar_mul(b, P)) == E.scalar_mul(a + b, P)

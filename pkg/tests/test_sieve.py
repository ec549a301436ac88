import csv
import math
from fractions import Fraction as F

import pytest

from ectorsion.catalog import get_entry
from ectorsion.curves import Curve
from ectorsion.sieve import (SUM_VARIANT, evaluate, grid, integral_curve, mestre_nagao, mestre_nagao_sum,
                             parse_range, plot_scan, scan, write_csv)


def _disc(E):
    a1, a2, a3, a4, a6 = E.ainvs
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def brute_sum(E, N):
    """The same sum with good primes and #E(F_p) found by a direct double loop."""
    E = integral_curve(E)
    a1, a2, a3, a4, a6 = (int(c) for c in E.ainvs)
    d = int(_disc(E))
    total = 0.0
    for p in range(3, N + 1):
        if any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)) or d % p == 0:
            continue
        n = 1 + sum(1 for x in range(p) for y in range(p)
                    if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0)
        total += (1 - (p - 1) / n) * math.log(p)
    return total


FIBERS = [("Z8_BASE", F(2)), ("Z26_BASE", F(2)), ("Z8_R1_2", F(287, 109)), ("Z26_R1_3", F(53, 90)),
          ("Z7_REMARK", F(2))]


@pytest.mark.parametrize("eid,q", FIBERS)
def test_matches_brute_force(eid, q):
    E = get_entry(eid).curve_at(q)
    assert mestre_nagao(E, 100) == pytest.approx(brute_sum(E, 100), abs=1e-12)


def test_small_example():
    # (49, 256) is bad at 3; #E(F_5) = 8 and #E(F_7) = 8 by enumeration
    s = mestre_nagao_sum(Curve(49, 256), 7)
    assert s.bad_primes == (3,) and s.primes_used == 2
    assert s.score == pytest.approx((1 - 4 / 8) * math.log(5) + (1 - 6 / 8) * math.log(7))
    assert "3" in s.notes


def test_no_good_primes():
    s = mestre_nagao_sum(Curve(49, 256), 3)
    assert s.score == 0 and s.notes == "no good primes"
    with pytest.raises(ValueError):
        mestre_nagao(Curve(49, 256), 2)


@pytest.mark.parametrize("eid,q", [("Z8_R1_2", F(287, 109)), ("Z26_R1_3", F(53, 90)), ("Z8_R1_6", F(100, 29))])
def test_listed_parameters_scan(eid, q):
    recs = scan(eid, range(q.numerator - 1, q.numerator + 2), range(q.denominator, q.denominator + 1),
                N=200, top_k=10)
    hit = [r for r in recs if r.parameter == q]
    assert hit and hit[0].torsion_ok
    assert all(r.parameter not in get_entry(eid).degeneracy for r in recs)


def test_scan_deterministic_and_parallel():
    a = scan("Z26_R1_1", range(1, 6), range(1, 4), N=100, top_k=5)
    b = scan("Z26_R1_1", range(1, 6), range(1, 4), N=100, top_k=5, workers=2)
    assert a == b
    scores = [r.score for r in a]
    assert scores == sorted(scores, reverse=True)


def test_empty_effective_grid():
    e = get_entry("Z8_R2_A")
    assert scan(e, range(1, 2), range(1, 2), N=50, top_k=3) == []  # u = 1 is degenerate
    assert evaluate(e, 1) is None


def test_grid_and_ranges():
    assert grid(range(2, 5), range(0, 3)) == [F(2), F(1), F(3), F(3, 2), F(4)]
    assert parse_range("-3..2") == range(-3, 3)
    with pytest.raises(ValueError):
        parse_range("3..1")
    with pytest.raises(ValueError):
        parse_range("3")


def test_csv_and_plot(tmp_path):
    ev = []
    top = scan("Z8_R1_6", range(99, 102), range(28, 31), N=100, top_k=3, evaluated=ev)
    out = tmp_path / "s.csv"
    write_csv(top, out)
    rows = list(csv.DictReader(open(out)))
    assert list(rows[0]) == ["param", "score", "torsion_ok", "primes_used", "notes"]
    assert len(rows) == 3
    png = tmp_path / "s.png"
    plot_scan(ev, top, png)
    assert png.read_bytes()[:4] == b"\x89PNG"
    assert "log p" in SUM_VARIANT

"""Mestre-Nagao sums and parameter scans over catalog families."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import sympy

from .catalog import DegenerateParameter, FamilyEntry, get_entry
from .curves import Curve, GeneralCurve, SingularCurve, integral_twist
from .exact_math import factor_integer, format_rational
from .torsion import BadPrime, BadReduction, count_points_mod_p, group_tag, torsion_structure

SUM_VARIANT = "S(N) = sum over good odd p <= N of (1 - (p-1)/#E(F_p)) log p"
DEFAULT_PRIMES = 1000
CSV_COLUMNS = ("param", "score", "torsion_ok", "primes_used", "notes")


@dataclass(frozen=True)
class NagaoSum:
    score: float
    primes_used: int
    bad_primes: tuple[int, ...]

    @property
    def notes(self) -> str:
        if self.primes_used == 0:
            return "no good primes"
        if self.bad_primes:
            return "bad primes skipped: " + " ".join(map(str, self.bad_primes))
        return ""


@dataclass(frozen=True)
class SieveRecord:
    parameter: Fraction
    score: float
    torsion_ok: bool
    primes_used: int
    notes: str

    def row(self) -> dict:
        return {
            "param": format_rational(self.parameter), "score": f"{self.score:.6f}",
            "torsion_ok": str(self.torsion_ok).lower(), "primes_used": self.primes_used,
            "notes": self.notes,
        }

    def to_json(self) -> dict:
        return {
            "param": format_rational(self.parameter), "score": self.score,
            "torsion_ok": self.torsion_ok, "primes_used": self.primes_used, "notes": self.notes,
        }


def integral_curve(E: Curve | GeneralCurve) -> Curve | GeneralCurve:
    """An isomorphic model with integer coefficients; AB curves are twist-reduced."""
    if isinstance(E, Curve):
        A, B, _ = integral_twist(E.A, E.B)
        return Curve(A, B)
    need: dict[int, int] = {}
    for c, w in zip(E.ainvs, (1, 2, 3, 4, 6)):
        for p, e in factor_integer(c.denominator).items():
            need[p] = max(need.get(p, 0), -(-e // w))
    u = math.prod(p ** k for p, k in need.items())
    return GeneralCurve(*(c * u ** w for c, w in zip(E.ainvs, (1, 2, 3, 4, 6))))


def mestre_nagao_sum(E: Curve | GeneralCurve, N: int) -> NagaoSum:
    if N < 3:
        raise ValueError("N must be at least 3")
    E = integral_curve(E)
    total, used, bad = 0.0, 0, []
    for p in sympy.primerange(3, N + 1):
        try:
            n = count_points_mod_p(E, p)
        except (BadPrime, BadReduction):
            bad.append(int(p))
            continue
        total += (1 - (p - 1) / n) * math.log(p)
        used += 1
    return NagaoSum(total, used, tuple(bad))


def mestre_nagao(E: Curve | GeneralCurve, N: int) -> float:
    return mestre_nagao_sum(E, N).score


def grid(numerators: range, denominators: range) -> list[Fraction]:
    """Distinct a/b in first-seen order; b = 0 is skipped."""
    seen: dict[Fraction, None] = {}
    for a in numerators:
        for b in denominators:
            if b:
                seen.setdefault(Fraction(a, b), None)
    return list(seen)


def evaluate(entry: FamilyEntry | str, q, N: int = DEFAULT_PRIMES) -> SieveRecord | None:
    """The record at one parameter, or None if it is degenerate."""
    entry = get_entry(entry) if isinstance(entry, str) else entry
    q = Fraction(q)
    if q in entry.degeneracy:
        return None
    try:
        E = entry.curve_at(q)
    except (DegenerateParameter, SingularCurve, ZeroDivisionError):
        return None
    s = mestre_nagao_sum(E, N)
    tors = torsion_structure(E)
    ok = tors.group == tuple(entry.claimed_torsion)
    notes = s.notes
    if not ok:
        notes = "; ".join(filter(None, [f"torsion {group_tag(tors.group)}", notes]))
    return SieveRecord(q, s.score, ok, s.primes_used, notes)


def _evaluate_job(args):
    entry_id, q, N = args
    return evaluate(entry_id, q, N)


def scan(entry: FamilyEntry | str, numerators: range, denominators: range, N: int = DEFAULT_PRIMES,
         top_k: int = 10, workers: int = 1, evaluated: list | None = None) -> list[SieveRecord]:
    """top_k records by score over the non-degenerate grid points.

    Ties keep grid order.  ``evaluated``, if given, receives every record in
    grid order (used for plotting).
    """
    if not len(numerators) or not len(denominators):
        raise ValueError("ranges must be nonempty")
    if N < 3 or top_k < 1:
        raise ValueError("need N >= 3 and top_k >= 1")
    entry = get_entry(entry) if isinstance(entry, str) else entry
    params = grid(numerators, denominators)
    jobs = [(entry.id, q, N) for q in params]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_evaluate_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [evaluate(entry, q, N) for q in params]
    records = [r for r in results if r is not None]
    if evaluated is not None:
        evaluated.extend(records)
    order = sorted(range(len(records)), key=lambda i: (-records[i].score, i))
    return [records[i] for i in order[:top_k]]


def parse_range(text: str) -> range:
    """'a..b' inclusive."""
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise ValueError(f"expected a range 'a..b', got {text!r}") from None
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def write_csv(records: list[SieveRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for r in records:
            w.writerow(r.row())


def plot_scan(evaluated: list[SieveRecord], top: list[SieveRecord], path: str | Path, title: str = "") -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.scatter([float(r.parameter) for r in evaluated], [r.score for r in evaluated], s=8, c="0.6",
               label="grid")
    ax.scatter([float(r.parameter) for r in top], [r.score for r in top], s=24, c="tab:red", label=f"top {len(top)}")
    for r in top:
        ax.annotate(format_rational(r.parameter), (float(r.parameter), r.score), fontsize=7,
                    xytext=(3, 3), textcoords="offset points")
    ax.set_xlabel("parameter")
    ax.set_ylabel("Mestre-Nagao sum")
    ax.set_title(title or SUM_VARIANT, fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

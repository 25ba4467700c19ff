"""Benchmark harness: construction sizes per family, elimination orderings.

Records are plain rows, reproducible bit-for-bit from their configuration,
and serialize to a fixed CSV layout: unavailable fields stay empty so the
files diff cleanly.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from .automata import Automaton, equivalent, fa_measures
from .constructions import construct, construct_follow, construct_pd, construct_position
from .elimination import STRATEGIES, state_elimination
from .expressions import measures
from .families import buffer_regex, options_regex, random_dfa, row1_regex, row2_regex, row3_regex

__all__ = [
    "BenchRecord",
    "CSV_HEADER",
    "bench_constructions",
    "bench_orderings",
    "summarize_orderings",
    "verify_trends",
    "to_csv",
]

CSV_HEADER = ["family", "n", "method", "states", "transitions", "size", "awidth", "height", "micros"]

_REGEX_FAMILIES = {
    "buffer": buffer_regex,
    "options": options_regex,
    "row1": row1_regex,
    "row2": row2_regex,
    "row3": row3_regex,
}


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    method: str
    states: int | None
    transitions: int | None
    size: int | None
    awidth: int | None
    height: int | None
    micros: int

    def row(self) -> list:
        return [
            self.family,
            self.n,
            self.method,
            *("" if v is None else v for v in (self.states, self.transitions, self.size, self.awidth, self.height)),
            self.micros,
        ]


def to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.row())
    return buf.getvalue()


def bench_constructions(
    families: dict[str, list[int]],
    constructions: tuple[str, ...] = ("of", "follow", "pos", "pd"),
    check_trends: bool = True,
) -> list[BenchRecord]:
    """Sizes of the chosen constructions over expression families.

    `families` maps a family name (buffer/options/row1/row2/row3) to the
    list of parameters to run.  When the quadratic and square-root
    families are present their doubling-ratio checks are asserted too.
    """
    records = []
    for family in sorted(families):
        build = _REGEX_FAMILIES[family]
        for n in families[family]:
            expr = build(n)
            report = measures(expr)
            for name in constructions:
                start = time.perf_counter()
                aut = construct(name, expr)
                micros = int((time.perf_counter() - start) * 1e6)
                fm = fa_measures(aut)
                records.append(
                    BenchRecord(
                        family, n, name, fm.states, fm.transitions, fm.size,
                        report.awidth, report.height, micros,
                    )
                )
    if check_trends:
        trend_families = {k: v for k, v in families.items() if k in ("options", "row3")}
        for name, ratio, limit, ok in verify_trends(trend_families):
            if not ok:
                raise AssertionError(f"growth trend {name}: ratio {ratio:.2f} vs {limit}")
    return records


def verify_trends(families: dict[str, list[int]]) -> list[tuple[str, float, float, bool]]:
    """Doubling-ratio checks on the quadratic and pd-vs-position families.

    For each n the position automaton of the option family must grow with
    ratio 4, the pd automaton of the sum-of-tails family with ratio 2 and
    its position automaton with ratio 8, all within ±20%.  Sizes below 8
    are skipped: the tolerance is pinned for the asymptotic regime only.
    """
    checks = []

    def ratio(build, construct, n):
        return fa_measures(construct(build(2 * n))).size / fa_measures(construct(build(n))).size

    for n in families.get("options", []):
        if n < 8:
            continue
        r = ratio(options_regex, construct_position, n)
        checks.append((f"options:pos:n={n}", r, 4.0, abs(r - 4.0) <= 0.8))
    for n in families.get("row3", []):
        if n < 8:
            continue
        r = ratio(row3_regex, construct_pd, n)
        checks.append((f"row3:pd:n={n}", r, 2.0, abs(r - 2.0) <= 0.4))
        r = ratio(row3_regex, construct_position, n)
        checks.append((f"row3:pos:n={n}", r, 8.0, abs(r - 8.0) <= 1.6))
    return checks


def bench_orderings(
    n: int = 8,
    alphabet_size: int = 2,
    samples: int = 20,
    seed: int = 1,
    strategies: tuple[str, ...] = STRATEGIES,
    automata: dict[str, Automaton] | None = None,
    fixed_orders: dict[str, list] | None = None,
    verify: bool = True,
) -> list[BenchRecord]:
    """Expression sizes per elimination strategy.

    Runs the named strategies (and any explicit fixed orders) over random
    DFAs, or over the given automata instead; every produced expression is
    checked equivalent to its source automaton unless `verify` is false.
    """
    if automata is None:
        automata = {
            f"random{i}": random_dfa(n, alphabet_size, seed + i) for i in range(samples)
        }
    records = []
    for name in sorted(automata):
        aut = automata[name]
        runs = [(s, s) for s in strategies]
        runs += [(label, order) for label, order in sorted((fixed_orders or {}).items())]
        for label, order in runs:
            start = time.perf_counter()
            expr = state_elimination(aut, order)
            micros = int((time.perf_counter() - start) * 1e6)
            if verify and not equivalent(construct_follow(expr), aut):
                raise AssertionError(f"{label} produced an inequivalent expression on {name}")
            report = measures(expr)
            fm = fa_measures(aut)
            records.append(
                BenchRecord(
                    name, fm.states, label, fm.states, fm.transitions, fm.size,
                    report.awidth, report.height, micros,
                )
            )
    return records


def summarize_orderings(records: list[BenchRecord]) -> list[tuple[str, float]]:
    """Median result awidth per strategy, best first."""
    by_method: dict[str, list[int]] = {}
    for record in records:
        by_method.setdefault(record.method, []).append(record.awidth or 0)
    out = []
    for method, widths in by_method.items():
        widths.sort()
        mid = len(widths) // 2
        median = widths[mid] if len(widths) % 2 else (widths[mid - 1] + widths[mid]) / 2
        out.append((method, float(median)))
    out.sort(key=lambda pair: (pair[1], pair[0]))
    return out

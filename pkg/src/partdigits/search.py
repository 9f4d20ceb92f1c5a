"""Leading-digit search over the exact tables, plus bound verification.

The search scans n = 0, 1, 2, ... and decides "does p(n) (or PL(n)) start
with f?" through a two-tier test: a certified fractional-log comparison
first (cheap: it never divides the full bignum), exact digit extraction
only when the certified interval straddles a window endpoint.  Every hit
is re-confirmed by exact extraction before being reported.
"""
from __future__ import annotations

import csv
import io
import time
from collections import Counter
from dataclasses import dataclass

from .certified import DEFAULT_PRECISION
from .digits import (
    DEFAULT_WINDOW_BITS,
    DigitString,
    TargetInterval,
    all_digit_strings,
    digit_count,
    frac_log,
    leading_digits,
    target_interval,
)
from .engines import (
    SequenceKind,
    SequenceTable,
    estimate_table_bytes,
    ResourceLimitError,
)
from .framework import theorem_bound

METHOD_EXACT = "exact"
METHOD_CERTIFIED = "asymptotic-confirmed-exact"

_GROWTH_CHUNK = 256
_ESCALATION = (1, 2, 4)  # precision/window multipliers before the exact fallback


@dataclass
class SearchResult:
    f: DigitString
    kind: SequenceKind
    n_min: int | None
    value_digit_count: int | None
    method: str
    bound: int
    within_bound: bool


@dataclass
class VerificationReport:
    kind: SequenceKind
    base: int
    t: int
    results: list[SearchResult]
    max_n_min: int | None
    all_within_bound: bool
    table_entries: int
    runtime_seconds: float


def decide_membership(
    value: int, target: TargetInterval, precision: int | None = None
) -> tuple[bool, bool]:
    """Does `value` start with target.f?  Returns (decision, used_exact_fallback).

    Tries the certified fractional-log test at escalating precision; falls
    back to exact digit extraction when every certified attempt straddles
    a window endpoint (which happens exactly when value is within rounding
    of f*b^z or (f+1)*b^z).
    """
    base = target.f.base
    t = target.f.t
    prec0 = precision or DEFAULT_PRECISION
    tgt = target
    for mult in _ESCALATION:
        prec = prec0 * mult
        if mult != 1:
            tgt = target_interval(target.f, precision=prec)
        fr = frac_log(value, base, precision=prec, window_bits=DEFAULT_WINDOW_BITS * mult)
        decision = tgt.contains(fr)
        if decision is not None:
            return decision, False
    if digit_count(value, base) < t:
        return False, True
    return leading_digits(value, base, t) == target.f, True


def _grow(table: SequenceTable, n: int, limit: int) -> None:
    if n > table.last_index:
        table.extend(min(limit, max(n, 2 * table.last_index, _GROWTH_CHUNK)))


def find_min_n(
    kind: SequenceKind,
    f: DigitString,
    limit: int | None = None,
    *,
    table: SequenceTable | None = None,
    precision: int | None = None,
    memory_budget: int | None = None,
) -> SearchResult | None:
    """Smallest n (from 0) with the table value leading with f, or None.

    `limit` defaults to theorem_bound(kind, f.base, f.t), the horizon by
    which a hit is guaranteed.  Values with fewer than t digits are
    skipped.  A supplied `table` is reused and grown in place.
    """
    kind = SequenceKind(kind)
    bound = theorem_bound(kind, f.base, f.t, precision)
    if limit is None:
        limit = bound
    if limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    if table is None:
        table = SequenceTable(kind, memory_budget=memory_budget)
    elif table.kind is not kind:
        raise ValueError(f"table holds {table.kind.value}, requested {kind.value}")
    target = target_interval(f, precision)
    threshold = f.base ** (f.t - 1)
    for n in range(limit + 1):
        _grow(table, n, limit)
        value = table[n]
        if value < threshold:
            continue
        hit, used_exact = decide_membership(value, target, precision)
        if not hit:
            continue
        if leading_digits(value, f.base, f.t) != f:
            raise RuntimeError(
                f"certified membership at n = {n} contradicts exact extraction"
            )
        return SearchResult(
            f=f,
            kind=kind,
            n_min=n,
            value_digit_count=digit_count(value, f.base),
            method=METHOD_EXACT if used_exact else METHOD_CERTIFIED,
            bound=bound,
            within_bound=n <= bound,
        )
    return None


def verify_theorem(
    kind: SequenceKind,
    base: int,
    t: int,
    *,
    precision: int | None = None,
    memory_budget: int | None = None,
    table: SequenceTable | None = None,
) -> VerificationReport:
    """First hit for every t-digit base-b string, checked against the bound.

    Equivalent to running find_min_n per f over one shared table, done as a
    single exact scan that extracts each value's leading digits once; the
    scan stops early once every digit string has been seen.  The worst-case
    table memory (scan to the full bound) is preflighted against the budget
    before any work.
    """
    kind = SequenceKind(kind)
    started = time.monotonic()
    bound = theorem_bound(kind, base, t, precision)
    if table is None:
        table = SequenceTable(kind, memory_budget=memory_budget)
    elif table.kind is not kind:
        raise ValueError(f"table holds {table.kind.value}, requested {kind.value}")
    estimate = estimate_table_bytes(kind, bound)
    if estimate > table.memory_budget:
        raise ResourceLimitError(
            f"scan to n = {bound} needs an estimated {estimate} bytes of "
            f"{kind.value} table, over the {table.memory_budget}-byte budget"
        )
    strings = all_digit_strings(base, t)
    pending = len(strings)
    first_hit: dict[int, int] = {}
    threshold = base ** (t - 1)
    for n in range(bound + 1):
        _grow(table, n, bound)
        value = table[n]
        if value < threshold:
            continue
        d = digit_count(value, base)
        head = value >> (d - t) if base == 2 else value // base ** (d - t)
        if head not in first_hit:
            first_hit[head] = n
            pending -= 1
            if not pending:
                break
    results = []
    for f in strings:
        n_min = first_hit.get(f.value)
        results.append(
            SearchResult(
                f=f,
                kind=kind,
                n_min=n_min,
                value_digit_count=None if n_min is None else digit_count(table[n_min], base),
                method=METHOD_EXACT,
                bound=bound,
                within_bound=n_min is not None and n_min <= bound,
            )
        )
    found = [r.n_min for r in results if r.n_min is not None]
    return VerificationReport(
        kind=kind,
        base=base,
        t=t,
        results=results,
        max_n_min=max(found) if found else None,
        all_within_bound=all(r.within_bound for r in results),
        table_entries=len(table),
        runtime_seconds=time.monotonic() - started,
    )


def digit_census(
    kind: SequenceKind,
    base: int,
    t: int,
    N: int,
    *,
    table: SequenceTable | None = None,
    memory_budget: int | None = None,
) -> dict[DigitString, int]:
    """Leading-digit frequency over table entries n = 1..N.

    Returns {digit string: count} for the strings that occur, in increasing
    numeric order; entries whose value has fewer than t digits are skipped,
    so the counts sum to N minus the number skipped.  N = 0 gives an empty
    census.
    """
    kind = SequenceKind(kind)
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if t < 1 or base < 2 or (base == 2 and t < 2):
        raise ValueError(f"no valid digit strings for base {base}, t {t}")
    if table is None:
        table = SequenceTable(kind, memory_budget=memory_budget)
    elif table.kind is not kind:
        raise ValueError(f"table holds {table.kind.value}, requested {kind.value}")
    estimate = estimate_table_bytes(kind, N)
    if estimate > table.memory_budget:
        raise ResourceLimitError(
            f"census to n = {N} needs an estimated {estimate} bytes of "
            f"{kind.value} table, over the {table.memory_budget}-byte budget"
        )
    counts: Counter[int] = Counter()
    threshold = base ** (t - 1)
    for n in range(1, N + 1):
        _grow(table, n, N)
        value = table[n]
        if value < threshold:
            continue
        d = digit_count(value, base)
        head = value >> (d - t) if base == 2 else value // base ** (d - t)
        counts[head] += 1
    return {
        DigitString.from_value(head, base, t): counts[head] for head in sorted(counts)
    }


# -- serialization -------------------------------------------------------

CSV_FIELDS = ("f", "n_min", "bound", "within_bound", "method")


def search_result_dict(result: SearchResult) -> dict:
    return {
        "f": result.f.text(),
        "kind": result.kind.value,
        "n_min": result.n_min,
        "value_digit_count": result.value_digit_count,
        "method": result.method,
        "bound": result.bound,
        "within_bound": result.within_bound,
    }


def report_dict(report: VerificationReport) -> dict:
    # runtime_seconds stays off the wire so identical configs emit
    # byte-identical JSON; text rendering shows it instead.
    return {
        "kind": report.kind.value,
        "b": report.base,
        "t": report.t,
        "results": [search_result_dict(r) for r in report.results],
        "max_n_min": report.max_n_min,
        "all_within_bound": report.all_within_bound,
        "table_entries": report.table_entries,
    }


def results_csv(results: list[SearchResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in results:
        writer.writerow(
            [
                r.f.text(),
                "" if r.n_min is None else r.n_min,
                r.bound,
                r.within_bound,
                r.method,
            ]
        )
    return buf.getvalue()

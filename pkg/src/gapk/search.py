"""Searching for differences, whole instances, shifted windows and tails.

``runner`` finds every difference d in a range for which the first k
terms are prime. Candidates are strided by the residue certificate's
common factor (``stride="auto"``), pre-sieved with numpy against small
primes, and only the survivors see a full primality test. The range is cut
into blocks of consecutive candidates; blocks may run in worker processes
and are merged in block order, so results never depend on the worker
count.
"""
from __future__ import annotations

import json
import logging
import math
import os
import tempfile
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import DEFAULT_ROUNDS, decimal_digits, primes_up_to, probably_prime, smallest_prime_factor, smallest_prime_geq
from .progression import MAX_K, GapInstance, GapTriple, max_order, verify_gap
from .residue import DEFAULT_Q_MAX, common_factor, killing_residues

log = logging.getLogger(__name__)

SIEVE_LIMIT = 3000
BLOCK_SIZE = 1 << 18
DEFAULT_DIGIT_CAP = 5000


@dataclass(frozen=True)
class SearchSpec:
    p1: int
    r: int
    k: int
    d_min: int
    d_max: int
    stride: int | str = "auto"
    start_j: int = 0
    workers: int = 1
    q_max: int = DEFAULT_Q_MAX
    rounds: int = DEFAULT_ROUNDS

    def __post_init__(self):
        if self.d_min < 0 or self.d_min > self.d_max:
            raise ValueError(f"need 0 <= d_min <= d_max, got [{self.d_min}, {self.d_max}]")
        if self.stride != "auto" and (not isinstance(self.stride, int) or self.stride < 1):
            raise ValueError(f"stride must be 'auto' or an integer >= 1, got {self.stride!r}")
        if not 2 <= self.k <= MAX_K:
            raise ValueError(f"k must be in [2, {MAX_K}]")
        if self.start_j < 0 or self.workers < 1:
            raise ValueError("start_j must be >= 0 and workers >= 1")


@dataclass
class SearchStats:
    candidates_tested: int = 0
    primality_calls: int = 0
    elapsed: float = 0.0


@dataclass
class SearchResult:
    spec: SearchSpec
    differences: list[int]
    stats: SearchStats
    stride: int = 1
    instances: list[GapInstance] | None = None
    note: str = ""


def _kill_table(p1: int, r: int, js: list[int], limit: int) -> list[tuple[int, bool, tuple[int, ...]]]:
    table = []
    for q in primes_up_to(limit):
        q = int(q)
        everything, residues = killing_residues(p1, r, q, js)
        if everything or residues:
            table.append((q, everything, tuple(sorted(residues))))
    return table


def _scan_block(job) -> tuple[list[int], int]:
    """Test ``count`` candidates ``first + i*step``; returns (hits, primality calls)."""
    p1, r, js, first, step, count, table, rounds = job
    # Sieving by q is only sound where every term exceeds q; terms grow with j and d.
    min_term = p1 * r ** js[0] + js[0] * first
    alive = np.ones(count, dtype=bool)
    for q, everything, residues in table:
        if q >= min_term:
            break
        if everything:
            alive[:] = False
            break
        s, d0 = step % q, first % q
        if s == 0:
            if d0 in residues:
                alive[:] = False
                break
            continue
        inv = pow(s, -1, q)
        for f in residues:
            alive[(f - d0) * inv % q :: q] = False

    powers = [p1 * r**j for j in js]
    hits, calls = [], 0
    for i in np.flatnonzero(alive):
        d = first + int(i) * step
        for j, pw in zip(js, powers):
            calls += 1
            if not probably_prime(pw + j * d, rounds):
                break
        else:
            hits.append(d)
    return hits, calls


def _resolve_stride(spec: SearchSpec):
    if spec.stride != "auto":
        return spec.stride, spec.d_min, None
    cert = common_factor(spec.p1, spec.r, spec.k, spec.q_max) if spec.start_j == 0 else None
    # shifted windows rely on the sieve alone
    step = cert.common_factor if cert else 1
    first = -(-spec.d_min // step) * step
    return step, first, cert


def runner(spec: SearchSpec, block_size: int = BLOCK_SIZE) -> SearchResult:
    """All d in ``[d_min, d_max]`` (on the stride) giving k primes from ``start_j``."""
    t0 = time.perf_counter()
    stats = SearchStats()
    step, first, cert = _resolve_stride(spec)
    if cert is not None and cert.impossible:
        stats.elapsed = time.perf_counter() - t0
        note = f"no GAP-{spec.k} with p1={spec.p1}, r={spec.r}: some term is divisible by {cert.impossible_moduli[0]}"
        return SearchResult(spec, [], stats, step, note=note)

    count = 0 if first > spec.d_max else (spec.d_max - first) // step + 1
    stats.candidates_tested = count
    js = list(range(spec.start_j, spec.start_j + spec.k))
    if js[0] == 0:
        # j = 0 is the constant p1: test it once, not per candidate.
        stats.primality_calls += 1
        if not probably_prime(spec.p1, spec.rounds):
            stats.elapsed = time.perf_counter() - t0
            return SearchResult(spec, [], stats, step, note=f"first term {spec.p1} is not prime")
        js = js[1:]

    table = _kill_table(spec.p1, spec.r, js, SIEVE_LIMIT)
    jobs = [
        (spec.p1, spec.r, js, first + b * step, step, min(block_size, count - b), table, spec.rounds)
        for b in range(0, count, block_size)
    ]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(_scan_block, jobs))
    else:
        results = [_scan_block(job) for job in jobs]

    differences = []
    for hits, calls in results:
        differences.extend(hits)
        stats.primality_calls += calls
    stats.elapsed = time.perf_counter() - t0
    return SearchResult(spec, differences, stats, step)


def materialize(result: SearchResult) -> SearchResult:
    """Attach the verified GapInstance for each difference."""
    s = result.spec
    result.instances = [verify_gap(GapTriple(s.p1, s.r, d), s.k, s.start_j, s.rounds) for d in result.differences]
    return result


def walker(t: GapTriple, k: int, j_lo: int, j_hi: int, rounds: int = DEFAULT_ROUNDS) -> list[GapInstance]:
    """Every window of k consecutive prime terms whose first index lies in ``[j_lo, j_hi]``."""
    flags = [probably_prime(v, rounds) for v in t.terms(j_lo, j_hi - j_lo + k)] if j_hi >= j_lo else []
    out = []
    for s in range(j_hi - j_lo + 1):
        if all(flags[s : s + k]):
            out.append(verify_gap(t, k, j_lo + s, rounds))
    return out


def _runs(flags: list[bool], offset: int):
    """Maximal runs of True as (start index, length)."""
    start = None
    for i, f in enumerate(flags + [False]):
        if f and start is None:
            start = i
        elif not f and start is not None:
            yield offset + start, i - start
            start = None


def shifted_search(t: GapTriple, j_max: int, min_order: int = 2, rounds: int = DEFAULT_ROUNDS) -> list[GapInstance]:
    """Maximal prime runs of length >= ``min_order`` starting at any j in ``[0, j_max]``."""
    if min_order < 2:
        raise ValueError("min_order must be >= 2")
    flags = []
    power = t.p1
    j = 0
    # runs that start by j_max may continue past it
    while j <= j_max or (flags and flags[-1] and j < j_max + MAX_K):
        flags.append(probably_prime(power + j * t.d, rounds))
        power *= t.r
        j += 1
    return [verify_gap(t, n, s, rounds) for s, n in _runs(flags, 0) if n >= min_order and s <= j_max]


@dataclass
class TailScanReport:
    triple: GapTriple
    j_range: tuple[int, int]
    windows: list[tuple[int, int]] = field(default_factory=list)
    max_order_found: int = 0
    truncated_at: int | None = None
    composite_positions_checked: int = 0
    composite_position_violations: list[int] = field(default_factory=list)


def tail_scan(
    t: GapTriple, k: int, j_max: int, digit_cap: int = DEFAULT_DIGIT_CAP, rounds: int = DEFAULT_ROUNDS
) -> TailScanReport:
    """Prime runs of order >= 2 among the terms with j in ``[k, j_max]``.

    Indices that are multiples of p1 or of the smallest prime factor of r
    hold terms divisible by that prime; they are checked for it instead of
    being primality tested, and any exception is recorded.
    """
    report = TailScanReport(t, (k, j_max))
    if j_max < k:
        return report
    if not verify_gap(t, k, 0, rounds):
        warnings.warn(f"{t} does not start with a GAP-{k}", stacklevel=2)

    divisors = set()
    if t.p1 > 1:
        divisors.add(t.p1)
    if t.r > 1:
        divisors.add(smallest_prime_factor(t.r))

    flags = []
    power = t.p1 * t.r**k
    for j in range(k, j_max + 1):
        value = power + j * t.d
        power *= t.r
        if decimal_digits(value) > digit_cap:
            report.truncated_at = j
            break
        forced = [q for q in divisors if j % q == 0]
        if forced:
            report.composite_positions_checked += 1
            if any(value % q or value == q for q in forced):
                report.composite_position_violations.append(j)
                flags.append(probably_prime(value, rounds))
            else:
                flags.append(False)
            continue
        flags.append(probably_prime(value, rounds))

    report.windows = [(s, n) for s, n in _runs(flags, k) if n >= 2]
    report.max_order_found = max((n for _, n in report.windows), default=1 if any(flags) else 0)
    return report


@dataclass(frozen=True)
class MinimalGap:
    triple: GapTriple
    instance: GapInstance
    stride: int
    elapsed: float


@dataclass(frozen=True)
class NotFound:
    """No minimal GAP-k with d up to ``searched_to``; that is a lower bound."""

    k: int
    p: int
    searched_to: int
    stride: int

    def __bool__(self) -> bool:
        return False


def _frontier_key(p1: int, r: int, k: int) -> str:
    return f"{p1},{r},{k}"


def load_frontier(path: str | os.PathLike, p1: int, r: int, k: int) -> int | None:
    """Highest d already searched for (p1, r, k), or None."""
    path = Path(path)
    if not path.exists():
        return None
    data = json.loads(path.read_text())
    entry = data.get(_frontier_key(p1, r, k))
    return None if entry is None else int(entry["searched_to"])


def save_frontier(path: str | os.PathLike, p1: int, r: int, k: int, searched_to: int, stride: int) -> None:
    path = Path(path)
    data = json.loads(path.read_text()) if path.exists() else {}
    data[_frontier_key(p1, r, k)] = {"p1": str(p1), "r": str(r), "k": k, "stride": stride, "searched_to": searched_to}
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def minimal_gap(
    k: int,
    d_bound: int,
    workers: int = 1,
    checkpoint: str | os.PathLike | None = None,
    rounds: int = DEFAULT_ROUNDS,
) -> MinimalGap | NotFound:
    """Least d <= ``d_bound`` such that p*p**j + j*d is prime for j < k, p the smallest prime >= k.

    With ``checkpoint`` the searched frontier is saved after every chunk
    and picked up again on the next call.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    t0 = time.perf_counter()
    p = smallest_prime_geq(k)
    step = common_factor(p, p, k).common_factor
    lo = 0
    if checkpoint is not None:
        done = load_frontier(checkpoint, p, p, k)
        if done is not None:
            lo = done + 1
            log.info("resuming GAP-%d search above d = %d", k, done)
    chunk = step << 14
    while lo <= d_bound:
        hi = min(d_bound, lo + chunk - 1)
        res = runner(SearchSpec(p, p, k, lo, hi, stride="auto", workers=workers, rounds=rounds))
        if res.differences:
            d = res.differences[0]
            return MinimalGap(GapTriple(p, p, d), verify_gap(GapTriple(p, p, d), k, 0, rounds), step, time.perf_counter() - t0)
        if checkpoint is not None:
            save_frontier(checkpoint, p, p, k, hi, step)
        lo = hi + 1
        chunk = min(chunk * 2, step * BLOCK_SIZE * max(workers, 1) * 8)
    return NotFound(k, p, d_bound, step)


def minimal_start_scan(k: int, d_bound: int, rounds: int = DEFAULT_ROUNDS) -> list[tuple[int, int, int | None]]:
    """Try every odd prime start and odd ratio up to the smallest prime >= k.

    Returns ``(p1, r, least d or None)`` in increasing (p1, r) order for the
    pairs whose order bound allows a GAP-k at all.
    """
    p = smallest_prime_geq(k)
    out = []
    for p1 in range(3, p + 1, 2):
        if not probably_prime(p1):
            continue
        for r in range(3, p + 1, 2):
            if max_order(GapTriple(p1, r, 0)) < k:
                continue
            res = runner(SearchSpec(p1, r, k, 0, d_bound, rounds=rounds))
            out.append((p1, r, res.differences[0] if res.differences else None))
    return out


def composite_positions(t: GapTriple, n_max: int = 3) -> dict[int, int]:
    """Indices j = n*p' (n = 1..n_max) mapped to their terms, p' = min(p1, spf(r))."""
    pp = min(([t.p1] if t.p1 > 1 else []) + ([smallest_prime_factor(t.r)] if t.r > 1 else []))
    return {n * pp: t.term(n * pp) for n in range(1, n_max + 1)}


def search_summary(result: SearchResult) -> str:
    s = result.spec
    rate = result.stats.candidates_tested / result.stats.elapsed if result.stats.elapsed else math.inf
    return (
        f"p1={s.p1} r={s.r} k={s.k} d in [{s.d_min}, {s.d_max}] stride={result.stride}: "
        f"{len(result.differences)} hits, {result.stats.candidates_tested} candidates, "
        f"{result.stats.primality_calls} primality calls, {result.stats.elapsed:.2f}s ({rate:.0f}/s)"
    )

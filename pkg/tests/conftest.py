"""Independent oracles and the acceptance summary hook.

Nothing here imports the search or residue code: the oracles use sympy and
a plain bytearray sieve so they can check gapk without sharing its paths.
"""
from __future__ import annotations

import re
from collections import defaultdict

import pytest
from sympy import isprime


def sieve_table(limit: int) -> bytearray:
    table = bytearray([1]) * (limit + 1)
    table[0:2] = b"\x00\x00"
    i = 2
    while i * i <= limit:
        if table[i]:
            table[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
        i += 1
    return table


def trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def brute_force_differences(p1: int, r: int, k: int, d_lo: int, d_hi: int, start_j: int = 0) -> list[int]:
    """Every d in [d_lo, d_hi], stride 1, whose k terms from start_j are prime (sympy)."""
    out = []
    for d in range(d_lo, d_hi + 1):
        if all(isprime(p1 * r**j + j * d) for j in range(start_j, start_j + k)):
            out.append(d)
    return out


@pytest.fixture(scope="session")
def brute():
    return brute_force_differences


# one line per acceptance criterion at the end of the run
_criteria: dict[int, list[tuple[str, str]]] = defaultdict(list)
_CRIT = re.compile(r"test_c(\d\d)_")


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    m = _CRIT.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[int(m.group(1))].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        failed = [name for name, outcome in results if outcome == "failed"]
        skipped = [name for name, outcome in results if outcome == "skipped"]
        status = "FAIL" if failed else ("SKIP" if len(skipped) == len(results) else "PASS")
        detail = f"{len(results) - len(failed) - len(skipped)}/{len(results)} cases passed"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        tr.write_line(f"criterion {n:>2}: {status}  ({detail})")

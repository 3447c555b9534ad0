"""Sequences of admissible differences and OEIS b-file exchange."""
from __future__ import annotations

import csv
import io
import json
import os
import re
import tempfile
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .arith import smallest_prime_geq
from .progression import GapTriple, verify_gap
from .search import SearchSpec, runner

OEIS_URL = "https://oeis.org/{id}/b{digits}.txt"
OFFLINE_ENV = "GAPK_OFFLINE"
CACHE_ENV = "GAPK_CACHE_DIR"
_ID_RE = re.compile(r"^A(\d{6})$")


class BFileError(ValueError):
    pass


class ReferenceUnavailable(RuntimeError):
    pass


@dataclass
class DifferenceSequence:
    k: int
    p1: int
    r: int
    terms: list[int]
    search_bound: int
    oeis_id: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "p1": str(self.p1),
                "r": str(self.r),
                "oeis_id": self.oeis_id,
                "search_bound": str(self.search_bound),
                "terms": [str(t) for t in self.terms],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> DifferenceSequence:
        data = json.loads(text)
        return cls(
            k=int(data["k"]),
            p1=int(data["p1"]),
            r=int(data["r"]),
            terms=[int(t) for t in data["terms"]],
            search_bound=int(data["search_bound"]),
            oeis_id=data.get("oeis_id"),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "d"])
        w.writerows((n, d) for n, d in enumerate(self.terms, start=1))
        return buf.getvalue()


def difference_sequence(
    k: int,
    p1: int | None = None,
    r: int | None = None,
    count: int | None = None,
    bound: int | None = None,
    workers: int = 1,
) -> DifferenceSequence:
    """Admissible differences for (k, p1, r): the first ``count`` or all up to ``bound``.

    ``p1`` and ``r`` default to the minimal choice, the smallest prime >= k.
    """
    if (count is None) == (bound is None):
        raise ValueError("give exactly one of count and bound")
    p = smallest_prime_geq(k)
    p1 = p if p1 is None else p1
    r = p if r is None else r
    if bound is not None:
        res = runner(SearchSpec(p1, r, k, 0, bound, workers=workers))
        if res.note and not res.differences:
            raise ValueError(res.note)
        return DifferenceSequence(k, p1, r, res.differences, bound)

    terms, lo, width = [], 0, 1024
    while len(terms) < count:
        res = runner(SearchSpec(p1, r, k, lo, lo + width - 1, workers=workers))
        if res.note:
            raise ValueError(res.note)
        terms.extend(res.differences)
        lo += width
        width *= 2
    terms = terms[:count]
    return DifferenceSequence(k, p1, r, terms, terms[-1] if terms else 0)


@dataclass
class BFile:
    entries: list[tuple[int, int]]
    offset: int = 1
    comments: list[str] = field(default_factory=list)

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]


def export_bfile(seq: DifferenceSequence, offset: int = 1, comments: list[str] | None = None) -> str:
    if comments is None:
        comments = [f"GAP-{seq.k} differences for p1 = {seq.p1}, r = {seq.r}, exhaustive to d = {seq.search_bound}"]
        if seq.oeis_id:
            comments.insert(0, seq.oeis_id)
    lines = [f"# {c}" for c in comments]
    lines += [f"{n} {d}" for n, d in enumerate(seq.terms, start=offset)]
    return "".join(line + "\n" for line in lines)


def parse_bfile(text: str) -> BFile:
    entries, comments = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            n, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"line {lineno}: non-integer field in {raw!r}") from None
        if entries and n != entries[-1][0] + 1:
            raise BFileError(f"line {lineno}: index {n} does not follow {entries[-1][0]}")
        entries.append((n, v))
    return BFile(entries, entries[0][0] if entries else 1, comments)


def sequence_from_bfile(bfile: BFile, k: int, p1: int, r: int) -> DifferenceSequence:
    terms = bfile.values
    return DifferenceSequence(k, p1, r, terms, terms[-1] if terms else 0)


@dataclass
class Comparison:
    rows: list[tuple[int, int | None, int | None, str]]

    def count(self, status: str) -> int:
        return sum(1 for row in self.rows if row[3] == status)

    @property
    def ok(self) -> bool:
        return self.count("mismatch") == 0

    def summary(self) -> str:
        parts = [f"{s}={self.count(s)}" for s in ("match", "mismatch", "missing", "unverified")]
        return ("OK " if self.ok else "FAIL ") + " ".join(parts)


def compare(seq: DifferenceSequence, reference: BFile) -> Comparison:
    """Line up computed terms with a reference b-file, index by index.

    Reference entries past the computed ones are ``unverified``; computed
    terms past the reference are ``missing`` from it.
    """
    rows = []
    n = max(len(seq.terms), len(reference.entries))
    for i in range(n):
        idx = reference.offset + i
        got = seq.terms[i] if i < len(seq.terms) else None
        ref = reference.entries[i][1] if i < len(reference.entries) else None
        if got is None:
            status = "unverified"
        elif ref is None:
            status = "missing"
        else:
            status = "match" if got == ref else "mismatch"
        rows.append((idx, got, ref, status))
    return Comparison(rows)


def _cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "gapk")


def _fixture(oeis_id: str) -> str | None:
    name = f"b{oeis_id[1:]}.txt"
    res = resources.files("gapk") / "data" / name
    return res.read_text() if res.is_file() else None


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def fetch_reference(
    oeis_id: str, offline: bool | None = None, cache_dir: str | os.PathLike | None = None, timeout: float = 20.0
) -> BFile:
    """Load the b-file for ``oeis_id`` from the web, the cache, or a bundled fixture.

    Offline mode (argument or ``GAPK_OFFLINE=1``) never touches the
    network. Downloaded text is cached verbatim.
    """
    m = _ID_RE.match(oeis_id)
    if not m:
        raise ValueError(f"malformed OEIS id {oeis_id!r}; expected 'A' followed by 6 digits")
    if offline is None:
        offline = os.environ.get(OFFLINE_ENV, "") not in ("", "0")
    cache = Path(cache_dir) if cache_dir is not None else _cache_dir()
    cached = cache / f"b{m.group(1)}.txt"

    if not offline:
        url = OEIS_URL.format(id=oeis_id, digits=m.group(1))
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                text = resp.read().decode("utf-8")
            bfile = parse_bfile(text)
            if not bfile.entries:
                raise BFileError(f"{url}: no entries")
            _write_atomic(cached, text)
            return bfile
        except (urllib.error.URLError, OSError, TimeoutError):
            pass

    for text in (cached.read_text() if cached.is_file() else None, _fixture(oeis_id)):
        if text is not None:
            return parse_bfile(text)
    raise ReferenceUnavailable(f"{oeis_id}: not reachable and no cached copy or fixture")


def verify_sequence(seq: DifferenceSequence) -> list[int]:
    """Terms that fail to re-verify (empty when the sequence is sound)."""
    return [d for d in seq.terms if not verify_gap(GapTriple(seq.p1, seq.r, d), seq.k)]

"""Residue analysis of p1*r**j + j*d modulo small primes.

Modulo a prime q each term is a linear form ``c + b*d`` with
``c = p1*r**j mod q`` and ``b = j mod q``. A form with ``b != 0`` is
divisible by q for exactly one residue of d, so that residue is
forbidden. When the forbidden residues cover every nonzero class, d must
be a multiple of q. Multiplying such forced primes (and 2, for k >= 3)
gives a factor every admissible difference shares.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import is_prime, primes_up_to

DEFAULT_Q_MAX = 200


class FormKind(enum.Enum):
    NUMERIC = "numeric"
    ACTIVE = "active"
    ZERO_CONSTANT = "zero-constant"


class Outcome(enum.Enum):
    FORCED = "forced"
    UNFORCED = "unforced"
    IMPOSSIBLE = "impossible"
    EXEMPT = "exempt"


@dataclass(frozen=True)
class ResidueForm:
    j: int
    c: int
    b: int
    q: int
    kind: FormKind
    exempt: bool = False

    @property
    def forbidden(self) -> int | None:
        """The residue of d that makes this term divisible by q, if any."""
        if self.kind is not FormKind.ACTIVE:
            return None
        return -self.c * pow(self.b, -1, self.q) % self.q

    def __str__(self):
        if self.b == 0:
            return str(self.c)
        dpart = "d" if self.b == 1 else f"{self.b} d"
        return dpart if self.c == 0 else f"{self.c} + {dpart}"


def _check_modulus(q: int) -> None:
    if q < 3 or not is_prime(q):
        raise ValueError(f"modulus must be an odd prime, got {q}")


def _forms(p1: int, r: int, k: int, q: int, start_j: int = 0) -> list[ResidueForm]:
    forms = []
    c = p1 % q * pow(r, start_j, q) % q
    rq = r % q
    for j in range(start_j, start_j + k):
        b = j % q
        if b:
            kind = FormKind.ACTIVE
        elif c:
            kind = FormKind.NUMERIC
        else:
            kind = FormKind.ZERO_CONSTANT
        # A term divisible by q is harmless only when it is q itself; for
        # d >= 0 that can happen only at j = 0.
        exempt = kind is FormKind.ZERO_CONSTANT and j == 0 and p1 == q
        forms.append(ResidueForm(j, c, b, q, kind, exempt))
        c = c * rq % q
    return forms


def residue_forms(p1: int, r: int, k: int, q: int, start_j: int = 0) -> list[ResidueForm]:
    """The ``k`` forms ``c + b*d (mod q)`` for indices ``start_j .. start_j+k-1``.

    >>> [str(f) for f in residue_forms(5, 5, 5, 3)]
    ['2', '1 + d', '2 + 2 d', '1', '2 + d']
    """
    _check_modulus(q)
    if k < 2:
        raise ValueError("k must be >= 2")
    return _forms(p1, r, k, q, start_j)


def forbidden_residues(p1: int, r: int, k: int, q: int, start_j: int = 0) -> frozenset[int]:
    return frozenset(f.forbidden for f in residue_forms(p1, r, k, q, start_j) if f.kind is FormKind.ACTIVE)


@dataclass(frozen=True)
class ModulusAnalysis:
    q: int
    forms: tuple[ResidueForm, ...]
    forbidden: frozenset[int]
    outcome: Outcome

    @property
    def allowed(self) -> frozenset[int]:
        return frozenset(range(self.q)) - self.forbidden

    def degenerate(self) -> list[ResidueForm]:
        """Active forms whose forbidden residue repeats an earlier one."""
        seen, out = set(), []
        for f in self.forms:
            if f.kind is FormKind.ACTIVE:
                if f.forbidden in seen:
                    out.append(f)
                seen.add(f.forbidden)
        return out

    def report(self) -> str:
        lines = [f"mod {self.q}: {{{', '.join(str(f) for f in self.forms)}}}"]
        for f in self.forms:
            if f.kind is FormKind.ACTIVE:
                note = f"d != {f.forbidden} (mod {self.q})"
            elif f.exempt:
                note = "term equals q (exempt)"
            elif f.kind is FormKind.ZERO_CONSTANT:
                note = "divisible by q for every d"
            else:
                note = "numeric"
            lines.append(f"  j={f.j:<4} {str(f):<12} {note}")
        if self.degenerate():
            lines.append(f"  degenerate: j = {', '.join(str(f.j) for f in self.degenerate())}")
        lines.append(f"  forbidden: {sorted(self.forbidden)}  -> {self.outcome.value}")
        return "\n".join(lines)


def analyze_modulus(p1: int, r: int, k: int, q: int, start_j: int = 0) -> ModulusAnalysis:
    forms = residue_forms(p1, r, k, q, start_j)
    forbidden = frozenset(f.forbidden for f in forms if f.kind is FormKind.ACTIVE)
    blocking = any(f.kind is FormKind.ZERO_CONSTANT and not f.exempt for f in forms)
    if blocking or len(forbidden) == q:
        outcome = Outcome.IMPOSSIBLE
    elif len(forbidden) == q - 1 and 0 not in forbidden:
        outcome = Outcome.FORCED
    elif any(f.exempt for f in forms):
        outcome = Outcome.EXEMPT
    else:
        outcome = Outcome.UNFORCED
    return ModulusAnalysis(q, tuple(forms), forbidden, outcome)


@dataclass(frozen=True)
class FactorCertificate:
    k: int
    p1: int
    r: int
    q_max: int
    forced_primes: tuple[int, ...]
    analyses: tuple[ModulusAnalysis, ...]

    @property
    def common_factor(self) -> int:
        return math.prod(self.forced_primes)

    @property
    def impossible(self) -> bool:
        return any(a.outcome is Outcome.IMPOSSIBLE for a in self.analyses)

    @property
    def impossible_moduli(self) -> tuple[int, ...]:
        return tuple(a.q for a in self.analyses if a.outcome is Outcome.IMPOSSIBLE)

    @property
    def label(self) -> str:
        return factor_label(self)

    def report(self) -> str:
        """Plain-text account of the argument, one block per modulus."""
        head = [
            f"k = {self.k}, p1 = {self.p1}, r = {self.r}, q <= {self.q_max}",
            f"common factor: {self.common_factor} = {self.label}",
        ]
        if self.k >= 3:
            head.append("2: d must be even")
        if self.impossible:
            head.append(f"no GAP-{self.k} exists: impossible modulo {list(self.impossible_moduli)}")
        # beyond q = k the forms cannot cover q - 1 residues, so only q <= k is informative
        body = [a.report() for a in self.analyses if a.outcome is not Outcome.UNFORCED or a.q <= self.k]
        return "\n".join(head + body) + "\n"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "p1": str(self.p1),
            "r": str(self.r),
            "q_max": self.q_max,
            "forced_primes": list(self.forced_primes),
            "common_factor": str(self.common_factor),
            "label": self.label,
            "impossible": self.impossible,
            "moduli": [
                {"q": a.q, "forbidden": sorted(a.forbidden), "outcome": a.outcome.value} for a in self.analyses
            ],
        }


def common_factor(p1: int, r: int, k: int, q_max: int = DEFAULT_Q_MAX) -> FactorCertificate:
    """Certificate for the factor shared by every difference d of a GAP-k with this start and ratio."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    analyses = tuple(analyze_modulus(p1, r, k, int(q)) for q in primes_up_to(q_max)[1:])
    forced = ([2] if k >= 3 else []) + [a.q for a in analyses if a.outcome is Outcome.FORCED]
    return FactorCertificate(k, p1, r, q_max, tuple(forced), analyses)


def factor_label(cert_or_primes) -> str:
    """Render forced primes as ``n#`` times leftover primes, largest first.

    >>> factor_label([2, 3, 5, 7, 11, 13, 19, 29])
    '29*19*13#'
    >>> factor_label([2, 3, 5, 13, 19, 29])
    '29*19*13*5#'
    """
    primes = cert_or_primes.forced_primes if isinstance(cert_or_primes, FactorCertificate) else cert_or_primes
    primes = sorted(set(int(p) for p in primes))
    if not primes:
        return "1"
    small = primes_up_to(primes[-1])
    n = 0
    while n < len(small) and int(small[n]) in primes:
        n += 1
    rest = sorted(set(primes) - set(int(p) for p in small[:n]), reverse=True)
    parts = [str(p) for p in rest]
    if n == 1:
        parts.append("2")
    elif n > 1:
        parts.append(f"{int(small[n - 1])}#")
    return "*".join(parts)


def killing_residues(p1: int, r: int, q: int, js) -> tuple[bool, frozenset[int]]:
    """Residues of d (mod any prime q, 2 included) that put q in some term j of ``js``.

    Returns ``(all_killed, residues)``; ``all_killed`` means some term is
    divisible by q whatever d is. Callers must only apply this where every
    term exceeds q.
    """
    out = set()
    p1q, rq = p1 % q, r % q
    for j in js:
        c = p1q * pow(rq, j, q) % q
        b = j % q
        if b:
            out.add(-c * pow(b, -1, q) % q)
        elif c == 0:
            return True, frozenset(range(q))
    return len(out) == q, frozenset(out)

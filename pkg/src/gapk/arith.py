"""Exact integer utilities and primality testing.

Everything here works on plain Python ints, so term values of any size
stay exact. Below 2**64 primality is decided deterministically with a
proven Miller-Rabin base set; above it a Baillie-PSW test plus extra
random strong-pseudoprime rounds gives a probable-prime verdict.
"""
from __future__ import annotations

import enum
import math
import random
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DETERMINISTIC_LIMIT = 1 << 64
DEFAULT_ROUNDS = 40

# First 12 primes are a proven strong-pseudoprime base set for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Verdict(enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    PROBABLE_PRIME = "probable-prime"


class Method(enum.Enum):
    DETERMINISTIC = "deterministic"
    PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class PrimalityVerdict:
    value: int
    verdict: Verdict
    method: Method
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.verdict is not Verdict.COMPOSITE

    @property
    def probable(self) -> bool:
        return self.verdict is Verdict.PROBABLE_PRIME


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes; returns all primes <= n as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


SMALL_PRIMES: tuple[int, ...] = tuple(int(p) for p in primes_up_to(1000))
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)
_SMALL_PRIMORIAL = math.prod(SMALL_PRIMES)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while not a & 1:
            a >>= 1
            if n & 7 in (3, 5):
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (n odd, not square)."""
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while not d & 1:
        d >>= 1
        s += 1

    # Binary Lucas chain for U_d, V_d, Q^d.
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(n: int, rounds: int = DEFAULT_ROUNDS) -> PrimalityVerdict:
    """Classify ``n`` as prime, composite or probable prime.

    Composite verdicts carry a witness: a small prime factor when one was
    found by trial division, otherwise the Miller-Rabin base (or 0 for the
    Lucas part) that exposed ``n``.
    """
    if n < 2:
        return PrimalityVerdict(n, Verdict.COMPOSITE, Method.DETERMINISTIC)
    if n in _SMALL_PRIME_SET:
        return PrimalityVerdict(n, Verdict.PRIME, Method.DETERMINISTIC)
    for p in SMALL_PRIMES:
        if n % p == 0:
            return PrimalityVerdict(n, Verdict.COMPOSITE, Method.DETERMINISTIC, p)
        if p * p > n:
            return PrimalityVerdict(n, Verdict.PRIME, Method.DETERMINISTIC)
    if n < DETERMINISTIC_LIMIT:
        for a in _MR_BASES:
            if not _strong_probable_prime(n, a):
                return PrimalityVerdict(n, Verdict.COMPOSITE, Method.DETERMINISTIC, a)
        return PrimalityVerdict(n, Verdict.PRIME, Method.DETERMINISTIC)

    if not _strong_probable_prime(n, 2):
        return PrimalityVerdict(n, Verdict.COMPOSITE, Method.PROBABILISTIC, 2)
    if math.isqrt(n) ** 2 == n or not _strong_lucas_probable_prime(n):
        return PrimalityVerdict(n, Verdict.COMPOSITE, Method.PROBABILISTIC, 0)
    # Seeded by n so repeated calls agree.
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(3, n - 1)
        if not _strong_probable_prime(n, a):
            return PrimalityVerdict(n, Verdict.COMPOSITE, Method.PROBABILISTIC, a)
    return PrimalityVerdict(n, Verdict.PROBABLE_PRIME, Method.PROBABILISTIC)


def probably_prime(n: int, rounds: int = DEFAULT_ROUNDS) -> bool:
    """Boolean form of :func:`is_prime` for hot loops.

    Large inputs are screened with a single gcd against the product of all
    primes below 1000 before any modular exponentiation.
    """
    if n < 2:
        return False
    if n < 1_000_000:
        return bool(is_prime(n))
    if math.gcd(n, _SMALL_PRIMORIAL) != 1:
        return False
    if n < DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return bool(is_prime(n, rounds))


def primorial(n: int) -> int:
    """Product of all primes <= n; ``primorial(0) == primorial(1) == 1``."""
    if n < 0:
        raise ValueError("primorial is defined for n >= 0")
    return math.prod(int(p) for p in primes_up_to(n))


@lru_cache(maxsize=1)
def _trial_primes() -> np.ndarray:
    return primes_up_to(10**7)


def _pollard_brent(n: int, deadline: float) -> int | None:
    rng = random.Random(n)
    while time.monotonic() < deadline:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            if time.monotonic() > deadline:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def _prime_factors_large(n: int, deadline: float) -> list[int]:
    if probably_prime(n):
        return [n]
    f = _pollard_brent(n, deadline)
    if f is None:
        raise TimeoutError(f"no factor of {n} found within the time budget")
    return _prime_factors_large(f, deadline) + _prime_factors_large(n // f, deadline)


def smallest_prime_factor(n: int, time_budget: float = 30.0) -> int:
    """Least prime dividing ``n``.

    Trial division runs to 10**7; beyond that a prime ``n`` is its own
    answer and a composite one is split with Pollard-Brent. Raises
    ``TimeoutError`` if that does not finish within ``time_budget`` seconds.
    """
    if n < 2:
        raise ValueError(f"smallest_prime_factor needs n >= 2, got {n}")
    for p in SMALL_PRIMES:
        if n % p == 0:
            return p
    if n < 1000 * 1000 or probably_prime(n):
        return n
    limit = math.isqrt(n)
    for p in _trial_primes():
        p = int(p)
        if p > limit:
            return n
        if n % p == 0:
            return p
    return min(_prime_factors_large(n, time.monotonic() + time_budget))


def smallest_prime_geq(k: int) -> int:
    """Least prime p with p >= k."""
    p = max(k, 2)
    while not probably_prime(p):
        p += 1
    return p


def decimal_digits(n: int) -> int:
    """Number of base-10 digits of ``abs(n)``, without converting to str."""
    n = abs(n)
    if n < 10:
        return 1
    est = int((n.bit_length() - 1) * 0.30102999566398120)
    # est is floor(log10) or one below it
    return est + 2 if n >= 10 ** (est + 1) else est + 1

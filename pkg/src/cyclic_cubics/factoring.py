"""Integer factorization sized for polynomial values in parameter scans.

Small primes are removed in one shot with ``gcd(N, primorial)``, which is
far cheaper in pure Python than dividing by each prime in turn. What is
left has only large prime factors; Pollard-Brent rho splits it within an
iteration budget and a deterministic seed, so scans are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import isprime

from .errors import IncompleteFactorization

__all__ = [
    "Factorization",
    "factor",
    "is_squarefree",
    "cubefree_decompose",
    "is_probable_prime",
    "primes_up_to",
    "DEFAULT_TRIAL_BOUND",
    "DEFAULT_RHO_BUDGET",
]

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 2_000_000
RHO_SEED = 20151115


def is_probable_prime(n: int) -> bool:
    return n > 1 and bool(isprime(n))


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> tuple[int, ...]:
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


@lru_cache(maxsize=8)
def _primorial(bound: int) -> int:
    return math.prod(primes_up_to(bound))


@dataclass(frozen=True)
class Factorization:
    """sign * prod(p**e) * cofactor; cofactor is 1 unless the budget ran out."""

    factors: tuple[tuple[int, int], ...]
    sign: int = 1
    cofactor: int = 1
    notes: tuple[str, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self) -> str:
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        if not self.complete:
            body += f"*[{self.cofactor}]"
        return ("-" if self.sign < 0 else "") + body


def _small_part(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Strip primes <= bound from n > 0; return their exponents and the rest."""
    g = math.gcd(n, _primorial(bound))
    found: dict[int, int] = {}
    if g > 1:
        rest = g
        for p in primes_up_to(bound):
            if rest == 1:
                break
            if p * p > rest:
                found[rest] = 0
                break
            if rest % p == 0:
                found[p] = 0
                rest //= p
        for p in found:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    return found, n


def _brent(n: int, rng: random.Random, budget: int) -> int | None:
    """A nontrivial factor of the odd composite n, or None when the budget is spent."""
    if n % 2 == 0:
        return 2
    used = 0
    while used < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
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
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND, rho_budget: int = DEFAULT_RHO_BUDGET,
           seed: int = RHO_SEED) -> Factorization:
    """Factor n != 0. Composite leftovers that rho cannot split within budget end up in ``cofactor``."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found, rest = _small_part(n, trial_bound)
    leftover = 1
    rng = random.Random(seed)
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if m < trial_bound * trial_bound or is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, rng, rho_budget)
        if d is None:
            leftover *= m
        else:
            stack += [d, m // d]
    # merge duplicates that rho may have produced as products
    facs = tuple(sorted((p, e) for p, e in found.items() if e))
    out = Factorization(facs, sign, leftover)
    assert out.value() == sign * n
    return out


def is_squarefree(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND, rho_budget: int = DEFAULT_RHO_BUDGET) -> bool:
    """Squarefreeness of n != 0, deciding without a full factorization where possible."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 is not squarefree-testable")
    g = math.gcd(n, _primorial(trial_bound))
    q = n // g
    if math.gcd(q, g) != 1:
        return False
    m = q
    while True:
        h = math.gcd(m, g)
        if h == 1:
            break
        m //= h
    # every prime factor of m now exceeds trial_bound
    if m == 1 or m < trial_bound**2 or is_probable_prime(m):
        return True
    if m < trial_bound**3:
        r = math.isqrt(m)
        return r * r != m
    fac = factor(m, trial_bound=2, rho_budget=rho_budget)
    if not fac.complete:
        raise IncompleteFactorization(f"could not decide squarefreeness of {n}")
    return all(e == 1 for _, e in fac.factors)


def cubefree_decompose(fac: Factorization) -> tuple[int, int]:
    """(b, c) with |N| = b * c^3 and b cubefree."""
    if not fac.complete:
        raise IncompleteFactorization(f"unfactored part {fac.cofactor}")
    b = c = 1
    for p, e in fac.factors:
        c *= p ** (e // 3)
        b *= p ** (e % 3)
    return b, c

"""Big-integer primality engines: Pepin, Lucas-Lehmer, Miller-Rabin, factorization.

Python ints are already arbitrary precision, so ``BigNat`` is simply ``int``
restricted to non-negative values.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field

from .config import Bounds, default_bounds
from .errors import DomainError, FactorizationIncomplete, ResourceLimitError

BigNat = int

# Sorenson & Webster: the first 13 prime bases are deterministic below this.
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_EXTRA_ROUNDS = 64
SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_TRIAL_PRESCREEN = 1000

RES64_MASK = (1 << 64) - 1


class Outcome(enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Primality:
    n: int
    outcome: Outcome
    method: str
    witness: int | None = None
    # "factor" (a proper divisor) or "res64" (low 64 bits of a failed residue)
    witness_kind: str | None = None
    proven: bool = True

    def __post_init__(self):
        if self.outcome is Outcome.COMPOSITE and self.witness_kind == "factor":
            f = self.witness
            if not (1 < f < self.n and self.n % f == 0):
                raise AssertionError(f"bad factor witness {f} for {self.n}")

    @property
    def is_prime(self) -> bool:
        return self.outcome is Outcome.PRIME

    def to_dict(self):
        return {
            "n": str(self.n) if self.n.bit_length() > 53 else self.n,
            "outcome": self.outcome.value,
            "method": self.method,
            "witness": self.witness,
            "witness_kind": self.witness_kind,
            "proven": self.proven,
        }


@dataclass(frozen=True)
class Factorization:
    n: int
    prime_powers: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        primes = [p for p, _ in self.prime_powers]
        if primes != sorted(set(primes)):
            raise AssertionError("primes must be strictly increasing")
        if math.prod(p**e for p, e in self.prime_powers) != self.n:
            raise AssertionError(f"factorization does not reassemble to {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.prime_powers]

    def divisor_count(self) -> int:
        return math.prod(e + 1 for _, e in self.prime_powers)


def _bounds(bounds):
    return default_bounds() if bounds is None else bounds


def res64(x: int) -> int:
    return x & RES64_MASK


def is_power_of_two(n: int) -> bool:
    if n < 1:
        raise DomainError(f"is_power_of_two needs n >= 1, got {n}")
    return n & (n - 1) == 0


def fermat_number(k: int, bounds: Bounds | None = None) -> int:
    bounds = _bounds(bounds)
    if k < 0:
        raise DomainError(f"Fermat index must be non-negative, got {k}")
    if k > bounds.fermat_max_k:
        raise ResourceLimitError(
            f"Fermat index {k} exceeds bound fermat_max_k={bounds.fermat_max_k}",
            "fermat_max_k",
            bounds.fermat_max_k,
        )
    return (1 << (1 << k)) + 1


def mersenne_number(p: int) -> int:
    if not is_prime(p).is_prime:
        raise DomainError(f"Mersenne exponent must be prime, got {p} (2^n-1 is composite for composite n)")
    return (1 << p) - 1


# -- Miller-Rabin -------------------------------------------------------------


def _mr_round(n: int, d: int, s: int, a: int):
    """One strong-probable-prime round. Returns None on pass, else (residue, factor|None)."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return None
    for _ in range(s - 1):
        y = x * x % n
        if y == n - 1:
            return None
        if y == 1:
            # x is a nontrivial square root of 1
            return x, math.gcd(x - 1, n)
        x = y
    return x, None


def is_prime(n: int) -> Primality:
    """Miller-Rabin; deterministic below ``MR_DETERMINISTIC_BOUND``.

    Above the bound the fixed bases are followed by 64 extra bases drawn from
    an RNG seeded with ``n``, so results are reproducible run to run.
    """
    if n < 0:
        raise DomainError(f"is_prime needs n >= 0, got {n}")
    if n < 2:
        return Primality(n, Outcome.COMPOSITE, "unit" if n == 1 else "zero")
    for p in SMALL_PRIMES:
        if n == p:
            return Primality(n, Outcome.PRIME, "trial-division")
        if n % p == 0:
            return Primality(n, Outcome.COMPOSITE, "trial-division", p, "factor")
    limit = min(_TRIAL_PRESCREEN, math.isqrt(n))
    for d in range(101, limit + 1, 2):
        if n % d == 0:
            return Primality(n, Outcome.COMPOSITE, "trial-division", d, "factor")
    if limit == math.isqrt(n):
        return Primality(n, Outcome.PRIME, "trial-division")

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    deterministic = n < MR_DETERMINISTIC_BOUND
    bases = list(MR_BASES)
    if not deterministic:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(MR_EXTRA_ROUNDS)]
    method = "miller-rabin-deterministic" if deterministic else "miller-rabin-probabilistic"
    for a in bases:
        failed = _mr_round(n, d, s, a)
        if failed is not None:
            residue, factor = failed
            if factor is not None and 1 < factor < n:
                return Primality(n, Outcome.COMPOSITE, method, factor, "factor")
            return Primality(n, Outcome.COMPOSITE, method, res64(residue), "res64")
    return Primality(n, Outcome.PRIME, method, proven=deterministic)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


# -- special-form tests -------------------------------------------------------


def pepin_residue(k: int) -> int:
    """3^((F_k - 1)/2) mod F_k, by 2^k - 1 squarings with shift-based reduction."""
    m = 1 << k
    f = (1 << m) + 1
    mask = (1 << m) - 1
    x = 3
    for _ in range(m - 1):
        x = x * x
        # 2^m == -1 (mod F_k); valid for x < F_k^2
        x = (x & mask) - (x >> m)
        if x < 0:
            x += f
    return x


def pepin_test(k: int, bounds: Bounds | None = None) -> Primality:
    bounds = _bounds(bounds)
    if k < 1:
        raise DomainError("pepin_test needs k >= 1; test F_0 = 3 with is_prime")
    if k > bounds.pepin_max_k:
        raise ResourceLimitError(
            f"Pepin index {k} exceeds bound pepin_max_k={bounds.pepin_max_k}",
            "pepin_max_k",
            bounds.pepin_max_k,
        )
    f = (1 << (1 << k)) + 1
    r = pepin_residue(k)
    if r == f - 1:
        return Primality(f, Outcome.PRIME, "pepin")
    return Primality(f, Outcome.COMPOSITE, "pepin", res64(r), "res64")


def lucas_lehmer_residue(p: int) -> int:
    """s_{p-2} mod M_p with s_0 = 4, using the 2^p == 1 folding trick."""
    m = (1 << p) - 1
    s = 4
    for _ in range(p - 2):
        s = s * s - 2
        if s < 0:
            s += m
        while s > m:
            s = (s & m) + (s >> p)
        if s == m:
            s = 0
    return s


def lucas_lehmer(p: int, bounds: Bounds | None = None) -> Primality:
    bounds = _bounds(bounds)
    if p == 2:
        raise DomainError("Lucas-Lehmer is undefined for p = 2; test M_2 = 3 with is_prime")
    if p < 2 or not is_prime(p).is_prime:
        raise DomainError(f"Lucas-Lehmer needs an odd prime exponent, got {p}")
    if p > bounds.lucas_lehmer_max_p:
        raise ResourceLimitError(
            f"exponent {p} exceeds bound lucas_lehmer_max_p={bounds.lucas_lehmer_max_p}",
            "lucas_lehmer_max_p",
            bounds.lucas_lehmer_max_p,
        )
    r = lucas_lehmer_residue(p)
    m = (1 << p) - 1
    if r == 0:
        return Primality(m, Outcome.PRIME, "lucas-lehmer")
    return Primality(m, Outcome.COMPOSITE, "lucas-lehmer", res64(r), "res64")


# -- factorization --------------------------------------------------------------


def _pollard_brent(n: int, budget: int) -> tuple[int | None, int]:
    """Find a nontrivial factor of odd composite n. Returns (factor or None, iterations used)."""
    used = 0
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
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
            used += r
            r *= 2
            if used > budget:
                return None, used
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return None, used


def factorize(n: int, bounds: Bounds | None = None) -> Factorization:
    bounds = _bounds(bounds)
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    counts: dict[int, int] = {}
    rest = n
    while rest % 2 == 0:
        counts[2] = counts.get(2, 0) + 1
        rest //= 2
    d = 3
    limit = bounds.trial_division_limit
    while d <= limit and d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            counts[d] = e
        d += 2
    if rest > 1:
        if d * d > rest:
            counts[rest] = counts.get(rest, 0) + 1
        else:
            budget = bounds.pollard_rho_iterations
            stack = [rest]
            while stack:
                m = stack.pop()
                if is_prime(m).is_prime:
                    counts[m] = counts.get(m, 0) + 1
                    continue
                f, used = _pollard_brent(m, budget)
                budget -= used
                if f is None:
                    done = tuple(sorted(counts.items()))
                    raise FactorizationIncomplete(n, done, m * math.prod(stack))
                stack += [f, m // f]
    return Factorization(n, tuple(sorted(counts.items())))


def prime_divisors(n: int, bounds: Bounds | None = None) -> list[int]:
    return factorize(n, bounds).primes


def divisors(n: int, bounds: Bounds | None = None) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n, bounds).prime_powers:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)

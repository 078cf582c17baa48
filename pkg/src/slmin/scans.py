"""Batch equivalence scans over ranges of primes.

Work can fan out over a process pool; ``Executor.map`` keeps input order, so
reports do not depend on the worker count.
"""

from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .config import Bounds, default_bounds
from .errors import DomainError, ResourceLimitError
from .minimality import (
    FERMAT_CHARACTERIZATION,
    FERMAT_STP_CHARACTERIZATION,
    MERSENNE_CHARACTERIZATION,
    SCHEMA_VERSION,
    fermat_theorem_check,
    mersenne_theorem_check,
)
from .numtheory import is_prime, lucas_lehmer, primes_up_to


@dataclass
class ScanReport:
    kind: str
    limit: int
    records: list = field(default_factory=list)
    detected: list[int] = field(default_factory=list)
    theorem_trail: tuple[str, ...] = ()
    # Mersenne scans also list exponents q <= limit with M_q prime (Lucas-Lehmer)
    mersenne_exponents: list[int] | None = None
    faults: int = 0

    def summary(self) -> dict:
        out = {
            "checked": len(self.records),
            "detected": self.detected,
            "faults": self.faults,
        }
        if self.mersenne_exponents is not None:
            out["mersenne_exponents"] = self.mersenne_exponents
        return out

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "scan": self.kind,
            "limit": self.limit,
            "theorem_trail": list(self.theorem_trail),
            "summary": self.summary(),
            "records": [r.to_dict() for r in self.records],
        }


def _check_limit(limit, bounds):
    if limit > bounds.scan_max_limit:
        raise ResourceLimitError(
            f"scan limit {limit} exceeds bound scan_max_limit={bounds.scan_max_limit}",
            "scan_max_limit",
            bounds.scan_max_limit,
        )


def _ordered_map(fn, items, workers):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def fermat_scan(limit: int, workers: int = 1, bounds: Bounds | None = None) -> ScanReport:
    bounds = bounds or default_bounds()
    _check_limit(limit, bounds)
    odd_primes = [p for p in primes_up_to(limit) if p > 2]
    records = _ordered_map(functools.partial(fermat_theorem_check, bounds=bounds), odd_primes, workers)
    return ScanReport(
        kind="fermat",
        limit=limit,
        records=records,
        detected=[r.p for r in records if r.side_gaussian],
        theorem_trail=(FERMAT_CHARACTERIZATION, FERMAT_STP_CHARACTERIZATION),
    )


def _lucas_lehmer_flag(q, bounds):
    return lucas_lehmer(q, bounds).is_prime


def mersenne_exponent_scan(limit: int, workers: int = 1, bounds: Bounds | None = None) -> list[int]:
    """Primes q <= limit with 2^q - 1 prime, by Lucas-Lehmer (q = 2 via is_prime)."""
    bounds = bounds or default_bounds()
    if limit > bounds.lucas_lehmer_max_p:
        raise ResourceLimitError(
            f"exponent limit {limit} exceeds bound lucas_lehmer_max_p={bounds.lucas_lehmer_max_p}",
            "lucas_lehmer_max_p",
            bounds.lucas_lehmer_max_p,
        )
    odd = [q for q in primes_up_to(limit) if q > 2]
    flags = _ordered_map(functools.partial(_lucas_lehmer_flag, bounds=bounds), odd, workers)
    out = [2] if limit >= 2 and is_prime(3).is_prime else []
    return out + [q for q, ok in zip(odd, flags) if ok]


def mersenne_scan(limit: int, workers: int = 1, bounds: Bounds | None = None) -> ScanReport:
    bounds = bounds or default_bounds()
    _check_limit(limit, bounds)
    if limit < 0:
        raise DomainError(f"scan limit must be non-negative, got {limit}")
    primes = primes_up_to(limit)
    records = _ordered_map(functools.partial(mersenne_theorem_check, bounds=bounds), primes, workers)
    exponents = mersenne_exponent_scan(min(limit, bounds.lucas_lehmer_max_p), workers, bounds)
    return ScanReport(
        kind="mersenne",
        limit=limit,
        records=records,
        detected=[r.p for r in records if r.side_gaussian],
        theorem_trail=(MERSENNE_CHARACTERIZATION,),
        mersenne_exponents=exponents,
    )

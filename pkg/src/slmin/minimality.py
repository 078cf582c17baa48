"""Minimality verdicts for SL(n, F), STP(n, F) and their products.

The central-subgroup criterion asks that every non-trivial n-th root of unity
of the completion have a non-trivial power inside F.  Roots of unity of a
field form a cyclic group with one subgroup per order, so with
g = gcd(n, W(F^)) and W = W(F) this reduces to: every prime divisor of g
divides W.  Total minimality compares gcd(n, W(F)) with gcd(n, W(F^)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .config import Bounds
from .errors import DomainError, EquivalenceFault, HypothesisError
from .fields import (
    GAUSSIAN_RATIONALS,
    FieldDescriptor,
    FieldKind,
    completion_root_order,
    format_field,
    mu_order,
    padic_rationals,
    root_of_unity_order,
)
from .numtheory import is_power_of_two, is_prime, lucas_lehmer, pepin_test, prime_divisors

SCHEMA_VERSION = "slmin.verdict/1"

# Citation labels carried in every verdict's theorem_trail (part of the JSON contract).
CENTRAL_CRITERION = "Prop. 2.6"
DENSE_MINIMAL = "Prop. 2.10(2)"
DENSE_TOTALLY_MINIMAL = "Prop. 2.10(1)"
TOTAL_CRITERION = "Thm. 2.9"
REAL_FAST_PATH = "Remark 2.11"
STP_EQUIVALENCE = "Thm. 2.5"
STP_DENSE = "Cor. 2.12(1)"
STP_REAL = "Cor. 2.12(2)"
PERFECTLY_MINIMAL = "Prop. 3.3"
INFINITE_POWERS = "Thm. 3.4"
FERMAT_FAMILY = "Thm. 3.5(1)"
MERSENNE_FAMILY = "Thm. 3.5(2)"
FINITE_PRODUCT = "Thm. 3.5"
FERMAT_CHARACTERIZATION = "Thm. 1.1"
FERMAT_STP_CHARACTERIZATION = "Thm. 1.3"
MERSENNE_CHARACTERIZATION = "Thm. 3.1"
TRIVIAL_GROUP = "trivial group"


@dataclass(frozen=True)
class MinimalityVerdict:
    group: str
    field: FieldDescriptor
    minimal: bool | None
    degree: int | None = None
    totally_minimal: bool | None = None
    witness_order: int | None = None
    theorem_trail: tuple[str, ...] = ()
    # conditional product verdicts: minimal is None and this states the condition
    condition: str | None = None
    family: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "group": self.group,
            "degree": self.degree,
            "field": format_field(self.field),
            "minimal": self.minimal,
        }
        if self.totally_minimal is not None:
            out["totally_minimal"] = self.totally_minimal
        if self.witness_order is not None:
            out["witness_order"] = self.witness_order
        if self.condition is not None:
            out["condition"] = self.condition
        if self.family is not None:
            out["family"] = self.family
        out["theorem_trail"] = list(self.theorem_trail)
        return out


def _check_degree(n):
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"degree must be a positive integer, got {n!r}")


def _field_trail(field, dense_label, real_label):
    if field.kind is FieldKind.CYCLOTOMIC:
        return (dense_label,)
    if field.kind is FieldKind.REAL:
        return (real_label,)
    return ()


def _check_witness(n, field, m):
    g = mu_order(n, completion_root_order(field))
    w = root_of_unity_order(field)
    if not (m > 1 and g % m == 0 and w.gcd(m) == 1):
        raise AssertionError(f"witness order {m} invalid for n={n}, {format_field(field)}")


def sl_minimal(n: int, field: FieldDescriptor, bounds: Bounds | None = None) -> MinimalityVerdict:
    _check_degree(n)
    w = root_of_unity_order(field)
    g = mu_order(n, completion_root_order(field))
    offending = [q for q in prime_divisors(g, bounds) if w.gcd(q) == 1]
    witness = min(offending) if offending else None
    if witness is not None:
        _check_witness(n, field, witness)
    trail = (CENTRAL_CRITERION,) + _field_trail(field, DENSE_MINIMAL, REAL_FAST_PATH)
    if n == 1:
        trail = (TRIVIAL_GROUP,) + trail
    return MinimalityVerdict("SL", field, witness is None, n, witness_order=witness, theorem_trail=trail)


def sl_totally_minimal(n: int, field: FieldDescriptor, bounds: Bounds | None = None) -> MinimalityVerdict:
    base = sl_minimal(n, field, bounds)
    totally = mu_order(n, completion_root_order(field)) == mu_order(n, root_of_unity_order(field))
    if totally and not base.minimal:
        raise AssertionError(f"totally minimal but not minimal: n={n}, {format_field(field)}")
    trail = base.theorem_trail + (TOTAL_CRITERION,) + _field_trail(field, DENSE_TOTALLY_MINIMAL, REAL_FAST_PATH)
    return MinimalityVerdict(
        "SL",
        field,
        base.minimal,
        n,
        totally_minimal=totally,
        witness_order=base.witness_order,
        theorem_trail=tuple(dict.fromkeys(trail)),
    )


def stp_minimal(n: int, field: FieldDescriptor, bounds: Bounds | None = None) -> MinimalityVerdict:
    if field.characteristic == 2:
        raise HypothesisError("STP minimality is only characterized in characteristic != 2")
    base = sl_minimal(n, field, bounds)
    trail = (STP_EQUIVALENCE,) + base.theorem_trail + _field_trail(field, STP_DENSE, STP_REAL)
    return MinimalityVerdict(
        "STP", field, base.minimal, n, witness_order=base.witness_order, theorem_trail=trail
    )


def group_minimal(group: str, n: int, field: FieldDescriptor, bounds: Bounds | None = None) -> MinimalityVerdict:
    if group == "SL":
        return sl_totally_minimal(n, field, bounds)
    if group == "STP":
        return stp_minimal(n, field, bounds)
    raise DomainError(f"unknown group kind {group!r}; expected SL or STP")


# -- products -----------------------------------------------------------------


class FamilyShape(enum.Enum):
    EXPLICIT_FINITE = "explicit-finite"
    INFINITE_POWERS_OF_TWO = "infinite-increasing-powers-of-two"
    FERMAT_SET = "fermat-set"
    MERSENNE_SET = "mersenne-set"


@dataclass(frozen=True)
class FamilyDescriptor:
    shape: FamilyShape
    base_field: FieldDescriptor = GAUSSIAN_RATIONALS
    degrees: tuple[int, ...] = ()
    which: str | None = None  # "primes" | "composites" for the set shapes
    assumed_finite: bool | None = None
    group: str = "SL"

    def __post_init__(self):
        if self.group not in ("SL", "STP"):
            raise DomainError(f"family group must be SL or STP, got {self.group!r}")
        if self.shape is FamilyShape.EXPLICIT_FINITE:
            for d in self.degrees:
                _check_degree(d)
            return
        if self.base_field != GAUSSIAN_RATIONALS:
            raise DomainError(f"{self.shape.value} families are only stated over Q(i)")
        if self.shape in (FamilyShape.FERMAT_SET, FamilyShape.MERSENNE_SET):
            if self.which not in ("primes", "composites"):
                raise DomainError(f"set family needs which=primes|composites, got {self.which!r}")

    def to_dict(self):
        out = {"shape": self.shape.value, "group": self.group}
        if self.shape is FamilyShape.EXPLICIT_FINITE:
            out["degrees"] = list(self.degrees)
        if self.which is not None:
            out["which"] = self.which
        if self.shape in (FamilyShape.FERMAT_SET, FamilyShape.MERSENNE_SET):
            out["assumed_finite"] = self.assumed_finite
        return out


def _set_name(family):
    kind = "Fermat" if family.shape is FamilyShape.FERMAT_SET else "Mersenne"
    return f"{kind} primes" if family.which == "primes" else f"composite {kind} numbers"


def product_minimal(family: FamilyDescriptor, bounds: Bounds | None = None) -> MinimalityVerdict:
    """Minimality of a topological product of SL (or STP) groups.

    Finite products are answered only when every factor is minimal; a factor
    with a finite center that is minimal is perfectly minimal, and finitely
    many perfectly minimal factors give a minimal product.  Mixed families
    are refused rather than guessed.
    """
    field = family.base_field
    common = dict(group="PRODUCT", field=field, family=family.to_dict())
    if family.shape is FamilyShape.EXPLICIT_FINITE:
        for d in family.degrees:
            v = group_minimal(family.group, d, field, bounds)
            if not v.minimal:
                raise DomainError(
                    f"refusing product with non-minimal factor {family.group}({d}, {format_field(field)}) "
                    f"(witness order {v.witness_order}); minimality of such products is not established"
                )
        trail = (PERFECTLY_MINIMAL, FINITE_PRODUCT)
        if family.group == "STP":
            trail = (STP_EQUIVALENCE,) + trail
        return MinimalityVerdict(minimal=True, theorem_trail=trail, **common)
    if family.shape is FamilyShape.INFINITE_POWERS_OF_TWO:
        return MinimalityVerdict(minimal=False, theorem_trail=(INFINITE_POWERS,), **common)

    label = FERMAT_FAMILY if family.shape is FamilyShape.FERMAT_SET else MERSENNE_FAMILY
    name = _set_name(family)
    if family.assumed_finite is None:
        return MinimalityVerdict(
            minimal=None,
            condition=f"minimal iff the set of {name} is finite",
            theorem_trail=(label,),
            **common,
        )
    if family.assumed_finite:
        trail = (label, PERFECTLY_MINIMAL)
    else:
        trail = (label, INFINITE_POWERS)
    return MinimalityVerdict(minimal=family.assumed_finite, theorem_trail=trail, **common)


# -- characterization checks ---------------------------------------------------


def _log2_exact(m):
    return m.bit_length() - 1


@dataclass(frozen=True)
class FermatRecord:
    p: int
    side_arithmetic: bool
    side_gaussian: bool
    side_padic: bool
    side_stp: bool
    # Pepin confirmation when p = F_k with k >= 1
    fermat_index: int | None = None
    side_pepin: bool | None = None

    def sides(self):
        out = [self.side_arithmetic, self.side_gaussian, self.side_padic, self.side_stp]
        return out if self.side_pepin is None else out + [self.side_pepin]

    def to_dict(self):
        return {
            "p": self.p,
            "fermat_index": self.fermat_index,
            "side_arithmetic": self.side_arithmetic,
            "side_gaussian": self.side_gaussian,
            "side_padic": self.side_padic,
            "side_stp": self.side_stp,
            "side_pepin": self.side_pepin,
        }


@dataclass(frozen=True)
class MersenneRecord:
    p: int
    side_arithmetic: bool
    sl_minimal: bool
    stp_minimal: bool
    side_gaussian: bool
    # exponent q with p = 2^q - 1, and the Lucas-Lehmer (or is_prime for q = 2) confirmation
    mersenne_exponent: int | None = None
    side_lucas_lehmer: bool | None = None

    def sides(self):
        out = [self.side_arithmetic, self.side_gaussian]
        return out if self.side_lucas_lehmer is None else out + [self.side_lucas_lehmer]

    def to_dict(self):
        return {
            "p": self.p,
            "mersenne_exponent": self.mersenne_exponent,
            "side_arithmetic": self.side_arithmetic,
            "sl_minimal": self.sl_minimal,
            "stp_minimal": self.stp_minimal,
            "side_gaussian": self.side_gaussian,
            "side_lucas_lehmer": self.side_lucas_lehmer,
        }


def fermat_theorem_check(p: int, bounds: Bounds | None = None) -> FermatRecord:
    if p < 3 or p % 2 == 0 or not is_prime(p).is_prime:
        raise DomainError(f"fermat_theorem_check needs an odd prime, got {p}")
    arithmetic = is_power_of_two(p - 1) and is_prime(p).is_prime
    index = pepin = None
    if is_power_of_two(p - 1):
        m = _log2_exact(p - 1)
        if is_power_of_two(m) and m > 1:
            index = _log2_exact(m)
            pepin = pepin_test(index, bounds).is_prime
        elif m == 1:
            index = 0
    record = FermatRecord(
        p=p,
        side_arithmetic=arithmetic,
        side_gaussian=sl_minimal(p - 1, GAUSSIAN_RATIONALS, bounds).minimal,
        side_padic=sl_minimal(p - 1, padic_rationals(p), bounds).minimal,
        side_stp=stp_minimal(p - 1, GAUSSIAN_RATIONALS, bounds).minimal,
        fermat_index=index,
        side_pepin=pepin,
    )
    if len(set(record.sides())) != 1:
        raise EquivalenceFault(f"Fermat characterization sides disagree at p={p}: {record.to_dict()}", record)
    return record


def mersenne_theorem_check(p: int, bounds: Bounds | None = None) -> MersenneRecord:
    if p < 2 or not is_prime(p).is_prime:
        raise DomainError(f"mersenne_theorem_check needs a prime, got {p}")
    arithmetic = is_power_of_two(p + 1) and is_prime(p).is_prime
    sl = sl_minimal(p + 1, GAUSSIAN_RATIONALS, bounds).minimal
    stp = stp_minimal(p + 1, GAUSSIAN_RATIONALS, bounds).minimal
    q = ll = None
    if is_power_of_two(p + 1):
        q = _log2_exact(p + 1)
        if q == 2:
            ll = is_prime(3).is_prime
        elif is_prime(q).is_prime:
            ll = lucas_lehmer(q, bounds).is_prime
        else:
            ll = False
    record = MersenneRecord(p, arithmetic, sl, stp, sl and stp, q, ll)
    if len(set(record.sides())) != 1:
        raise EquivalenceFault(f"Mersenne characterization sides disagree at p={p}: {record.to_dict()}", record)
    return record


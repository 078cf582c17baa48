"""Finite descriptors of topological subfields of local fields.

Every minimality verdict for SL(n, F) depends on just two numbers: the order
W(F) of the group of roots of unity in F, and the order W(F^) of the roots of
unity in the completion.  The descriptors here are the kinds of field for
which both are computable.
"""

from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass

from .errors import DomainError


@functools.total_ordering
@dataclass(frozen=True)
class ExtendedNat:
    """A natural number, or ``INFINITE`` when ``value`` is None."""

    value: int | None

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise DomainError(f"ExtendedNat must be non-negative, got {self.value}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def gcd(self, n: int) -> int:
        if n < 1:
            raise DomainError(f"gcd with ExtendedNat needs n >= 1, got {n}")
        return n if self.value is None else math.gcd(n, self.value)

    def __lt__(self, other):
        other = as_extended(other)
        if self.value is None:
            return False
        return other.value is None or self.value < other.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, ExtendedNat):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return "Infinite" if self.value is None else str(self.value)

    def to_json(self):
        return "Infinite" if self.value is None else self.value


INFINITE = ExtendedNat(None)


def as_extended(x) -> ExtendedNat:
    return x if isinstance(x, ExtendedNat) else ExtendedNat(int(x))


class FieldKind(enum.Enum):
    CYCLOTOMIC = "cyclotomic-archimedean"
    REAL = "real-subfield"
    PADIC = "rationals-p-adic"


@dataclass(frozen=True)
class FieldDescriptor:
    kind: FieldKind
    param: int | None = None
    characteristic: int = 0

    def __post_init__(self):
        if self.kind is FieldKind.CYCLOTOMIC:
            if self.param is None or self.param < 1:
                raise DomainError(f"cyclotomic level must be a positive integer, got {self.param}")
            if self.param <= 2:
                # Q(zeta_1) = Q(zeta_2) = Q sits inside R
                object.__setattr__(self, "kind", FieldKind.REAL)
                object.__setattr__(self, "param", None)
        elif self.kind is FieldKind.PADIC:
            from .numtheory import is_prime

            if self.param is None or self.param < 2 or not is_prime(self.param).is_prime:
                raise DomainError(f"p-adic descriptor needs a prime p, got {self.param}")
        elif self.param is not None:
            raise DomainError("real-subfield descriptor takes no parameter")

    @property
    def is_archimedean(self) -> bool:
        return self.kind is not FieldKind.PADIC

    def __str__(self):
        return format_field(self)


def cyclotomic(d: int) -> FieldDescriptor:
    return FieldDescriptor(FieldKind.CYCLOTOMIC, d)


def padic_rationals(p: int) -> FieldDescriptor:
    return FieldDescriptor(FieldKind.PADIC, p)


REAL_SUBFIELD = FieldDescriptor(FieldKind.REAL)
GAUSSIAN_RATIONALS = cyclotomic(4)


def root_of_unity_order(field: FieldDescriptor) -> ExtendedNat:
    if field.kind is FieldKind.CYCLOTOMIC:
        d = field.param
        return ExtendedNat(d * 2 // math.gcd(d, 2))
    # R-subfields and Q itself contain only +-1
    return ExtendedNat(2)


def completion_root_order(field: FieldDescriptor) -> ExtendedNat:
    if field.kind is FieldKind.CYCLOTOMIC:
        return INFINITE  # dense in C
    if field.kind is FieldKind.REAL:
        return ExtendedNat(2)
    p = field.param
    # roots of unity in Q_p: the (p-1)-th ones for odd p, +-1 in Q_2
    return ExtendedNat(2 if p == 2 else p - 1)


def mu_order(n: int, w: ExtendedNat | int) -> int:
    """Order of the n-th roots of unity inside a field whose full root group has order w."""
    return as_extended(w).gcd(n)


def is_dense_in_C(field: FieldDescriptor) -> bool:
    if not field.is_archimedean:
        raise DomainError(f"{format_field(field)} is not an archimedean descriptor")
    return field.kind is FieldKind.CYCLOTOMIC


# -- textual syntax -------------------------------------------------------------

_ZETA = re.compile(r"^Q\(zeta_(\d+)\)$")
_PADIC = re.compile(r"^Q@(\d+)$")


def parse_field(text: str) -> FieldDescriptor:
    """Parse ``Q(i)``, ``Q(zeta_d)``, ``R-subfield`` (alias ``Q``) or ``Q@p``."""
    s = text.strip().replace(" ", "")
    if s == "Q(i)":
        return GAUSSIAN_RATIONALS
    if s in ("R-subfield", "Q"):
        return REAL_SUBFIELD
    m = _ZETA.match(s)
    if m:
        return cyclotomic(int(m.group(1)))
    m = _PADIC.match(s)
    if m:
        return padic_rationals(int(m.group(1)))
    raise DomainError(
        f"cannot parse field {text!r}; expected one of Q(i), Q(zeta_d), R-subfield, Q@p"
    )


def format_field(field: FieldDescriptor) -> str:
    if field.kind is FieldKind.REAL:
        return "R-subfield"
    if field.kind is FieldKind.PADIC:
        return f"Q@{field.param}"
    if field.param == 4:
        return "Q(i)"
    return f"Q(zeta_{field.param})"

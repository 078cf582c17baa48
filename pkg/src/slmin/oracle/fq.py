"""Small finite fields F_{p^e} with table-driven arithmetic.

Elements are ints 0..q-1; the base-p digits of an element are the
coefficients (lowest first) of its polynomial representative modulo the
chosen irreducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import DomainError
from ..numtheory import is_prime

MAX_ORDER = 1024


def _poly_divmod_is_zero(num, den, p):
    """True iff den divides num over F_p (den monic)."""
    num = list(num)
    dn = len(den) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dn + 1):
                num[i - dn + j] = (num[i - dn + j] - c * den[j]) % p
    return not any(x % p for x in num[:dn])


def is_irreducible(poly: list[int], p: int) -> bool:
    """Exhaustive check for a monic polynomial (coefficients lowest first)."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if _poly_divmod_is_zero(poly, list(tail) + [1], p):
                return False
    return True


def lowest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e whose lower coefficients, read as a base-p number, are smallest."""
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        tail = [(code // p**i) % p for i in range(e)]
        poly = tail + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True, eq=False)
class FqField:
    p: int
    e: int
    modulus: tuple[int, ...]
    add: list = field(repr=False)
    mul: list = field(repr=False)
    neg: list = field(repr=False)
    inv: list = field(repr=False)
    primitive: int = 0

    @property
    def q(self) -> int:
        return self.p**self.e

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FqField(q={self.q}, modulus={self.modulus_str()})"

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def power(self, a, k):
        r = 1
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def order(self, a) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul[x][a]
            k += 1
        return k

    def basis(self) -> list[int]:
        """Additive basis 1, x, ..., x^(e-1) over the prime field."""
        return [self.p**i for i in range(self.e)]

    def prime_subfield(self) -> list[int]:
        return list(range(self.p))

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    def to_dict(self):
        return {"p": self.p, "e": self.e, "q": self.q, "modulus": list(self.modulus)}


def _digits(a, p, e):
    return [(a // p**i) % p for i in range(e)]


def _undigits(ds, p):
    return sum(c * p**i for i, c in enumerate(ds))


def make_field(p: int, e: int = 1) -> FqField:
    if p < 2 or not is_prime(p).is_prime:
        raise DomainError(f"field characteristic must be prime, got {p}")
    if e < 1:
        raise DomainError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > MAX_ORDER:
        raise DomainError(f"field order {q} exceeds table limit {MAX_ORDER}")
    modulus = lowest_irreducible(p, e)
    if not is_irreducible(list(modulus), p):
        raise AssertionError("modulus failed irreducibility check")

    digits = [_digits(a, p, e) for a in range(q)]
    add = [[_undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q)] for a in range(q)]
    neg = [_undigits([(-x) % p for x in digits[a]], p) for a in range(q)]

    def polymul(a, b):
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(digits[a]):
            if x:
                for j, y in enumerate(digits[b]):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus
        for i in range(len(prod) - 1, e - 1, -1):
            c = prod[i]
            if c:
                for j in range(e + 1):
                    prod[i - e + j] = (prod[i - e + j] - c * modulus[j]) % p
        return _undigits(prod[:e], p)

    mul = [[polymul(a, b) for b in range(q)] for a in range(q)]
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)

    fq = FqField(p, e, modulus, add, mul, neg, inv)
    primitive = next((a for a in range(1, q) if fq.order(a) == q - 1), None)
    if primitive is None:
        raise AssertionError(f"multiplicative group of F_{q} is not cyclic")
    object.__setattr__(fq, "primitive", primitive)
    return fq


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e, raising DomainError if q is not a prime power."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise DomainError(f"{q} is not a prime power")
            return p, e
    raise AssertionError("unreachable")

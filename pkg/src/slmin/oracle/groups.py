"""Matrix groups SL, STP, UT and det-1 diagonals over F_q.

A group is described by a generating set plus a membership predicate, so
centers can be computed without listing every element: the centralizer of
the generators inside the matrix algebra is a linear subspace, and the center
is its intersection with the group.  Full enumeration (breadth-first from the
generators) is available when the order is within the configured bound.
"""

from __future__ import annotations

import enum
import math
import random
from collections import deque

from ..config import Bounds, default_bounds
from ..errors import DomainError, ResourceLimitError
from .fq import FqField
from .matrices import MatrixSpace, embed, nullspace, span_elements, twisted_commutation_rows

FULL_CLOSURE_CHECK_MAX = 600
RANDOM_CLOSURE_SAMPLES = 10**4
CONJUGATE_BY_ALL_MAX = 10**4
ALL_COMMUTATORS_MAX = 1000


class GroupKind(enum.Enum):
    SL = "SL"
    STP = "STP"
    UT = "UT"
    DIAG = "DiagonalDet1"


def order_formula(kind: GroupKind, n: int, q: int) -> int:
    ut = q ** (n * (n - 1) // 2)
    if kind is GroupKind.UT:
        return ut
    if kind is GroupKind.DIAG:
        return (q - 1) ** (n - 1)
    if kind is GroupKind.STP:
        return (q - 1) ** (n - 1) * ut
    return ut * math.prod(q**i - 1 for i in range(2, n + 1))


def support(kind: GroupKind, n: int) -> list[tuple[int, int]]:
    if kind is GroupKind.SL:
        return [(i, j) for i in range(n) for j in range(n)]
    if kind is GroupKind.DIAG:
        return [(i, i) for i in range(n)]
    return [(i, j) for i in range(n) for j in range(i, n)]


def make_generators(kind: GroupKind, space: MatrixSpace) -> list[tuple]:
    """Transvections I + t E_ij (t over an additive basis) first, then diagonal generators."""
    n, fq = space.n, space.fq
    gens = []
    if kind is not GroupKind.DIAG:
        pairs = [(i, j) for i in range(n) for j in range(n) if i < j or (kind is GroupKind.SL and i != j)]
        gens += [space.transvection(i, j, t) for i, j in pairs for t in fq.basis()]
    if kind in (GroupKind.STP, GroupKind.DIAG) and fq.q > 2:
        w, w_inv = fq.primitive, fq.inv[fq.primitive]
        for i in range(n - 1):
            d = [1] * n
            d[i], d[i + 1] = w, w_inv
            gens.append(space.diagonal(d))
    return gens


class FiniteMatrixGroup:
    def __init__(self, kind: GroupKind, n: int, fq: FqField, bounds: Bounds | None = None):
        self.kind = kind
        self.n = n
        self.field = fq
        self.space = MatrixSpace(fq, n)
        self.generators = make_generators(kind, self.space)
        self.order = order_formula(kind, n, fq.q)
        self.bounds = bounds or default_bounds()
        self._elements = None
        self._index = None
        self.closure_check = None

    def __repr__(self):
        return f"{self.kind.value}({self.n}, F_{self.field.q})"

    def __len__(self):
        return self.order

    def contains(self, m) -> bool:
        s = self.space
        if self.kind is GroupKind.UT:
            return s.is_unitriangular(m)
        if self.kind is GroupKind.DIAG and not s.is_diagonal(m):
            return False
        if self.kind is GroupKind.STP and not s.is_upper(m):
            return False
        return s.det(m) == 1

    __contains__ = contains

    @property
    def identity(self):
        return self.space.identity

    @property
    def is_enumerated(self) -> bool:
        return self._elements is not None

    @property
    def elements(self) -> list[tuple]:
        if self._elements is None:
            self.enumerate()
        return self._elements

    def index(self, m) -> int:
        if self._index is None:
            self.enumerate()
        return self._index[m]

    def enumerate(self):
        limit = self.bounds.group_max_elements
        if self.order > limit:
            raise ResourceLimitError(
                f"{self!r} has {self.order} elements, above bound group_max_elements={limit}",
                "group_max_elements",
                limit,
            )
        elements = generate_subgroup(self.space, self.generators)
        if len(elements) != self.order:
            raise AssertionError(f"{self!r}: generated {len(elements)} elements, expected {self.order}")
        bad = next((m for m in elements if not self.contains(m)), None)
        if bad is not None:
            raise AssertionError(f"{self!r}: generated element outside the group: {bad}")
        self._elements = elements
        self._index = {m: i for i, m in enumerate(elements)}
        self.closure_check = self._verify_closure()
        return self

    def _verify_closure(self) -> str:
        # Generated breadth-first, so closed under right multiplication by generators.
        mul = self.space.mul
        els, idx = self._elements, self._index
        if len(els) <= FULL_CLOSURE_CHECK_MAX:
            for a in els:
                for b in els:
                    if mul(a, b) not in idx:
                        raise AssertionError(f"{self!r} not closed under products")
            return "full"
        rng = random.Random(len(els))
        for _ in range(RANDOM_CLOSURE_SAMPLES):
            if mul(rng.choice(els), rng.choice(els)) not in idx:
                raise AssertionError(f"{self!r} not closed under products")
        return "generator-bfs+random"

    def inverse(self, m):
        return self.space.inverse(m)


def generate_subgroup(space: MatrixSpace, gens) -> list[tuple]:
    """All elements of <gens>, in breadth-first order from the identity."""
    ident = space.identity
    seen = {ident: None}
    order = [ident]
    queue = deque(order)
    mul = space.mul
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mul(a, g)
            if b not in seen:
                seen[b] = None
                order.append(b)
                queue.append(b)
    return order


def build_group(kind, n: int, fq: FqField, bounds: Bounds | None = None, enumerate: bool = True) -> FiniteMatrixGroup:
    kind = GroupKind(kind) if not isinstance(kind, GroupKind) else kind
    if not 2 <= n <= 4:
        raise DomainError(f"matrix dimension must be in 2..4, got {n}")
    group = FiniteMatrixGroup(kind, n, fq, bounds)
    if enumerate:
        group.enumerate()
    return group


# -- centers ----------------------------------------------------------------------


def _sorted(ms):
    return sorted(set(ms))


def center(group: FiniteMatrixGroup) -> list[tuple]:
    """Exact center: solve X g = g X for every generator g, keep solutions lying in the group."""
    space = group.space
    sup = support(group.kind, group.n)
    rows = []
    for g in group.generators:
        rows += twisted_commutation_rows(space, g, g, sup)
    basis = nullspace(space.fq, rows, len(sup))
    limit = group.bounds.subspace_max_elements
    return _sorted(
        m for v in span_elements(space.fq, basis, len(sup), limit) if (m := embed(space, sup, v)) in group
    )


def center_bruteforce(group: FiniteMatrixGroup) -> list[tuple]:
    mul = group.space.mul
    gens = group.generators
    return _sorted(a for a in group.elements if all(mul(a, g) == mul(g, a) for g in gens))


def _may_hold_invertible(space, sup, basis):
    """Necessary condition for the span to contain an invertible matrix."""
    if not basis:
        return False
    n = space.n
    upper = all(r <= c for r, c in sup)
    for i in range(n):
        if upper:
            cols = [k for k, (r, c) in enumerate(sup) if r == c == i]
        else:
            cols = [k for k, (r, c) in enumerate(sup) if r == i]
        if not any(v[k] for v in basis for k in cols):
            return False
    return True


def center_preimage(group: FiniteMatrixGroup, central: list[tuple]) -> list[tuple]:
    """Preimage of Z(G/C) for a central subgroup C: all g with [g, x] in C for every generator x.

    [g, x] = z is the linear condition g x - (z x) g = 0, so the solution set is
    a union of subspaces indexed by one z per generator; branches whose
    subspace cannot contain an invertible matrix are pruned.
    """
    space, fq = group.space, group.field
    sup = support(group.kind, group.n)
    limit = group.bounds.subspace_max_elements
    twisted = [[space.mul(z, x) for z in central] for x in group.generators]
    found = set()

    def search(k, rows):
        basis = nullspace(fq, rows, len(sup)) if rows else [[1 if t == s else 0 for t in range(len(sup))] for s in range(len(sup))]
        if not _may_hold_invertible(space, sup, basis):
            return
        if k == len(group.generators):
            for v in span_elements(fq, basis, len(sup), limit):
                m = embed(space, sup, v)
                if m in group:
                    found.add(m)
            return
        x = group.generators[k]
        for zx in twisted[k]:
            search(k + 1, rows + twisted_commutation_rows(space, x, zx, sup))

    search(0, [])
    return _sorted(found)


def quotient_center_bruteforce(group: FiniteMatrixGroup, central: list[tuple]):
    """Build G/C from explicit cosets; return (number of cosets, central cosets as sorted tuples)."""
    mul = group.space.mul
    coset_of = {}
    cosets = []
    for g in group.elements:
        if g in coset_of:
            continue
        members = tuple(sorted(mul(g, z) for z in central))
        for m in members:
            coset_of[m] = len(cosets)
        cosets.append(members)
    gens = group.generators
    central_cosets = [
        c for c in cosets if all(coset_of[mul(c[0], x)] == coset_of[mul(x, c[0])] for x in gens)
    ]
    return len(cosets), central_cosets


# -- closures -----------------------------------------------------------------------


def _conjugators(group):
    if group.order <= CONJUGATE_BY_ALL_MAX:
        return group.elements
    return group.generators


def normal_closure(group: FiniteMatrixGroup, element, conjugators=None) -> list[tuple]:
    """Smallest normal subgroup containing ``element``.

    Grows a generating set until the conjugates of its members under the
    conjugating set all lie in the generated subgroup.
    """
    space = group.space
    if element not in group:
        raise DomainError("element is not in the group")
    conj = list(conjugators if conjugators is not None else _conjugators(group))
    pairs = [(g, space.inverse(g)) for g in conj]
    gens = [element]
    while True:
        sub = generate_subgroup(space, gens)
        members = set(sub)
        new = None
        for s in gens:
            for g, gi in pairs:
                c = space.mul(space.mul(g, s), gi)
                if c not in members:
                    new = c
                    break
            if new is not None:
                break
        if new is None:
            break
        gens.append(new)
    for y in sub:
        for g, gi in pairs:
            if space.mul(space.mul(g, y), gi) not in members:
                raise AssertionError("normal closure is not conjugation invariant")
    return _sorted(sub)


def derived_subgroup(group: FiniteMatrixGroup) -> list[tuple]:
    space = group.space
    if group.order <= ALL_COMMUTATORS_MAX:
        els = group.elements
        inv = {a: space.inverse(a) for a in els}
        comms = {space.mul(space.mul(a, b), space.mul(inv[a], inv[b])) for a in els for b in els}
        return _sorted(generate_subgroup(space, sorted(comms)))
    comms = sorted({space.commutator(a, b) for a in group.generators for b in group.generators})
    if not comms or comms == [space.identity]:
        return [space.identity]
    # normal closure of all generator commutators
    conj = _conjugators(group)
    pairs = [(g, space.inverse(g)) for g in conj]
    gens = list(comms)
    while True:
        members = set(generate_subgroup(space, gens))
        extra = [c for s in gens for g, gi in pairs if (c := space.mul(space.mul(g, s), gi)) not in members]
        if not extra:
            return _sorted(members)
        gens.append(extra[0])

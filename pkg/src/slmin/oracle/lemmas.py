"""Brute-force checks of the structural lemmas about STP, SL and UT over F_q.

Matrices in reports are nested lists of field-element codes: the base-p
digits of a code are the polynomial coefficients modulo the field's modulus.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from ..config import Bounds, default_bounds
from ..errors import DomainError, HypothesisError
from .fq import FqField, make_field
from .groups import (
    GroupKind,
    build_group,
    center,
    center_bruteforce,
    center_preimage,
    derived_subgroup,
    normal_closure,
    quotient_center_bruteforce,
)

ORACLE_SCHEMA_VERSION = "slmin.oracle/1"
BRUTEFORCE_CROSSCHECK_MAX = 50000

CENTER_SUITE_DEGREES = (2, 3, 4)
CENTER_SUITE_ORDERS = (3, 4, 5, 7, 9)


@dataclass
class OracleReport:
    lemma: str
    n: int
    fq: FqField
    result: str  # "pass" | "fail" | "exploratory-fail"
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    def to_dict(self) -> dict:
        return {
            "schema_version": ORACLE_SCHEMA_VERSION,
            "lemma": self.lemma,
            "n": self.n,
            "p": self.fq.p,
            "e": self.fq.e,
            "modulus": self.fq.modulus_str(),
            "result": self.result,
            "details": self.details,
        }

    def csv_row(self) -> dict:
        return {"lemma": self.lemma, "n": self.n, "q": self.fq.q, "modulus": self.fq.modulus_str(), "result": self.result}


def _result(ok, exploratory):
    if ok:
        return "pass"
    return "exploratory-fail" if exploratory else "fail"


def _mat(space, m):
    return space.to_lists(m)


def distinct_diagonal_exists(n: int, fq: FqField) -> bool:
    """Is there a det-1 diagonal matrix with pairwise distinct diagonal entries?"""
    for combo in itertools.combinations(range(1, fq.q), n):
        prod = 1
        for x in combo:
            prod = fq.mul[prod][x]
        if prod == 1:
            return True
    return False


def _require_large_field(n, fq, exploratory):
    if fq.q <= n and not exploratory:
        raise HypothesisError(
            f"lemma check needs q > n (got q={fq.q}, n={n}); use exploratory mode to probe small fields"
        )


def verify_center_lemma(n: int, fq: FqField, exploratory: bool = False, bounds: Bounds | None = None) -> OracleReport:
    """Z(STP(n,F_q)) == Z(SL(n,F_q)) == {lambda I : lambda^n = 1}."""
    bounds = bounds or default_bounds()
    _require_large_field(n, fq, exploratory)
    sl = build_group(GroupKind.SL, n, fq, bounds, enumerate=False)
    stp = build_group(GroupKind.STP, n, fq, bounds, enumerate=False)
    z_sl, z_stp = center(sl), center(stp)
    roots = [lam for lam in range(1, fq.q) if fq.power(lam, n) == 1]
    scalars = sorted(sl.space.scalar(lam) for lam in roots)
    methods = ["linear-centralizer"]
    for group, z in ((sl, z_sl), (stp, z_stp)):
        if group.order <= min(BRUTEFORCE_CROSSCHECK_MAX, bounds.group_max_elements):
            if center_bruteforce(group) != z:
                raise AssertionError(f"center of {group!r}: brute force disagrees with linear solve")
            methods.append(f"bruteforce:{group!r}")
    checks = {
        "sl_center_is_roots_of_unity": z_sl == scalars,
        "stp_center_equals_sl_center": z_stp == z_sl,
        "sl_center_size_is_gcd": len(z_sl) == math.gcd(n, fq.q - 1),
    }
    details = {
        "q": fq.q,
        "gcd_n_q_minus_1": math.gcd(n, fq.q - 1),
        "center_sl_size": len(z_sl),
        "center_stp_size": len(z_stp),
        "center_sl": [_mat(sl.space, m) for m in z_sl],
        "center_stp": [_mat(stp.space, m) for m in z_stp],
        "checks": checks,
        "distinct_diagonal_exists": distinct_diagonal_exists(n, fq),
        "methods": methods,
        "exploratory": exploratory,
    }
    return OracleReport("center", n, fq, _result(all(checks.values()), exploratory), details)


def verify_centerfree_quotient(n: int, fq: FqField, exploratory: bool = False, bounds: Bounds | None = None) -> OracleReport:
    """STP(n,F_q) / Z(STP(n,F_q)) has trivial center."""
    bounds = bounds or default_bounds()
    _require_large_field(n, fq, exploratory)
    stp = build_group(GroupKind.STP, n, fq, bounds, enumerate=False)
    z = center(stp)
    preimage = center_preimage(stp, z)
    ok = preimage == z
    methods = ["linear-commutator-branches"]
    details = {
        "q": fq.q,
        "group_order": stp.order,
        "center_size": len(z),
        "cosets": stp.order // len(z),
        "central_cosets": len(preimage) // len(z),
    }
    if stp.order <= min(BRUTEFORCE_CROSSCHECK_MAX, bounds.group_max_elements):
        n_cosets, central = quotient_center_bruteforce(stp, z)
        if n_cosets != details["cosets"] or len(central) != details["central_cosets"]:
            raise AssertionError(f"quotient of {stp!r}: coset brute force disagrees with linear solve")
        methods.append("coset-bruteforce")
    details["methods"] = methods
    details["exploratory"] = exploratory
    return OracleReport("centerfree-quotient", n, fq, _result(ok, exploratory), details)


def verify_ut_intersection_lemma(n: int, p: int, e: int, bounds: Bounds | None = None) -> OracleReport:
    """Every normal closure in STP(n, F_{p^e}) of a non-identity u in UT meets UT(n, F_p) non-trivially."""
    bounds = bounds or default_bounds()
    if n < 3:
        raise HypothesisError(f"UT-intersection lemma needs n >= 3, got n={n}")
    if e < 2:
        raise DomainError(f"need a proper extension F_p < F_(p^e), got e={e}")
    big = make_field(p, e)
    stp = build_group(GroupKind.STP, n, big, bounds)
    space = stp.space
    ident = space.identity
    ut = sorted(m for m in stp.elements if space.is_unitriangular(m))

    def in_small_ut(m):
        return m != ident and space.is_unitriangular(m) and all(x < p for x in m)

    conj_pairs = [(g, space.inverse(g)) for g in stp.generators]
    cache = {}
    classes = 0
    instances = []
    failures = []
    for u in ut:
        if u == ident:
            continue
        if u not in cache:
            closure = normal_closure(stp, u)
            hits = [m for m in closure if in_small_ut(m)]
            entry = (len(closure), min(hits) if hits else None)
            # the whole conjugacy class of u shares this closure
            orbit, frontier = {u}, [u]
            while frontier:
                x = frontier.pop()
                for g, gi in conj_pairs:
                    y = space.mul(space.mul(g, x), gi)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for y in orbit:
                cache[y] = entry
            classes += 1
        size, witness = cache[u]
        row = {"u": _mat(space, u), "closure_size": size, "witness": None if witness is None else _mat(space, witness)}
        instances.append(row)
        if witness is None:
            failures.append(row)
    details = {
        "field_order": big.q,
        "subfield_order": p,
        "group_order": stp.order,
        "checked": len(instances),
        "conjugacy_classes": classes,
        "failures": failures,
        "instances": instances,
    }
    return OracleReport("ut-intersection", n, big, "pass" if not failures else "fail", details)


def verify_derived_subgroup(n: int, fq: FqField, exploratory: bool = False, bounds: Bounds | None = None) -> OracleReport:
    """[STP(n,F_q), STP(n,F_q)] == UT(n,F_q)."""
    bounds = bounds or default_bounds()
    if fq.q <= 2 and not exploratory:
        raise HypothesisError("derived-subgroup check needs q > 2; use exploratory mode for F_2")
    stp = build_group(GroupKind.STP, n, fq, bounds)
    ut = build_group(GroupKind.UT, n, fq, bounds)
    derived = derived_subgroup(stp)
    ut_elements = sorted(ut.elements)
    details = {
        "q": fq.q,
        "stp_order": stp.order,
        "derived_order": len(derived),
        "ut_order": len(ut_elements),
        "exploratory": exploratory,
    }
    return OracleReport("derived-subgroup", n, fq, _result(derived == ut_elements, exploratory), details)


def center_suite(
    degrees=CENTER_SUITE_DEGREES, orders=CENTER_SUITE_ORDERS, bounds: Bounds | None = None
) -> list[OracleReport]:
    """Center and center-free-quotient reports for every (n, q) with q > n."""
    from .fq import prime_power

    reports = []
    for n in degrees:
        for q in orders:
            if q <= n:
                continue
            fq = make_field(*prime_power(q))
            reports.append(verify_center_lemma(n, fq, bounds=bounds))
            reports.append(verify_centerfree_quotient(n, fq, bounds=bounds))
    return reports

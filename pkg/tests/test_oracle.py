import itertools
import math

import pytest

from slmin.config import Bounds
from slmin.errors import DomainError, HypothesisError, ResourceLimitError
from slmin.oracle.fq import is_irreducible, lowest_irreducible, make_field, prime_power
from slmin.oracle.groups import (
    GroupKind,
    build_group,
    center,
    center_bruteforce,
    center_preimage,
    derived_subgroup,
    normal_closure,
    order_formula,
)
from slmin.oracle.lemmas import (
    distinct_diagonal_exists,
    verify_center_lemma,
    verify_centerfree_quotient,
    verify_derived_subgroup,
    verify_ut_intersection_lemma,
)
from slmin.oracle.matrices import MatrixSpace, nullspace


# -- fields ------------------------------------------------------------------------


@pytest.mark.parametrize("p, e, modulus", [(2, 2, (1, 1, 1)), (3, 2, (1, 0, 1)), (2, 3, (1, 1, 0, 1))])
def test_lowest_irreducible(p, e, modulus):
    assert lowest_irreducible(p, e) == modulus


@pytest.mark.parametrize("p, e", [(2, 2), (3, 2), (2, 3), (5, 2), (7, 1)])
def test_field_axioms(p, e):
    f = make_field(p, e)
    q = f.q
    elems = range(q)
    for a, b in itertools.product(elems, elems):
        assert f.add[a][b] == f.add[b][a]
        assert f.mul[a][b] == f.mul[b][a]
    for a, b, c in itertools.product(elems, repeat=3):
        assert f.mul[a][f.add[b][c]] == f.add[f.mul[a][b]][f.mul[a][c]]
    assert all(f.mul[a][f.inv[a]] == 1 for a in range(1, q))
    assert f.order(f.primitive) == q - 1


def test_irreducibility_check():
    assert is_irreducible([1, 0, 1], 3)  # x^2 + 1 over F_3
    assert not is_irreducible([1, 0, 1], 2)  # (x + 1)^2 over F_2
    assert not is_irreducible([1, 0, 1], 5)  # 2^2 = -1 mod 5


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(DomainError):
        prime_power(12)


def test_nullspace_of_dependent_rows():
    # the second row is twice the first mod 5
    assert len(nullspace(make_field(5), [[1, 2, 3], [2, 4, 1]], 3)) == 2


def test_nullspace_dimension():
    f = make_field(5)
    basis = nullspace(f, [[1, 2, 3], [0, 1, 1]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert (v[0] + 2 * v[1] + 3 * v[2]) % 5 == 0 and (v[1] + v[2]) % 5 == 0 and any(v)


def test_det_and_inverse_roundtrip(f4):
    space = MatrixSpace(f4, 3)
    g = build_group(GroupKind.SL, 3, f4, enumerate=False)
    for a in g.generators:
        assert space.det(a) == 1
        assert space.mul(a, space.inverse(a)) == space.identity


# -- group construction -------------------------------------------------------------


@pytest.mark.parametrize(
    "kind, n, q, size",
    [("UT", 3, 3, 27), ("STP", 2, 3, 6), ("SL", 2, 3, 24), ("SL", 3, 2, 168), ("STP", 3, 4, 576), ("DiagonalDet1", 3, 5, 16)],
)
def test_build_group_orders(kind, n, q, size):
    g = build_group(kind, n, make_field(*prime_power(q)))
    assert len(g.elements) == size == g.order


def test_order_formulas_match_brute_force_counts():
    # count det-1 matrices over F_3 directly
    f = make_field(3)
    space = MatrixSpace(f, 2)
    count = sum(1 for m in itertools.product(range(3), repeat=4) if space.det(m) == 1)
    assert count == order_formula(GroupKind.SL, 2, 3)
    upper = sum(1 for m in itertools.product(range(3), repeat=4) if space.is_upper(m) and space.det(m) == 1)
    assert upper == order_formula(GroupKind.STP, 2, 3)


def test_build_group_bound():
    with pytest.raises(ResourceLimitError, match="group_max_elements"):
        build_group("SL", 3, make_field(5), Bounds(group_max_elements=1000))
    with pytest.raises(DomainError):
        build_group("SL", 5, make_field(2))


def test_stp_is_diag_times_ut():
    f = make_field(5)
    stp = build_group("STP", 3, f)
    ut = build_group("UT", 3, f)
    diag = build_group("DiagonalDet1", 3, f)
    space = stp.space
    products = {space.mul(d, u) for d in diag.elements for u in ut.elements}
    assert products == set(stp.elements)


def test_closure_checks_recorded():
    assert build_group("SL", 2, make_field(3)).closure_check == "full"
    assert build_group("STP", 3, make_field(7)).closure_check == "generator-bfs+random"


# -- centers ------------------------------------------------------------------------


def test_center_examples(f4):
    f3 = make_field(3)
    z = center(build_group("SL", 2, f3))
    assert z == [(1, 0, 0, 1), (2, 0, 0, 2)]
    z = center(build_group("SL", 3, f4, enumerate=False))
    assert len(z) == 3 and all(MatrixSpace(f4, 3).is_scalar(m) for m in z)
    ut = build_group("UT", 2, f3)
    assert center(ut) == sorted(ut.elements)


@pytest.mark.parametrize("kind", ["SL", "STP", "UT"])
@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4)])
def test_linear_center_matches_brute_force(kind, n, q):
    g = build_group(kind, n, make_field(*prime_power(q)))
    assert center(g) == center_bruteforce(g)


def test_center_bruteforce_against_all_elements():
    # commuting with generators is equivalent to commuting with everything
    g = build_group("SL", 2, make_field(5))
    mul = g.space.mul
    full = sorted(a for a in g.elements if all(mul(a, b) == mul(b, a) for b in g.elements))
    assert center_bruteforce(g) == full


@pytest.mark.parametrize("n, q", [(2, 3), (2, 4), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (4, 5), (4, 7), (4, 9)])
def test_sl_center_size_is_gcd(n, q):
    g = build_group("SL", n, make_field(*prime_power(q)), enumerate=False)
    assert len(center(g)) == math.gcd(n, q - 1)


@pytest.mark.parametrize("n, q", [(2, 4), (2, 5), (3, 4), (3, 5), (2, 3)])
def test_center_preimage_matches_coset_brute_force(n, q):
    from slmin.oracle.groups import quotient_center_bruteforce

    g = build_group("STP", n, make_field(*prime_power(q)))
    z = center(g)
    _, central = quotient_center_bruteforce(g, z)
    assert len(center_preimage(g, z)) == len(central) * len(z)


def test_center_preimage_detects_non_trivial_second_center():
    # UT(3, F_2) is dihedral of order 8: its center has order 2 and the quotient is abelian
    g = build_group("UT", 3, make_field(2))
    z = center(g)
    assert len(z) == 2
    assert len(center_preimage(g, z)) == 8


# -- normal closures and derived subgroups -----------------------------------------------


def _closure_via_conjugacy_class(group, x):
    """Independent route: full conjugacy class by all elements, then close under products."""
    space = group.space
    cls = {space.conj(g, x) for g in group.elements}
    sub = {space.identity} | cls
    while True:
        new = {space.mul(a, b) for a in sub for b in cls} - sub
        if not new:
            return sorted(sub)
        sub |= new


def test_normal_closure_identity_and_central():
    g = build_group("SL", 2, make_field(5))
    assert normal_closure(g, g.identity) == [g.identity]
    minus = g.space.scalar(4)
    assert normal_closure(g, minus) == sorted([g.identity, minus])


def test_normal_closure_of_transvection_in_sl2_f3():
    g = build_group("SL", 2, make_field(3))
    t = g.space.transvection(0, 1, 1)
    closure = normal_closure(g, t)
    assert closure == _closure_via_conjugacy_class(g, t)
    assert len(closure) == 24


@pytest.mark.parametrize("kind, n, q", [("SL", 2, 5), ("STP", 3, 4), ("STP", 3, 3), ("SL", 3, 2)])
def test_normal_closure_matches_conjugacy_route(kind, n, q):
    g = build_group(kind, n, make_field(*prime_power(q)))
    for x in g.elements[:: max(1, len(g.elements) // 12)]:
        assert normal_closure(g, x) == _closure_via_conjugacy_class(g, x)


def test_normal_closure_rejects_foreign_element():
    g = build_group("UT", 2, make_field(3))
    with pytest.raises(DomainError):
        normal_closure(g, (1, 0, 1, 1))


def test_derived_subgroup_generator_route_matches_all_commutators():
    from slmin.oracle import groups

    g = build_group("STP", 3, make_field(3))
    full = derived_subgroup(g)
    old = groups.ALL_COMMUTATORS_MAX
    groups.ALL_COMMUTATORS_MAX = 0
    try:
        assert derived_subgroup(g) == full
    finally:
        groups.ALL_COMMUTATORS_MAX = old


# -- lemma reports ---------------------------------------------------------------------------


@pytest.mark.parametrize("n, q, size", [(2, 5, 2), (3, 7, 3)])
def test_center_lemma_examples(n, q, size):
    r = verify_center_lemma(n, make_field(q))
    assert r.result == "pass"
    assert r.details["center_sl_size"] == size


def test_center_lemma_f2_exploratory_fails():
    r = verify_center_lemma(2, make_field(2), exploratory=True)
    assert r.result == "exploratory-fail"
    assert r.details["center_stp_size"] == 2 and r.details["center_sl_size"] == 1
    with pytest.raises(HypothesisError):
        verify_center_lemma(2, make_field(2))


def test_center_lemma_fails_on_f3_degree_two():
    # STP(2, F_3) = {+-1} x UT(2, F_3) is abelian, so its center is the whole group
    r = verify_center_lemma(2, make_field(3))
    assert r.result == "fail"
    assert r.details["center_stp_size"] == 6
    assert r.details["distinct_diagonal_exists"] is False


def test_distinct_diagonal_exists():
    assert not distinct_diagonal_exists(2, make_field(3))
    assert distinct_diagonal_exists(2, make_field(2, 2))
    assert distinct_diagonal_exists(3, make_field(2, 2))
    assert not distinct_diagonal_exists(4, make_field(5))  # Wilson: 1*2*3*4 = -1


@pytest.mark.parametrize("n, p, e, cosets", [(2, 5, 1, 10), (3, 2, 2, 192), (2, 3, 1, 1)])
def test_centerfree_quotient_examples(n, p, e, cosets):
    r = verify_centerfree_quotient(n, make_field(p, e))
    assert r.result == "pass"
    assert r.details["cosets"] == cosets
    assert r.details["central_cosets"] == 1


def test_ut_intersection_f4():
    r = verify_ut_intersection_lemma(3, 2, 2)
    assert r.result == "pass"
    assert r.details["checked"] == 63
    assert r.details["group_order"] == 576
    assert not r.details["failures"]


def test_ut_intersection_preconditions():
    with pytest.raises(HypothesisError, match="n >= 3"):
        verify_ut_intersection_lemma(2, 2, 2)
    with pytest.raises(DomainError):
        verify_ut_intersection_lemma(3, 2, 1)


def test_ut_intersection_witnesses_lie_in_small_ut():
    r = verify_ut_intersection_lemma(3, 2, 2)
    for row in r.details["instances"]:
        w = row["witness"]
        flat = [x for line in w for x in line]
        assert all(x < 2 for x in flat)
        assert all(w[i][i] == 1 for i in range(3)) and w != [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("n, p, e, size", [(2, 5, 1, 5), (3, 2, 2, 64)])
def test_derived_subgroup_examples(n, p, e, size):
    r = verify_derived_subgroup(n, make_field(p, e))
    assert r.result == "pass"
    assert r.details["derived_order"] == size


def test_derived_subgroup_f2_exploratory():
    r = verify_derived_subgroup(2, make_field(2), exploratory=True)
    assert r.result == "exploratory-fail"
    assert r.details["derived_order"] == 1
    with pytest.raises(HypothesisError):
        verify_derived_subgroup(2, make_field(2))

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from saito import abelian
from saito.abelian import (Character, PairedGroups, character_group, dual_subgroup,
                           enumerate_closure, extend_character, format_element,
                           parse_element, parse_rational, size_guard,
                           smith_decomposition, subgroups)
from saito.errors import DomainMismatch, GroupTooLarge, ParseError

from oracles import (abelian_groups_up_to, determinantal_divisors, diagonal_generators,
                     invariant_factors, naive_closure)


def el(*cs):
    return tuple(F(c) for c in cs)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


# -- closure -------------------------------------------------------------------

def test_closure_of_involution():
    G = enumerate_closure([el("1/2")])
    assert G.elements == (el(0), el("1/2"))
    assert G.cyclic_type == [2]


def test_closure_of_nothing():
    G = enumerate_closure([], n=1)
    assert G.elements == (el(0),)
    assert G.cyclic_type == []


def test_closure_of_two_thirds():
    G = enumerate_closure([el("1/3", 0), el(0, "1/3")])
    assert G.order == 9
    assert G.cyclic_type == [3, 3]


@pytest.mark.parametrize("ds", abelian_groups_up_to(24))
def test_closure_matches_naive_and_type(ds):
    gens, r = diagonal_generators(ds)
    G = enumerate_closure(gens, n=r)
    assert set(G.elements) == naive_closure(gens, r)
    assert G.cyclic_type == invariant_factors(ds)


def test_closure_mixed_generators():
    gens = [el("1/4", "1/2"), el("1/2", "1/3")]
    G = enumerate_closure(gens)
    assert set(G.elements) == naive_closure(gens, 2)
    # 2*g1 = 3*g2, and g1 + g2 has order 12
    assert G.cyclic_type == [12]


def test_size_guard():
    with size_guard(10):
        with pytest.raises(GroupTooLarge):
            enumerate_closure([el("1/11")])
    assert enumerate_closure([el("1/11")]).order == 11


def test_size_guard_env(monkeypatch):
    monkeypatch.setenv("SAITO_MAX_ORDER", "6")
    with pytest.raises(GroupTooLarge):
        enumerate_closure([el("1/7")])


# -- Smith normal form ---------------------------------------------------------

@pytest.mark.parametrize("M, diag", [
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 1], [0, 3]], [1, 6]),
    ([[3, 0], [0, 3]], [3, 3]),
])
def test_smith_examples(M, diag):
    D, P, Q = smith_decomposition(M)
    assert [D[i][i] for i in range(len(M))] == diag
    assert matmul(matmul(P, M), Q) == D


matrices = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_smith_against_minors(M):
    D, P, Q = smith_decomposition(M)
    n = len(M)
    assert matmul(matmul(P, M), Q) == D
    assert abs(abelian.integer_det(P)) == 1 and abs(abelian.integer_det(Q)) == 1
    assert all(D[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    diag = [D[i][i] for i in range(n)]
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert nonzero == determinantal_divisors(M)


# -- parsing and rendering -----------------------------------------------------

def test_rational_parsing():
    assert parse_rational("1/2") == F(1, 2)
    assert parse_rational(" -3 / 4 ") == F(-3, 4)
    assert parse_rational("5") == 5
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("a")


def test_element_round_trip():
    x = parse_element("(1/3, 5/4)")
    assert x == el("1/3", "1/4")
    assert format_element(x) == "(1/3,1/4)"
    with pytest.raises(ParseError):
        parse_element("(1/3,1/4")
    with pytest.raises(ParseError):
        parse_element("(1/3,x)")


# -- characters ----------------------------------------------------------------

def test_character_group_trivial():
    H = enumerate_closure([], n=1)
    chars = character_group(H)
    assert len(chars) == 1 and chars[0].is_trivial()


def test_character_group_z2():
    H = enumerate_closure([el("1/2")])
    assert sorted(a(el("1/2")) for a in character_group(H)) == [0, F(1, 2)]


def test_character_group_z4():
    H = enumerate_closure([el("1/4")])
    chars = character_group(H)
    assert sorted(a(el("1/4")) for a in chars) == [0, F(1, 4), F(1, 2), F(3, 4)]
    assert all(a.is_homomorphism() for a in chars)


@pytest.mark.parametrize("ds", abelian_groups_up_to(12))
def test_character_group_is_a_group(ds):
    gens, r = diagonal_generators(ds)
    H = enumerate_closure(gens, n=r)
    chars = character_group(H)
    assert len(chars) == H.order
    assert len(set(chars)) == H.order
    assert all(a.is_homomorphism() for a in chars)
    table = set(chars)
    assert all(a + b in table for a in chars for b in chars)


def test_character_kernel_and_restrict():
    G = enumerate_closure([el("1/4")])
    alpha = Character(G, tuple((2 * x[0]) % 1 for x in G.elements))
    assert alpha.kernel().elements == (el(0), el("1/2"))
    assert alpha.image_order() == 2
    assert alpha.restrict(alpha.kernel()).is_trivial()


# -- pairings ------------------------------------------------------------------

def z4_pairing():
    return PairedGroups.from_exponent_matrix([[4]])


def test_dual_of_whole_and_trivial():
    P = z4_pairing()
    assert dual_subgroup(P.G, P).order == 1
    assert dual_subgroup(P.G.trivial_subgroup(), P) == P.Gstar


def test_dual_in_z4():
    P = z4_pairing()
    H = P.G.subgroup([el("1/2")])
    assert dual_subgroup(H, P).elements == (el(0), el("1/2"))


def test_dual_domain_mismatch():
    P = z4_pairing()
    other = enumerate_closure([el("1/3")])
    with pytest.raises(DomainMismatch):
        dual_subgroup(other, P)


def test_extend_trivial_and_z2():
    P = z4_pairing()
    H = P.G.subgroup([el("1/2")])
    assert extend_character(abelian.trivial_character(H), P) == el(0)
    P2 = PairedGroups.from_exponent_matrix([[2]])
    alpha = Character(P2.G, (F(0), F(1, 2)))
    assert extend_character(alpha, P2) == el("1/2")


def test_extend_fermat33():
    P = PairedGroups.from_exponent_matrix([[3, 0], [0, 3]])
    H = P.G.subgroup([el("1/3", 0)])
    alpha = abelian.character(H, lambda x: x[0])
    gamma = extend_character(alpha, P)
    candidates = [g for g in P.Gstar if P.pair(el("1/3", 0), g) == F(1, 3)]
    assert len(candidates) == 3
    assert gamma in candidates


exponent_matrices = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n),
                       min_size=n, max_size=n)).filter(
    lambda E: 1 <= abs(abelian.integer_det(E)) <= 24)


@settings(max_examples=40, deadline=None)
@given(exponent_matrices)
def test_pairing_laws(E):
    P = PairedGroups.from_exponent_matrix(E)
    assert P.G.order == P.Gstar.order == abs(abelian.integer_det(E))
    assert P.is_nondegenerate()
    for H in subgroups(P.G):
        Ht = dual_subgroup(H, P)
        assert H.order * Ht.order == P.G.order
        assert dual_subgroup(Ht, P.transposed()) == H
        for alpha in character_group(H):
            gamma = extend_character(alpha, P)
            assert all(P.pair(a, gamma) == alpha(a) for a in H)
            # kernel duality: dual(ker alpha) = <gamma> + dual(H)
            lhs = dual_subgroup(alpha.kernel(), P)
            assert lhs == P.Gstar.subgroup([gamma]).join(Ht)


def test_subgroups_of_klein_four():
    G = enumerate_closure([el("1/2", 0), el(0, "1/2")])
    orders = sorted(H.order for H in subgroups(G))
    assert orders == [1, 2, 2, 2, 4]


@pytest.mark.parametrize("N", range(1, 25))
def test_subgroups_of_cyclic(N):
    G = enumerate_closure([el(F(1, N))])
    assert sorted(H.order for H in subgroups(G)) == sorted(
        d for d in range(1, N + 1) if N % d == 0)

from __future__ import annotations

import random
from itertools import combinations

import pytest

from garside_pc.conjugacy import minimal_positive_conjugators, rho
from garside_pc.garside import join_pos
from garside_pc.parabolic import (
    UnverifiedStructure,
    adjacency,
    chain_certificate,
    check_lcm_garside,
    check_support_preserving,
    closure,
    contains,
    curve_graph,
    delta_X,
    exponent,
    full_set,
    godelle_check,
    handle,
    intersect,
    is_irreducible,
    is_saturated,
    mask_of,
    membership,
    names_of,
    parabolic_closure,
    ribbon,
    saturated_sets,
    standardize,
    support,
    varphi,
    z_element,
)

from conftest import cat, random_element


def W(S, text):
    return S.word(text)


def M(S, text):
    return mask_of(S, text.split())


# --- atom sets ------------------------------------------------------------


def test_closure_examples():
    C = cat("CP(3,3)")
    assert closure(C, 0) == 0
    assert closure(C, M(C, "t0 t1")) == M(C, "t0 t1 t2")
    G = cat("G24")
    assert closure(G, M(G, "b6 b10")) == M(G, "b1 b6 b10 b13")


def test_corran_picantin_saturated_sets():
    C = cat("CP(3,3)")
    T = M(C, "t0 t1 t2")
    for X in range(full_set(C) + 1):
        assert is_saturated(C, X) == (bin(X & T).count("1") in (0, 1, 3))


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24", "dual_sym(5)"])
def test_saturated_sets_closed_under_intersection(name):
    S = cat(name)
    sats = saturated_sets(S)
    assert len(set(sats)) == len(sats)
    for X, Y in combinations(sats, 2):
        assert is_saturated(S, X & Y)


def test_godelle_examples():
    S = cat("B3")
    assert godelle_check(S, S.DELTA)
    assert godelle_check(S, S.atom("s1"))
    C = cat("CP(3,3)")
    assert godelle_check(C, C.simple_from_word(["t0", "t1"]))


@pytest.mark.parametrize("name", ["B3", "B4", "CP(3,3)", "G24"])
def test_lcm_garside(name):
    rep = check_lcm_garside(cat(name))
    assert rep.passed and rep.delta_is_join and not rep.unbalanced and not rep.not_closed


# --- support and ribbons ---------------------------------------------------


def test_support_examples():
    S = cat("B3")
    assert support(W(S, "s1 s1")) == M(S, "s1")
    assert support(W(S, "D^-1 s1 s1 s2")) == M(S, "s1 s2")
    G = cat("G24")
    assert support(W(G, "b1 b1 b6 b10")) == M(G, "b1 b6 b10 b13")


def test_ribbon_examples():
    S = cat("B3")
    assert ribbon(S, M(S, "s1"), "s1").is_identity()
    assert ribbon(S, M(S, "s1"), "s2") == W(S, "s2 s1")
    C = cat("CP(3,3)")
    assert ribbon(C, M(C, "t1"), "t2") == W(C, "t2")
    # an atom in the closure gives the trivial ribbon
    assert ribbon(C, M(C, "t0 t1"), "t2").is_identity()


@pytest.mark.parametrize("name", ["B4", "B5"])
def test_braid_minimal_conjugators_are_ribbons(name):
    S = cat(name)
    rng = random.Random(6)
    for _ in range(40):
        x = random_element(S, rng, rng.randint(1, 6), signed=False)
        X = support(x)
        for k, a in enumerate(S.atom_names):
            if not X >> k & 1:
                assert rho(a, x) == ribbon(S, X, a)


@pytest.mark.parametrize("name", ["G24", "dual_sym(5)"])
def test_dual_lcm_shape(name):
    S = cat(name)
    atoms = S.atoms
    for a in atoms:
        for b in atoms:
            if a == b:
                continue
            ba = S.product(b, a)
            if ba is None:
                continue
            assert S.join(a, b) == ba
            s, t = S.ldiv(a, ba), S.rdiv(ba, b)
            assert s in atoms and t in atoms


# --- the worked G24 examples -----------------------------------------------


def test_g24_first_example():
    G = cat("G24")
    x = W(G, "b1 b1 b1 b1")
    cert = chain_certificate(G, support(x))
    assert cert.ok and cert.chain[0] == M(G, "b2 b3 b6 b7")
    assert rho("b2", x) == W(G, "b2")
    assert x.conj(W(G, "b2")) == W(G, "b4 b4 b4 b4")
    assert parabolic_closure(x) == handle(G, ["b1"])


def test_g24_second_example():
    G = cat("G24")
    x = W(G, "b1 b1 b6 b10")
    X = support(x)
    assert names_of(G, X) == ["b1", "b6", "b10", "b13"]
    cert = chain_certificate(G, X)
    assert cert.ok and cert.chain[0] == M(G, "b2")
    a = rho("b2", x)
    assert a == W(G, "b2")
    y = x.conj(a)
    assert y == W(G, "b4 b4 b3 b11")
    assert support(y) == M(G, "b4 b3 b11 b8")
    # rho_b3 passes through b2 and is not minimal
    assert rho("b3", x) == W(G, "b2 b3")
    mins = minimal_positive_conjugators(x)
    assert W(G, "b2") in mins and W(G, "b2 b3") not in mins
    # Δ_X = b6 ∨ b10 = b6 b13 has length 2
    assert G.simple(delta_X(G, X)) == join_pos(W(G, "b6"), W(G, "b10")) == W(G, "b6 b13")
    assert varphi(x) == 2


def test_g24_chain_certificates():
    G = cat("G24")
    proper = [X for X in saturated_sets(G) if X != full_set(G)]
    assert len(proper) == 29
    assert all(chain_certificate(G, X).ok for X in proper)


# --- support preservation ----------------------------------------------------


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24"])
def test_support_preserving_sampled(name):
    rep = check_support_preserving(cat(name), "sampled", samples=150, length=6, seed=1)
    assert rep.passed and rep.checked == 150


def test_support_preserving_certificate():
    rep = check_support_preserving(cat("G24"), "certificate")
    assert rep.passed and rep.checked == 29


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24"])
def test_support_size_monotone(name):
    S = cat(name)
    rng = random.Random(14)
    for _ in range(40):
        u = random_element(S, rng, 5, signed=False)
        X = support(u)
        for k, b in enumerate(S.atom_names):
            if not X >> k & 1:
                y = u.conj(rho(b, u))
                assert bin(support(y)).count("1") <= bin(X).count("1")


# --- closures ------------------------------------------------------------------


def test_parabolic_closure_examples():
    S = cat("B3")
    assert parabolic_closure(S.delta(2)) == handle(S, ["s1", "s2"])
    assert parabolic_closure(S.delta(-1)) == handle(S, ["s1", "s2"])
    P = parabolic_closure(W(S, "s2 s1 s2^-1"))
    assert P == handle(S, ["s2"], "s1")
    assert P.z == W(S, "s1^-1 s2 s1")
    assert parabolic_closure(S.identity()).X == 0


def test_varphi_examples():
    S = cat("B3")
    assert varphi(S.delta()) == 3
    assert varphi(W(S, "s2 s1 s2^-1")) == 1


def test_unverified_structure_needs_override():
    S = cat("dual_sym(4)")
    x = W(S, "r12 r23")
    with pytest.raises(UnverifiedStructure):
        parabolic_closure(x)
    assert parabolic_closure(x, override=True).X != 0


def test_z_examples():
    S = cat("B3")
    P = handle(S, ["s1"])
    assert z_element(P) == W(S, "s1") and exponent(P) == 1
    P = handle(S, ["s1", "s2"])
    assert z_element(P) == S.delta(2) and exponent(P) == 2
    B5 = cat("B5")
    P = handle(B5, ["s1", "s3", "s4"])
    assert z_element(P) == W(B5, "s1 s1 s3 s4 s3 s3 s4 s3")
    with pytest.raises(ValueError):
        z_element(handle(S, []))


def test_standardize_examples():
    S = cat("B3")
    c, X = standardize(handle(S, ["s1"]))
    assert c.is_identity() and X == M(S, "s1")
    P = handle(S, ["s2"], "s1")
    c, X = standardize(P)
    assert X == M(S, "s2") and P.z.conj(c) == W(S, "s2")
    G = cat("G24")
    P = handle(G, ["b1"], "b2")
    c, X = standardize(P)
    assert P.z.conj(c) == G.simple(delta_X(G, X)) ** exponent(handle(G, X))
    assert P == handle(G, ["b4"])


def test_membership_examples():
    S = cat("B4")
    P = handle(S, ["s1", "s2"])
    assert membership(W(S, "s2"), P)
    assert not membership(W(S, "s3"), P)
    assert membership(W(S, "s2 s1 s2^-1"), P)
    Q = handle(S, ["s1"], "s3 s2")
    assert membership(W(S, "s1").conj(W(S, "s3 s2")), Q)
    assert contains(handle(S, ["s1", "s2", "s3"]), Q)


def _random_handle(S, rng, conj_len=4):
    sats = [X for X in saturated_sets(S) if X]
    return handle(S, rng.choice(sats), random_element(S, rng, conj_len))


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24"])
def test_closure_laws(name):
    S = cat(name)
    rng = random.Random(23)
    for _ in range(25):
        x = random_element(S, rng, 7)
        P = parabolic_closure(x)
        assert membership(x, P)
        for m in (-1, 2, 3):
            assert parabolic_closure(x**m) == P
        Q = _random_handle(S, rng)
        assert parabolic_closure(Q.z) == Q


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24"])
def test_roots_stay_inside(name):
    S = cat(name)
    rng = random.Random(29)
    for _ in range(25):
        P = _random_handle(S, rng)
        letters = [(n, rng.choice([1, -1])) for n in (rng.choice(P.names) for _ in range(5))]
        x = W(S, letters).conj(P.g)
        h = random_element(S, rng, 3)
        Ph, xh = P.conjugate(h), x.conj(h)
        for m in (2, 3):
            assert membership(xh**m, Ph)
            assert membership(xh, Ph)
            assert parabolic_closure(xh**m) == parabolic_closure(xh)


# --- intersections and adjacency ---------------------------------------------


def test_intersect_examples():
    S = cat("B4")
    r = intersect(handle(S, ["s1", "s2"]), handle(S, ["s2", "s3"]))
    assert r.exact and r.handle == handle(S, ["s2"])
    P = handle(S, ["s1", "s2"])
    r = intersect(P, P)
    assert r.exact and r.handle == P
    B3 = cat("B3")
    Q = handle(B3, ["s2"], "s1")
    r = intersect(Q, handle(B3, ["s1", "s2"]))
    assert r.exact and r.handle == Q


@pytest.mark.parametrize("name", ["B4", "CP(3,3)"])
def test_intersect_conjugated_pairs(name):
    S = cat(name)
    rng = random.Random(41)
    sats = [X for X in saturated_sets(S) if X]
    exact = 0
    for _ in range(40):
        X, Y = rng.choice(sats), rng.choice(sats)
        h = random_element(S, rng, 4)
        r = intersect(handle(S, X, h), handle(S, Y, h))
        truth = handle(S, X & Y, h)
        if r.exact:
            exact += 1
            assert r.handle == truth
        else:
            # a bounded search only certifies a subgroup of the intersection
            assert r.method == "bounded-search" and contains(truth, r.handle)
    assert exact >= 35


def test_adjacency_examples():
    S = cat("B4")
    assert adjacency(handle(S, ["s1"]), handle(S, ["s3"]))
    assert not adjacency(handle(S, ["s1"]), handle(S, ["s2"]))
    B3 = cat("B3")
    assert adjacency(handle(B3, ["s1"]), handle(B3, ["s1", "s2"]))
    with pytest.raises(ValueError):
        adjacency(handle(S, ["s1", "s3"]), handle(S, ["s2"]))


def test_irreducible_examples():
    S = cat("B4")
    assert not is_irreducible(handle(S, ["s1", "s3"]))
    assert is_irreducible(handle(S, ["s1", "s2"]))
    C = cat("CP(3,3)")
    assert is_irreducible(handle(C, ["t0", "t1", "t2", "s3"]))


def test_curve_graph_examples():
    S = cat("B3")
    g = curve_graph(S, 0)
    assert [P.names for P in g.vertices] == [["s1"], ["s2"], ["s1", "s2"]]
    assert g.edges == [(0, 2), (1, 2)]
    assert '"rank": 2' in g.to_json() and "graph curves" in g.to_dot()
    B4 = cat("B4")
    g = curve_graph(B4, 0)
    names = [P.names for P in g.vertices]
    assert (names.index(["s1"]), names.index(["s3"])) in g.edges
    G = cat("G24")
    g = curve_graph(G, 0)
    ranks = sorted(bin(P.X).count("1") for P in g.vertices)
    assert len(g.vertices) == 29 and ranks.count(1) == 14


def test_curve_graph_cliques():
    g = curve_graph(cat("B4"), 0)
    assert max(len(c) for c in g.cliques()) >= 3

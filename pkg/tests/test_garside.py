from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from garside_pc.garside import (
    Element,
    is_prefix,
    join_pos,
    left_fraction,
    meet_pos,
    rescale,
    right_fraction,
)

from conftest import cat, random_element


def simple(S, text):
    return S.simple_from_word(text.split())


def all_reduced_words(S, s):
    """Every atom word of the simple s, built by peeling atoms off the left."""
    if s == S.ID:
        return [[]]
    out = []
    for a in S.atoms:
        if S.is_prefix(a, s):
            rest = S.ldiv(a, s)
            out += [[S.atom_names[S.atoms.index(a)]] + w for w in all_reduced_words(S, rest)]
    return out


# --- construction ---------------------------------------------------------


def test_classical_b3_shape():
    S = cat("B3")
    assert S.N == 6 and len(S.atoms) == 2
    assert S.simple_word(S.DELTA) == ["s1", "s2", "s1"]
    assert S.delta_length == 3


def test_corran_picantin_delta():
    S = cat("CP(3,3)")
    assert S.delta() == S.word("t0 t1 s3 t0 t1 s3")
    assert S.delta_length == 6


def test_g24_delta_and_short_simples():
    S = cat("G24")
    assert S.delta() == S.word("b1 b2 b3")
    assert all(S.length[s] <= 2 for s in range(S.N) if s != S.DELTA)


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24", "dual_sym(5)"])
def test_structure_invariants(name):
    S = cat(name)
    full = S.ID
    for a in S.atoms:
        full = S.join(full, a)
    assert full == S.DELTA
    assert sorted(S.tau[a] for a in S.atoms) == sorted(S.atoms)
    for s in range(S.N):
        dd = S.complement(S.complement(s, S.DELTA), S.DELTA)
        assert S.simple(dd) == S.simple(s).conj(S.delta())


# --- head and normal forms ----------------------------------------------


def test_head_examples():
    S = cat("B3")
    s1, s2 = S.atom("s1"), S.atom("s2")
    assert S.head(s1, s2) == simple(S, "s1 s2")
    assert S.head(s1, s1) == s1
    G = cat("G24")
    assert G.head(G.atom("b1"), G.atom("b2")) == simple(G, "b1 b2")


@pytest.mark.parametrize("name", ["B3", "G24", "dual_sym(4)", "I2(6)"])
def test_head_oracle_all_pairs(name):
    S = cat(name)
    simples = [S.simple(s) for s in range(S.N)]
    for a in range(S.N):
        for b in range(S.N):
            x = simples[a] * simples[b]
            best = max(
                (d for d in range(S.N) if (simples[d].inverse() * x).is_positive()),
                key=lambda d: S.length[d],
            )
            assert S.head(a, b) == best


def test_normal_form_examples():
    S = cat("B3")
    assert str(S.word("s1 s2 s1 s2")) == "D^1 . s2"
    e = S.word("")
    assert e.p == 0 and e.factors == () and e.is_identity()
    x = S.word("s1^-1 s2")
    assert str(x) == "D^-1 . s1 s2 . s2"
    assert S.is_left_weighted(x.factors)
    assert x == S.word("s1").inverse() * S.word("s2")


def test_mul_inverse_examples():
    S = cat("B3")
    assert (S.delta() * S.delta(-1)).is_identity()
    x = S.word("s1") * S.word("s2")
    assert x.p == 0 and x.factors == (simple(S, "s1 s2"),)
    y = S.word("D s2")
    assert (y * y.inverse()).is_identity() and (y.inverse() * y).is_identity()


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24"])
def test_normal_form_is_canonical(name):
    """Two words for the same element, obtained by rewriting simples, agree."""
    S = cat(name)
    rng = random.Random(11)
    words = {s: all_reduced_words(S, s) for s in range(S.N)}
    for _ in range(60):
        pieces = [(rng.randrange(1, S.N), rng.choice([1, -1])) for _ in range(rng.randint(1, 6))]

        def render():
            out = []
            for s, sign in pieces:
                w = rng.choice(words[s])
                out += [(n, 1) for n in w] if sign > 0 else [(n, -1) for n in reversed(w)]
            return out

        x, y = S.word(render()), S.word(render())
        assert x == y
        assert (x.p, x.factors) == (y.p, y.factors)
        assert S.is_left_weighted(x.factors)
        assert all(f not in (S.ID, S.DELTA) for f in x.factors)


@pytest.mark.parametrize("name", ["B3", "CP(3,3)", "G24"])
def test_group_axioms(name):
    S = cat(name)
    rng = random.Random(5)
    for _ in range(80):
        x, y, z = (random_element(S, rng, 6) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x * x.inverse()).is_identity()
        assert (x * y).inverse() == y.inverse() * x.inverse()
        assert x ** 3 == x * x * x and x ** -2 == (x * x).inverse()


# --- lattice operations --------------------------------------------------


def test_lcm_examples():
    S = cat("B3")
    assert join_pos(S.word("s1"), S.word("s2")) == S.delta()
    G = cat("G24")
    j = join_pos(G.word("b6"), G.word("b10"))
    assert j == G.word("b6 b13") == G.word("b10 b1")
    C = cat("CP(3,3)")
    assert join_pos(C.word("t0"), C.word("t2")) == C.word("t0 t1")


positive_words = st.lists(st.integers(min_value=0, max_value=13), max_size=8)


def _pos(S, idx):
    return S.positive([i % len(S.atoms) for i in idx])


@pytest.mark.parametrize("name", ["B4", "G24", "CP(3,3)"])
@given(a=positive_words, b=positive_words, c=positive_words)
def test_lattice_laws(name, a, b, c):
    S = cat(name)
    x, y, z = _pos(S, a), _pos(S, b), _pos(S, c)
    m, j = meet_pos(x, y), join_pos(x, y)
    assert m == meet_pos(y, x) and j == join_pos(y, x)
    assert meet_pos(meet_pos(x, y), z) == meet_pos(x, meet_pos(y, z))
    assert join_pos(join_pos(x, y), z) == join_pos(x, join_pos(y, z))
    assert meet_pos(x, join_pos(x, y)) == x and join_pos(x, meet_pos(x, y)) == x
    assert is_prefix(m, x) and is_prefix(x, j) and is_prefix(y, j)


@pytest.mark.parametrize("name", ["B4", "G24", "dual_sym(5)", "CP(4,3)"])
def test_tau_preserves_lattice(name):
    S = cat(name)
    rng = random.Random(2)
    for _ in range(400):
        a, b = rng.randrange(S.N), rng.randrange(S.N)
        assert S.tau[S.meet(a, b)] == S.meet(S.tau[a], S.tau[b])
        assert S.tau[S.join(a, b)] == S.join(S.tau[a], S.tau[b])


@pytest.mark.parametrize("name", ["B4", "G24", "CP(3,3)"])
def test_simple_length_matches_image(name):
    S = cat(name)
    metric = S.interval.metric
    for s in range(S.N):
        assert S.simple(s).length() == metric.length[S.perms[s]] == S.length[s]


# --- fractions ------------------------------------------------------------


def test_fraction_examples():
    S = cat("B3")
    f = left_fraction(S.word("s1^-1 s2"))
    assert (f.den, f.num) == (S.word("s1"), S.word("s2"))
    x = S.word("s1 s2 s2")
    f = left_fraction(x)
    assert f.den.is_identity() and f.num == x
    f = left_fraction(S.word("D^-1 s1 s1 s2"))
    assert (f.den, f.num) == (S.word("s2 s1"), S.word("s1 s2"))
    assert meet_pos(f.den, f.num).is_identity()


@pytest.mark.parametrize("name", ["B4", "CP(3,3)", "G24"])
def test_fractions_are_reduced(name):
    S = cat(name)
    rng = random.Random(9)
    for _ in range(100):
        x = random_element(S, rng, 8)
        lf, rf = left_fraction(x), right_fraction(x)
        assert lf.den.inverse() * lf.num == x
        assert rf.num * rf.den.inverse() == x
        assert meet_pos(lf.den, lf.num).is_identity()
        assert lf.den.is_positive() and lf.num.is_positive()


# --- rescaling ------------------------------------------------------------


def test_rescale():
    S = cat("B3")
    assert rescale(S, 1) is S
    R = rescale(S, 2)
    assert R.is_simple(S.word("s1 s2 s1 s2"))
    assert not R.is_simple(S.word("D^2 s1"))
    x = S.word("D^-1 s1 s1 s2 s1 s2")
    den = left_fraction(x).den
    assert den.sup <= 2 and R.is_simple(den)


@given(st.lists(st.sampled_from(["s1", "s2", "s3"]), max_size=12))
def test_canonical_length_is_word_length(letters):
    S = cat("B4")
    x = S.positive(letters)
    assert x.length() == len(letters)
    assert isinstance(x, Element) and x.is_positive()

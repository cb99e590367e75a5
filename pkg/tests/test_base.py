import random

import pytest
from hypothesis import given, strategies as st

from twodescent.base import (
    BASES, Computad, CoverSpec, PathGroupoid, Step, bundled_base, diagonal, induced_functor,
    inv_word, parse_word, projection, reduce_word, to_base, word_str,
)
from twodescent.twocat import ConstructionError, TypingError

letters = st.tuples(st.sampled_from(["a", "b", "c"]), st.sampled_from([1, -1]))


def test_parse_and_print_words():
    w = parse_word("e0 e1^-1 e2")
    assert w == (("e0", 1), ("e1", -1), ("e2", 1))
    assert word_str(w) == "e0 e1^-1 e2"
    assert parse_word("") == ()


@given(st.lists(letters, max_size=12))
def test_word_reduction(w):
    w = tuple(w)
    r = reduce_word(w)
    assert reduce_word(r) == r
    assert reduce_word(w + inv_word(w)) == ()
    assert parse_word(word_str(r)) == r


def test_path_typing():
    X, _ = bundled_base("C6")
    p = X.path("e0 e1")
    assert (p.src, p.tgt) == ("v0", "v2")
    assert p.then(p.inverse()).word == ()
    with pytest.raises(TypingError):
        X.path("e0 e2")
    with pytest.raises(TypingError):
        X.path("")
    assert X.path("", start="v3").src == "v3"
    with pytest.raises(TypingError):
        p.then(p)


@pytest.mark.parametrize("bad", [
    (["x", "x"], {}, {}),
    (["x"], {"e": ("x", "y")}, {}),
    (["x", "y"], {"e": ("x", "y")}, {"F": ((("e", 1),), (("e", -1),))}),
    (["x"], {"e": ("x", "x")}, {"F": ((("e", 1), ("e", -1)), ())}),
])
def test_computad_validation(bad):
    with pytest.raises(ConstructionError):
        Computad(*bad)


def test_cover_validation():
    X, _ = bundled_base("C6")
    with pytest.raises(ConstructionError, match="boundary"):
        CoverSpec(X, [{"e0"}, X.cells()])
    with pytest.raises(ConstructionError, match="no patch"):
        CoverSpec(X, [{"v0"}])


def test_fibre_space_sizes(base_name):
    X, cover = bundled_base(base_name)
    for k in (1, 2, 3):
        Y = cover.space(k)
        # each base cell appears once per k-tuple of patches containing it
        count = lambda cells: sum(len(cover.containing(c)) ** k for c in cells)
        assert len(Y.vertices) == count(X.vertices)
        assert len(Y.edges) == count(X.edges)
        assert len(Y.faces) == count(X.faces)


def test_projections_and_diagonals_are_cellular(base_name):
    _, cover = bundled_base(base_name)
    for k, pos in ((2, (0,)), (2, (1,)), (3, (0, 1)), (3, (1, 2)), (3, (0, 2)), (4, (0, 1, 3))):
        assert projection(cover, k, pos).check()
    for pattern in ((0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)):
        assert diagonal(cover, pattern).check()
    assert to_base(cover, 2).check()


def test_projection_after_diagonal_is_identity():
    _, cover = bundled_base("torus3")
    d, p = diagonal(cover, (0, 0)), projection(cover, 2, (1,))
    Y = cover.space(1)
    for c in list(Y.vertices) + list(Y.edges) + list(Y.faces):
        assert d.then(p).cell(c) == c


def test_face_relation_on_torus():
    X, _ = bundled_base("torus3")
    P = PathGroupoid(X)
    a = P.face("sq00")
    assert str(a.src) == "h00 v10" and str(a.tgt) == "v00 h01"
    assert P.is_identity2(P.vert(P.inv2(a), a))
    assert P.is_identity2(P.vert(a, P.inv2(a)))
    assert not P.eq2(a, P.face("sq00", -1)) and P.eq2(P.inv2(a), P.face("sq00", -1))


def test_bad_step_is_a_typing_error():
    X, _ = bundled_base("torus3")
    P = PathGroupoid(X)
    with pytest.raises(TypingError):
        P.bigon(X.path("v00 h01"), (Step((), "sq00", 1, ()),))
    with pytest.raises(TypingError):
        P.bigon(X.path("h00 v10"), (Step((), "nope", 1, ()),))


def test_exchange_holds_for_whiskered_faces():
    X, _ = bundled_base("torus3")
    P = PathGroupoid(X)
    # sq00 ends at p11, where sq11 starts
    a, b = P.face("sq00"), P.face("sq11")
    lhs = P.horiz(b, a)
    rhs1 = P.vert(P.horiz(b, P.unit2(a.tgt)), P.horiz(P.unit2(b.src), a))
    rhs2 = P.vert(P.horiz(P.unit2(b.tgt), a), P.horiz(b, P.unit2(a.src)))
    assert P.eq2(lhs, rhs1) and P.eq2(lhs, rhs2)
    assert lhs.steps != rhs2.steps


def _random_2cell(P, rng, n):
    X = P.X
    cells = [P.face(F, s) for F in X.faces for s in (1, -1)]
    cur = rng.choice(cells)
    for _ in range(n):
        b = rng.choice(cells)
        e = rng.choice(list(X.edges))
        w = P.unit2(X.path(((e, 1),)))
        cand = [P.horiz(b, cur), P.horiz(cur, b), P.horiz(w, cur), P.horiz(cur, w)]
        cand = [c for c in cand if c is not None]
        if cand:
            cur = rng.choice(cand)
    return cur


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_normal_form_is_confluent(seed, order):
    X, _ = bundled_base("torus3")
    P = PathGroupoid(X)
    a = _random_2cell(P, random.Random(seed), 4)
    n1 = P.normal_form(a)
    n2 = P.normal_form(a, rng=random.Random(order))
    assert n1 == n2
    assert P.eq2(n1, a)


def test_induced_functor_is_strict():
    _, cover = bundled_base("torus3")
    f = projection(cover, 2, (0,))
    F = induced_functor(f)
    Y2 = cover.space(2)
    S = PathGroupoid(Y2)
    e1, e2 = next((a, b) for a, (s, t) in Y2.edges.items()
                  for b, (u, v) in Y2.edges.items() if t == u)
    p, q = Y2.path(((e1, 1),)), Y2.path(((e2, 1),))
    assert F.one(S.comp(q, p)) == F.target.comp(F.one(q), F.one(p))


def test_bundled_bases_have_expected_patch_counts():
    counts = {name: len(bundled_base(name)[1]) for name in BASES}
    assert counts == {"point": 1, "C6": 2, "C6x3": 3, "grid2": 2, "torus3": 4, "octahedron": 4}

import random

import pytest
from hypothesis import given, settings, strategies as st

from twodescent.base import bundled_base
from twodescent.codescent import Jump, SectionChoice, Xi
from twodescent.descent import (
    GeneratedFunctor, check_descent_1mor, check_descent_2mor, check_descent_object,
    identity_descent,
)
from twodescent.instances import (
    CrossedModule, symmetric_group3, trivial_group,
)
from twodescent.textio import load_text
from twodescent.transport import (
    TransportQuery, check_trivialized, eta, extract, extract_1mor, extract_2mor,
    extraction_compositor, extraction_unitor, holonomy, pairing_R, pairing_R_1mor,
    random_trivialized_functor, reconstruct, rho, transcript, trivialize, two_group_context,
)
from twodescent.twocat import (
    ConstructionError, Modification, TypingError, identity_transformation,
)

from conftest import FIXTURES


def _tf(name, seed, normalized=False, cm=None):
    ctx = two_group_context(bundled_base(name)[1], cm)
    return random_trivialized_functor(ctx, random.Random(seed), normalized=normalized)


@pytest.mark.parametrize("name", ["C6", "grid2", "torus3", "octahedron"])
def test_random_trivialized_functors_are_valid(name):
    for k in range(3):
        tf = _tf(name, k, normalized=k == 0)
        assert not check_trivialized(tf)
        assert not check_descent_object(extract(tf))


def test_pairing_sends_jumps_to_g_and_xi_to_f():
    tf = _tf("C6x3", 1)
    D = extract(tf)
    R = pairing_R(D)
    for a in D.ctx.points(2):
        assert R.one(Jump(a)) == D.g.at0(a)
    for x in D.ctx.points(3):
        assert D.ctx.T.eq2(R.two(Xi(x)), D.f.at(x))


def test_pairing_rejects_invalid_objects():
    ws = load_text((FIXTURES / "C6-bad-f.2d").read_text(encoding="utf-8"))
    D = next(D for _, D in ws.of_kind("descent") if check_descent_object(D))
    with pytest.raises(ConstructionError, match="violation"):
        pairing_R(D)


def test_pairing_of_the_identity_1morphism():
    D = extract(_tf("torus3", 2))
    m = identity_descent(D)
    Rm = pairing_R_1mor(m)
    for a in D.ctx.points(2):
        assert Rm.at1(Jump(a)) == m.eps.at(a)
    for a in D.ctx.points(1):
        assert Rm.at0(a) == m.h.at0(a)


@pytest.mark.parametrize("name", ["C6", "torus3", "octahedron"])
def test_reconstruction_is_a_trivialized_functor(name):
    D = extract(_tf(name, 3))
    cover = D.ctx.cover
    for ch in (SectionChoice.hub(cover), SectionChoice.random(cover, random.Random(name))):
        assert not check_trivialized(reconstruct(D, ch))


@pytest.mark.parametrize("name", ["C6", "torus3"])
def test_extraction_on_morphisms(name):
    tf = _tf(name, 4)
    A = identity_transformation(tf.F)
    m = extract_1mor(A, tf, tf)
    assert not check_descent_1mor(m)
    B = Modification(A, A, lambda x: tf.ctx.T.unit2(A.at0(x)), name="B")
    assert not check_descent_2mor(extract_2mor(B, m, m, tf, tf))
    assert not check_descent_2mor(extraction_unitor(tf))
    assert not check_descent_2mor(extraction_compositor(m, m, m, tf))


def test_holonomy_of_trivial_data_is_the_identity():
    X, cover = bundled_base("torus3")
    ctx = two_group_context(cover)
    T = ctx.T
    G = T.crossed_module.G
    F = GeneratedFunctor(ctx.groupoid(0), T, {v: "*" for v in X.vertices},
                         {e: G.e for e in X.edges}, {F: T.identity2[G.e] for F in X.faces})
    tf = trivialize(ctx, F, random.Random(0), normalized=True)
    loop = X.path("h00 h10 h20")
    assert loop.src == loop.tgt
    assert holonomy(tf, TransportQuery(loop)) == G.e
    assert holonomy(tf, TransportQuery(ctx.groupoid(0).face("sq11"))) == (G.e, T.crossed_module.H.e)


def _flat_s3():
    S3, one = symmetric_group3(), trivial_group()
    return CrossedModule(S3, one, {"e": S3.e}, {(g, "e"): "e" for g in S3.elements}, name="1->S3")


@given(st.integers(0, 10_000), st.sampled_from(["C6", "C6x3"]))
@settings(max_examples=25)
def test_loop_holonomy_is_conjugate_after_the_round_trip(seed, name):
    # with H trivial, Rec(Ex(F)) and F agree up to conjugation on loops
    X, cover = bundled_base(name)
    tf = _tf(name, seed, cm=_flat_s3())
    G = tf.ctx.T.crossed_module.G
    rng = random.Random(seed)
    ch = SectionChoice.random(cover, rng)
    loop = X.path(" ".join(f"e{k}" for k in range(6)))
    before = holonomy(tf, TransportQuery(loop))
    after = holonomy(extract(tf), TransportQuery(loop), ch)
    assert any(G.conj(c, before) == after for c in G.elements)


def test_query_validation():
    X, _ = bundled_base("C6")
    q = TransportQuery(X.path("e0"), basepoint="v3")
    with pytest.raises(TypingError):
        q.validate(X)


def test_transcripts():
    tf = _tf("C6", 5)
    D = extract(tf)
    cover = D.ctx.cover
    ch = SectionChoice.hub(cover)
    m = rho(D, ch)
    a = D.ctx.points(2)[0]
    lines = transcript(m, a)
    assert [l.split(" : ")[0] for l in lines] == ["r", "f", "l^-1"]
    X = cover.base
    e = eta(tf, ch)
    assert transcript(e, X.path("e0 e1"))
    rec = reconstruct(D, ch)
    Y = cover.space(1)
    edge = next(iter(Y.edges))
    assert transcript(rec, Y.path(((edge, 1),)))
    with pytest.raises(TypeError):
        transcript(object(), None)

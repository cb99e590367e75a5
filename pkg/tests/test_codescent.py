import random

import pytest
from hypothesis import given, strategies as st

from twodescent.base import bundled_base
from twodescent.codescent import (
    Assoc, Codescent, FormalId, Id2, Jump, Section, SectionChoice, Star, Xi, Zeta, ends1,
    generator_kinds, inv, relation_instances, show, src, tgt, typecheck,
)
from twodescent.twocat import ConstructionError, TypingError

CD = {name: Codescent(bundled_base(name)[1]) for name in ("C6", "C6x3", "torus3", "octahedron")}


def test_jump_words_and_typing():
    a, b = Jump((0, 1, "v0")), Jump((1, 0, "v0"))
    assert ends1(Star(b, a)) == ((0, "v0"), (0, "v0"))
    with pytest.raises(TypingError):
        ends1(Star(a, a))
    x = Xi((0, 1, 0, "v0"))
    assert src(x) is Star(b, a) and tgt(x) is Jump((0, 0, "v0"))
    assert src(inv(x)) is tgt(x) and inv(inv(x)) is x
    assert show(x) == "xi<0,1,0,v0>" and show(inv(x)) == "xi<0,1,0,v0>^-1"


def test_terms_are_hash_consed():
    assert Jump((0, 1, "v0")) is Jump((0, 1, "v0"))
    assert Star(FormalId((0, "v0")), Jump((0, 1, "v0"))) is Star(FormalId((0, "v0")), Jump((0, 1, "v0")))


@pytest.mark.parametrize("name", sorted(CD))
def test_relation_instances_are_parallel(name):
    cover = CD[name].cover
    n = {"V1": 0, "V2": 0}
    for label, pt, lhs, rhs in relation_instances(cover):
        n[label] += 1
        assert typecheck(lhs) and typecheck(rhs)
        assert src(lhs) is src(rhs) and tgt(lhs) is tgt(rhs)
    assert n["V1"] == len(cover.space(4).vertices)
    assert n["V2"] == 2 * len(cover.space(2).vertices)


def test_assoc_boundary():
    j = [Jump((0, 1, "v0")), Jump((1, 0, "v0")), Jump((0, 1, "v0"))]
    A = Assoc(*j)
    assert src(A) is Star(Star(j[2], j[1]), j[0]) and tgt(A) is Star(j[2], Star(j[1], j[0]))


def _choices(cover, seed):
    return [SectionChoice.hub(cover), SectionChoice.last(cover),
            SectionChoice.random(cover, random.Random(seed))]


@pytest.mark.parametrize("name", sorted(CD))
def test_lifts_project_back(name):
    cd = CD[name]
    X, cover = cd.cover.base, cd.cover
    for e in X.edges:
        gamma = X.path(((e, 1),))
        for i in cover.containing(gamma.src):
            for j in cover.containing(gamma.tgt):
                L = cd.lift_path(gamma, (i, gamma.src), (j, gamma.tgt))
                assert ends1(L) == ((i, gamma.src), (j, gamma.tgt))
                assert cd.project(L) == gamma


@pytest.mark.parametrize("name", sorted(CD))
def test_canonical_2cells_have_the_right_boundary_and_project_to_identities(name):
    cd = CD[name]
    X, cover = cd.cover.base, cd.cover
    rng = random.Random(name)
    for e in X.edges:
        gamma = X.path(((e, 1),))
        ends = [(i, gamma.src) for i in cover.containing(gamma.src)]
        endt = [(j, gamma.tgt) for j in cover.containing(gamma.tgt)]
        a, b = rng.choice(ends), rng.choice(endt)
        L1 = cd.lift_path(gamma, a, b)
        L2 = cd.standard_lift(Star(Jump((b[0], b[0], b[1])), L1))
        c = cd.canonical_2cell(L1, L2)
        assert src(c) is L1 and tgt(c) is L2
        assert cd.M.is_identity2(cd.project(c))
        assert cd.canonical_2cell(L1, L1) is Id2(L1)


def test_canonical_2cell_rejects_different_paths():
    cd = CD["C6"]
    X = cd.cover.base
    L1 = cd.lift_path(X.path("e0"), (0, "v0"), (0, "v1"))
    L2 = cd.lift_path(X.path("e0 e1 e1^-1"), (0, "v0"), (0, "v1"))
    assert cd.project(L2) == cd.project(L1)
    L3 = cd.lift_path(X.path("e5^-1"), (0, "v0"), (1, "v5"))
    with pytest.raises(TypingError):
        cd.canonical_2cell(L1, L3)


def test_choice_validation():
    cover = CD["C6"].cover
    ch = SectionChoice.hub(cover)
    assert ch.validate(cover)
    v = next(v for v in cover.base.vertices if len(cover.containing(v)) == 1)
    bad = SectionChoice({**ch.chi0, v: 1 - ch.chi0[v]}, ch.chi1, ch.chi2, name="bad")
    with pytest.raises(ConstructionError, match="bad"):
        bad.validate(cover)


@pytest.mark.parametrize("name", sorted(CD))
def test_section_boundaries(name):
    cd = CD[name]
    X = cd.cover.base
    for ch in _choices(cd.cover, name):
        s = Section(cd, ch)
        for e in X.edges:
            p = X.path(((e, 1),))
            L = s.one(p)
            assert ends1(L) == (s.obj(p.src), s.obj(p.tgt))
            c = s.comp(p, p.inverse())
            assert src(c) is Star(s.one(p.inverse()), s.one(p))
            assert cd.M.is_identity2(cd.project(c))
        for F in X.faces:
            b = cd.M.face(F)
            t = s.two(b)
            assert src(t) is s.one(b.src) and tgt(t) is s.one(b.tgt)
            assert ("Bigon", None) in generator_kinds(t)


@given(st.sampled_from(sorted(CD)), st.integers(0, 999))
def test_zeta_components_are_typed(name, seed):
    cd = CD[name]
    rng = random.Random(seed)
    s = Section(cd, SectionChoice.random(cd.cover, rng))
    z = Zeta(s)
    Y = cd.cover.space(1)
    a = rng.choice(list(Y.vertices))
    a = (a[0], a[1])
    assert ends1(z.at0(a)) == (s.obj(a[1]), a)
    assert ends1(z.inv0(a)) == (a, s.obj(a[1]))
    assert src(z.i_at(a)) is Star(z.inv0(a), z.at0(a))
    assert tgt(z.j_at(a)) is Star(z.at0(a), z.inv0(a))
    e = rng.choice(list(Y.edges))
    L = cd.include(Y.path(((e, 1),)))
    c = z.at1(L)
    b0, b1 = ends1(L)
    assert tgt(c) is Star(L, z.at0(b0))
    assert cd.M.is_identity2(cd.project(c))

import itertools
import math

import pytest
from hypothesis import given, strategies as st

from twodescent.instances import (
    CrossedModule, FiniteGroup, all_crossed_modules, anomaly_table, automorphisms, brute_force_algebras,
    crossed_module_monoidal, crossed_module_sweep, cyclic_group, delooping, direct_product,
    graded_monoid_table, homomorphisms, identity_crossed_module, klein_group, matrix_table,
    projection_crossed_module, quotient_crossed_module, symmetric_group3, trivial_2groupoid,
    trivial_group, two_group_from_crossed_module, unit_functor,
)
from twodescent.twocat import ConstructionError, check_two_category, check_two_functor

S3 = symmetric_group3()


def test_group_basics():
    assert len(S3) == 6 and not S3.is_abelian()
    assert klein_group().is_abelian() and len(klein_group()) == 4
    assert len(trivial_group()) == 1
    Z4 = cyclic_group(4)
    assert Z4.inv("1") == "3" and Z4.prod("1", "1", "1") == "3"
    assert S3.closure(S3.generators()) == set(S3.elements)


def test_bad_table_rejected():
    # a·b = a is not a group on two elements
    with pytest.raises(ConstructionError):
        FiniteGroup(["a", "b"], {(x, y): x for x in "ab" for y in "ab"})


def test_homomorphism_counts():
    # |Hom(Zm, Zn)| = gcd(m, n); |Aut(S3)| = 6; |Aut(Z2xZ2)| = 6
    for m, n in ((2, 4), (4, 2), (3, 4), (4, 4)):
        assert len(homomorphisms(cyclic_group(m), cyclic_group(n))) == math.gcd(m, n)
    assert len(automorphisms(S3)) == 6
    assert len(automorphisms(klein_group())) == 6
    assert len(homomorphisms(S3, cyclic_group(2))) == 2


def _naive_crossed_modules(G, H):
    """Every (t, act) pair by exhaustion over all maps, with the identities
    checked inline."""
    Ge, He = G.elements, H.elements
    found = 0
    keys = [(g, h) for g in Ge for h in He]
    for timg in itertools.product(Ge, repeat=len(He)):
        t = dict(zip(He, timg))
        if any(t[H.mul(a, b)] != G.mul(t[a], t[b]) for a in He for b in He):
            continue
        for aimg in itertools.product(He, repeat=len(keys)):
            act = dict(zip(keys, aimg))
            if any(act[(G.e, h)] != h for h in He):
                continue
            if any(act[(G.mul(g1, g2), h)] != act[(g1, act[(g2, h)])]
                   for g1 in Ge for g2 in Ge for h in He):
                continue
            if any(act[(g, H.mul(a, b))] != H.mul(act[(g, a)], act[(g, b)])
                   for g in Ge for a in He for b in He):
                continue
            if any(t[act[(g, h)]] != G.mul(G.mul(g, t[h]), G.inv(g)) for g in Ge for h in He):
                continue
            if any(act[(t[a], b)] != H.mul(H.mul(a, b), H.inv(a)) for a in He for b in He):
                continue
            found += 1
    return found


@pytest.mark.parametrize("G,H", [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2)])
def test_crossed_module_enumeration_matches_exhaustion(G, H):
    G, H = cyclic_group(G), cyclic_group(H)
    assert len(all_crossed_modules(G, H)) == _naive_crossed_modules(G, H)


def test_sweep_contents():
    cms = crossed_module_sweep()
    assert all(not cm.violations() for cm in cms)
    pairs = {(cm.G.name, cm.H.name) for cm in cms}
    # S3 into an abelian G: Peiffer would make all transpositions act alike
    missing = {(g, "S3") for g in ("Z2", "Z4", "Z2xZ2")}
    assert len(pairs) == 13 and not pairs & missing


def test_crossed_module_violations_name_the_identity():
    cm = projection_crossed_module()
    assert not cm.violations()
    k = next(iter(cm.t))
    bad = CrossedModule(cm.G, cm.H, {**cm.t, k: "201"}, cm.act, name="bad")
    kinds = {ident for ident, _ in bad.violations()}
    assert "t homomorphism" in kinds
    with pytest.raises(ConstructionError, match="bad"):
        two_group_from_crossed_module(bad)


def test_two_group_sizes_and_boundaries():
    cm = projection_crossed_module()
    T = two_group_from_crossed_module(cm)
    assert len(T.one_cells) == 6 and len(T.two_cells) == 72
    for (g, h), a in T.encode2.items():
        assert T.two_cells[a] == (g, cm.G.mul(cm.t[h], g))
    assert T.strict and check_two_category(T).ok


@pytest.mark.parametrize("cm", [identity_crossed_module(cyclic_group(3)), quotient_crossed_module(),
                                projection_crossed_module()], ids=lambda c: c.name)
def test_inverse_2cells(cm):
    T = two_group_from_crossed_module(cm)
    for a, (s, t) in T.two_cells.items():
        assert T.vcomp[(T.inverse2[a], a)] == T.identity2[s]


def test_trivial_2groupoid_and_unit_functor():
    Gr = trivial_2groupoid()
    assert check_two_category(Gr).ok
    T = delooping(matrix_table())
    assert check_two_functor(unit_functor(Gr, T)).ok


def test_deloopings():
    for m in (graded_monoid_table(), matrix_table(), anomaly_table()):
        T = delooping(m)
        assert list(T.objects) == ["*"] and set(T.one_cells) == set(m.objects)
        assert T.strict == m.strict


def test_crossed_module_monoidal_round_trips_to_a_strict_delooping():
    cm = quotient_crossed_module()
    m = crossed_module_monoidal(cm)
    T = delooping(m)
    assert len(T.two_cells) == len(cm.G) * len(cm.H)


def test_brute_force_algebras_known_answers():
    # End(0) in gradedZ4 is Z/4 under multiplication: the invertible μ with
    # μ·η = 1 are μ = η ∈ {1, 3}.  In matF2 only the 1×1 identity works.
    assert brute_force_algebras(graded_monoid_table()) == {("0", "1@0", "1@0"), ("0", "3@0", "3@0")}
    assert brute_force_algebras(matrix_table()) == {("1", "m1", "m1")}


@given(st.sampled_from(S3.elements), st.sampled_from(S3.elements), st.sampled_from(S3.elements))
def test_product_group_is_componentwise(a, b, c):
    P = direct_product(S3, cyclic_group(2))
    x, y = f"{a}.1", f"{b}.1"
    assert P.mul(x, y) == f"{S3.mul(a, b)}.0"
    assert S3.mul(S3.mul(a, b), c) == S3.mul(a, S3.mul(b, c))

import random

import pytest

from twodescent.base import CoverSpec, close_cells
from twodescent.descent import (
    DescentObject, DescentTwoMor, Refinement, LimitObject, LimitOneMor, check_descent_1mor,
    check_descent_2mor, check_descent_object, compose_descent, descent_associator,
    descent_unifiers, fibre_product, forget_V, identity_descent, is_normalized, limit_compose,
    restrict,
)
from twodescent.twocat import ConstructionError, Modification

from conftest import workspace

MULTI = ["C6", "C6x3", "grid2", "torus3", "octahedron"]


def cocycle(name, kind="cocycle"):
    return workspace(name).get(f"{name}-{kind}", "descent")


def _mutate(D, table, rng):
    """Replace one component by a different 2-cell with the same boundary."""
    T = D.ctx.T
    tabs = D.tables()
    keys = list(tabs[table])
    rng.shuffle(keys)
    for k in keys:
        a = tabs[table][k]
        alt = [b for b in T.hom2(T.src2(a), T.tgt2(a)) if b != a]
        if alt:
            tabs[table] = {**tabs[table], k: rng.choice(alt)}
            return DescentObject.from_tables(D.ctx, tabs, name="mutant"), k
    raise AssertionError("no alternative 2-cell")


@pytest.mark.parametrize("name", MULTI + ["point"])
def test_bundled_objects_pass(name):
    for kind in ("cocycle", "normalized"):
        assert not check_descent_object(cocycle(name, kind))


@pytest.mark.parametrize("name", MULTI)
def test_mutated_f_is_caught_by_the_cocycle_condition(name):
    D = cocycle(name)
    rng = random.Random(name)
    for _ in range(5):
        M, key = _mutate(D, "f", rng)
        kinds = {v.kind for v in check_descent_object(M)}
        assert "(3)" in kinds or "(2)" in kinds, key


@pytest.mark.parametrize("name", MULTI)
def test_mutated_psi_is_caught(name):
    D = cocycle(name)
    M, _ = _mutate(D, "psi", random.Random(name))
    kinds = {v.kind for v in check_descent_object(M)}
    assert kinds & {"(2)", "psi:M"}


def test_normalization_flags():
    for name in MULTI + ["point"]:
        assert is_normalized(cocycle(name, "normalized"))
    assert not all(is_normalized(cocycle(name)) for name in MULTI)


@pytest.mark.parametrize("name", ["C6", "torus3", "octahedron"])
def test_identity_and_composition(name):
    D = cocycle(name)
    i = identity_descent(D)
    assert not check_descent_1mor(i)
    ii = compose_descent(i, i)
    assert not check_descent_1mor(ii)
    T = D.ctx.T
    for a in D.ctx.points(1):
        assert T.eq1(ii.h.at0(a), i.h.at0(a))


@pytest.mark.parametrize("name", ["C6", "torus3"])
def test_associator_and_unifiers_are_2morphisms(name):
    D = cocycle(name)
    i = identity_descent(D)
    a = descent_associator(i, i, i)
    assert not check_descent_2mor(a)
    for u in descent_unifiers(i):
        assert not check_descent_2mor(u)


def test_wrong_2morphism_is_caught():
    D = cocycle("C6")
    T = D.ctx.T
    i = identity_descent(D)
    # a central 2-cell on one patch only cannot commute with eps
    def E(a):
        one = i.h.at0(a)
        if a[0] == 0:
            return next(b for b in T.hom2(one, one) if not T.is_identity2(b))
        return T.unit2(one)
    rep = check_descent_2mor(DescentTwoMor(i, i, Modification(None, None, E)))
    assert "(6)" in rep.kinds()


def test_broken_1morphism_is_caught():
    D = cocycle("octahedron")
    i = identity_descent(D)
    T = D.ctx.T

    def eps(a):
        c = i.eps.at(a)
        if a[0] != a[1]:
            return c
        return next(b for b in T.hom2(T.src2(c), T.tgt2(c)) if b != c)
    bad = type(i)(D, D, i.h, Modification(None, None, eps))
    kinds = set(check_descent_1mor(bad).kinds())
    assert kinds & {"(4)", "(5)"}


# ---------------------------------------------------------------------------
# refinements

def _refinement_setup():
    ws = workspace("C6-refinement")
    whole, three = ws.get("C6-whole", "cover"), ws.get("C6-three", "cover")
    X = whole.base
    six = CoverSpec(X, [close_cells(X, [f"e{k}"]) for k in range(6)], name="C6-six")
    to_three = Refinement(six, three, [0, 0, 1, 1, 2, 2], name="six->three")
    collapse = ws.get("collapse", "refinement")
    direct = Refinement(six, whole, [0] * 6, name="six->whole")
    return ws.get("whole-cocycle", "descent"), six, to_three, collapse, direct


def test_refinement_validation():
    D, six, to_three, collapse, _ = _refinement_setup()
    with pytest.raises(ConstructionError):
        Refinement(six, collapse.source, [1, 0, 1, 1, 2, 2])
    ident = Refinement.identity(six)
    assert ident.patch_map == tuple(range(6))


def test_restriction_is_a_descent_object_and_functorial():
    D, six, to_three, collapse, direct = _refinement_setup()
    R3 = restrict(collapse, D)
    assert not check_descent_object(R3)
    two_steps = restrict(to_three, R3)
    one_step = restrict(direct, D)
    composite = restrict(to_three.then(collapse), D)
    assert not check_descent_object(one_step)
    assert two_steps.tables() == one_step.tables() == composite.tables()
    ident = restrict(Refinement.identity(collapse.source), R3)
    assert ident.tables() == R3.tables()


def test_forget_commutes_with_restriction():
    D, six, to_three, collapse, direct = _refinement_setup()
    R = restrict(direct, D)
    f = direct.cellmap(1)
    VR, VD = forget_V(R), forget_V(D)
    Y = six.space(1)
    for v in Y.vertices:
        assert VR.obj(v) == VD.obj(f.cell(v))
    for e in Y.edges:
        p = Y.path(((e, 1),))
        assert VR.one(p) == VD.one(f.path(p))


def test_restriction_of_morphisms():
    D, six, to_three, collapse, direct = _refinement_setup()
    i = identity_descent(D)
    ri = restrict(direct, i)
    assert not check_descent_1mor(ri)
    E = descent_unifiers(i)[0]
    assert not check_descent_2mor(restrict(direct, E))


def test_fibre_product_cover():
    D, six, to_three, collapse, direct = _refinement_setup()
    three = collapse.source
    Z, p1, p2 = fibre_product(six, three, lambda a, b: to_three.patch_map[a] == b)
    assert len(Z.patches) == 6
    for k, U in enumerate(Z.patches):
        assert U <= six.patches[p1.patch_map[k]] and U <= three.patches[p2.patch_map[k]]


def test_limit_composition_of_identities():
    D, six, to_three, collapse, direct = _refinement_setup()
    whole = collapse.target
    obj = LimitObject(whole, D)
    ident = Refinement.identity(whole)
    m = LimitOneMor(obj, obj, whole, ident, ident, identity_descent(D))
    assert not m.check()
    mm = limit_compose(m, m)
    assert not mm.check()
    assert mm.y1.target is whole and mm.y2.target is whole

"""Descent objects, 1-morphisms and 2-morphisms for a cover, their checkers,
composition, refinement and the direct limit over refinements.

Pointwise diagrams are checked in the following typed forms (T-cells; a
is the associator (h∘g)∘f ⇒ h∘(g∘f), l_f: f∘id ⇒ f, r_f: id∘f ⇒ f):

  (2)  f(i,j,j)•(ψ(j)∘id_g) = r_g   and   f(i,i,j)•(id_g∘ψ(i)) = l_g
  (3)  f134•(id∘f123)•a = f124•(f234∘id)
  (4)  ε(a,a)•(id_h∘ψ(a)) = (ψ′(a)∘id_h)•r_h⁻¹•l_h
  (5)  ε13•(id_h3∘f) = (f′∘id_h1)•a⁻¹•(id∘ε12)•a•(ε23∘id)•a⁻¹
  (6)  (id_g′∘E(π1α))•ε1(α) = ε2(α)•(E(π2α)∘id_g)
"""
from dataclasses import dataclass

from .base import PathGroupoid, CellMap, CoverSpec, Path, induced_functor
from .twocat import (
    Report, TypingError, ConstructionError, CapabilityError, TwoFunctor, PseudoNat,
    Modification, ModificationData, check_pseudonatural, check_modification,
    compose_transformations, identity_transformation, pull_back, precompose,
    _vchain, _h, _inv, fmt,
)


# ---------------------------------------------------------------------------
# functors and transformations generated from tables

class GeneratedFunctor(TwoFunctor):
    """The strict 2-functor out of a free path 2-groupoid determined by its
    values on vertices, edges and faces.  Inverse letters go to the stored
    strict inverses of T."""

    def __init__(self, S, T, obj, edge, face, name="F"):
        self.obj_table, self.edge_table, self.face_table = dict(obj), dict(edge), dict(face)
        if S.X.edges and not getattr(T, "strict", False):
            raise CapabilityError("functors generated on edges need a strict target")
        self._one_cache, self._two_cache = {}, {}
        super().__init__(S, T, self.obj_table.__getitem__, self._one_impl, self._two_impl, name=name)

    def letter(self, l):
        e, s = l
        x = self.edge_table[e]
        return x if s == 1 else self.target.inv1(x)

    def word(self, w, start):
        T = self.target
        out = T.unit1(self.obj_table[start])
        for l in w:
            out = T.comp(self.letter(l), out)
        return out

    def _one_impl(self, p):
        r = self._one_cache.get(p)
        if r is None:
            r = self.word(p.word, p.src)
            self._one_cache[p] = r
        return r

    def _two_impl(self, b):
        r = self._two_cache.get(b)
        if r is None:
            r = self._steps(b)
            self._two_cache[b] = r
        return r

    def _steps(self, b):
        T, X = self.target, self.source.X
        out = T.unit2(self._one_impl(b.src))
        for st in b.steps:
            x, y = X.face_ends(st.face)
            pre = st.prefix
            xs = X.word_ends(pre)[0] if pre else x
            cell = self.face_table[st.face]
            if st.sign == -1:
                cell = T.inv2(cell)
            P = self.word(pre, xs)
            S = self.word(st.suffix, y)
            step = T.horiz(T.unit2(S), T.horiz(cell, T.unit2(P)))
            out = T.vert(step, out)
        return out


class GeneratedTransformation(PseudoNat):
    """A transformation between strict functors with strict inverses, given
    on vertices and edges and extended to words by pasting."""

    def __init__(self, F1, F2, at0, at1, name="rho"):
        self.comp0, self.comp1 = dict(at0), dict(at1)
        self._cache = {}
        super().__init__(F1, F2, self.comp0.__getitem__, self._at1_impl, name)

    def letter(self, l):
        T = self.source.target
        e, s = l
        cell = self.comp1[e]
        if s == 1:
            return cell
        F1, F2 = self.source, self.target
        S = F1.source
        p = S.X.path(((e, 1),))
        return T.horiz(T.unit2(T.inv1(F2.one(p))),
                       T.horiz(T.inv2(cell), T.unit2(T.inv1(F1.one(p)))))

    def _at1_impl(self, p):
        r = self._cache.get(p)
        if r is not None:
            return r
        T = self.source.target
        F1, F2 = self.source, self.target
        X = F1.source.X
        if not p.word:
            r0 = self.comp0[p.src]
            r = T.vert(T.inv2(T.runit(r0)), T.lunit(r0))
            self._cache[p] = r
            return r
        r = T.unit2(self.comp0[p.src])
        cur = p.src
        f1 = T.unit1(F1.obj(p.src))
        for l in p.word:
            nxt = X.letter_ends(l)[1]
            c = self.letter(l)
            # paste: (id_{F2 l}∘r)•(c∘id_{F1 prefix})
            r = T.vert(T.horiz(T.unit2(F2.one(Path(cur, nxt, (l,)))), r),
                       T.horiz(c, T.unit2(f1)))
            f1 = T.comp(F1.one(Path(cur, nxt, (l,))), f1)
            cur = nxt
        self._cache[p] = r
        return r


def compose_functors(G, F):
    """G∘F for general 2-functors (compositors and unitors combined)."""
    T = G.target

    def comp(f, g):
        return T.vert(G.two(F.comp(f, g)), G.comp(F.one(f), F.one(g)))

    def unit(x):
        return T.vert(G.unit(F.obj(x)), G.two(F.unit(x)))
    return TwoFunctor(F.source, T, lambda x: G.obj(F.obj(x)), lambda f: G.one(F.one(f)),
                      lambda a: G.two(F.two(a)), comp, unit, name=f"{G.name}∘{F.name}")


# ---------------------------------------------------------------------------
# the setting

class DescentContext:
    """A cover together with Gr, T and i: Gr → T."""

    def __init__(self, cover, Gr, T, i, window=1):
        self.cover, self.Gr, self.T, self.i = cover, Gr, T, i
        self.window = window
        self._grp, self._maps = {}, {}

    def groupoid(self, k):
        g = self._grp.get(k)
        if g is None:
            g = PathGroupoid(self.cover.space(k), max_word=self.window) if k else PathGroupoid(self.cover.base)
            self._grp[k] = g
        return g

    def map(self, k, positions):
        """Induced functor of (i_1..i_k, c) ↦ (i_{p_1}.., c) on path groupoids."""
        key = (k, tuple(positions))
        G = self._maps.get(key)
        if G is None:
            m = CellMap(self.cover.space(k), self.cover.space(len(positions)), positions)
            G = induced_functor(m, self.groupoid(k), self.groupoid(len(positions)))
            self._maps[key] = G
        return G

    def to_base(self, k):
        """Induced functor of Y^[k] → M."""
        key = (k, None)
        G = self._maps.get(key)
        if G is None:
            m = CellMap(self.cover.space(k), self.cover.base, None)
            G = induced_functor(m, self.groupoid(k), self.groupoid(0))
            self._maps[key] = G
        return G

    def points(self, k):
        return self.cover.space(k).vertices

    def triv_functor(self, obj, edge, face, name="triv"):
        return GeneratedFunctor(self.groupoid(1), self.Gr, obj, edge, face, name=name)


# ---------------------------------------------------------------------------
# objects, 1-morphisms, 2-morphisms

class DescentObject:
    """(triv, g, ψ, f).  triv: P2(Y) → Gr; g: π1*triv_i → π2*triv_i over
    Y^[2]; ψ: id ⇒ Δ*g over Y; f: π23*g∘π12*g ⇒ π13*g over Y^[3]."""

    def __init__(self, ctx, triv, g, psi, f, name="D"):
        self.ctx, self.triv, self.g, self.psi, self.f = ctx, triv, g, psi, f
        self.name = name
        self.triv_i = compose_functors(ctx.i, triv)
        self._pb = {}

    def pulled_triv(self, k, pos):
        return precompose(self.triv_i, self.ctx.map(k, pos))

    def pulled_g(self, k, pos):
        key = (k, pos)
        r = self._pb.get(key)
        if r is None:
            r = pull_back(self.g, self.ctx.map(k, pos))
            self._pb[key] = r
        return r

    def tables(self):
        """Component tables on generators (used for equality, printing)."""
        ctx = self.ctx
        Y1, Y2, Y3 = (ctx.cover.space(k) for k in (1, 2, 3))
        P1 = ctx.groupoid(1)
        return {
            "triv0": {v: self.triv.obj(v) for v in Y1.vertices},
            "triv1": {e: self.triv.one(Y1.path(((e, 1),))) for e in Y1.edges},
            "triv2": {F: self.triv.two(P1.face(F)) for F in Y1.faces},
            "g0": {a: self.g.at0(a) for a in Y2.vertices},
            "g1": {e: self.g.at1(Y2.path(((e, 1),))) for e in Y2.edges},
            "psi": {a: self.psi.at(a) for a in Y1.vertices},
            "f": {a: self.f.at(a) for a in Y3.vertices},
        }

    @classmethod
    def from_tables(cls, ctx, t, name="D"):
        triv = ctx.triv_functor(t["triv0"], t["triv1"], t["triv2"])
        triv_i = compose_functors(ctx.i, triv)
        F1 = precompose(triv_i, ctx.map(2, (0,)))
        F2 = precompose(triv_i, ctx.map(2, (1,)))
        g = GeneratedTransformation(F1, F2, t["g0"], t["g1"], name="g")
        psi = ModificationData(None, None, t["psi"], name="psi")
        f = ModificationData(None, None, t["f"], name="f")
        return cls(ctx, triv, g, psi, f, name=name)


@dataclass
class DescentOneMor:
    source: DescentObject
    target: DescentObject
    h: object        # transformation triv_i → triv′_i over Y
    eps: object      # modification π2*h∘g ⇒ g′∘π1*h over Y^[2]
    name: str = "m"

    def tables(self):
        ctx = self.source.ctx
        Y1, Y2 = ctx.cover.space(1), ctx.cover.space(2)
        return {"h0": {a: self.h.at0(a) for a in Y1.vertices},
                "h1": {e: self.h.at1(Y1.path(((e, 1),))) for e in Y1.edges},
                "eps": {a: self.eps.at(a) for a in Y2.vertices}}


@dataclass
class DescentTwoMor:
    source: DescentOneMor
    target: DescentOneMor
    E: object        # modification h1 ⇒ h2
    name: str = "E"

    def tables(self):
        Y1 = self.source.source.ctx.cover.space(1)
        return {"E": {a: self.E.at(a) for a in Y1.vertices}}


def _pt(prefix, x):
    return f"{prefix}={fmt(tuple(x))}"


def _prefixed(rep, prefix):
    out = Report()
    for v in rep:
        out.add(f"{prefix}:{v.kind}", v.at, v.lhs, v.rhs)
    return out


def check_descent_object(D):
    ctx, T = D.ctx, D.ctx.T
    rep = Report()
    g = D.g
    g_typed = PseudoNat(D.pulled_triv(2, (0,)), D.pulled_triv(2, (1,)), g.at0, g.at1, name="g")
    rep.extend(_prefixed(check_pseudonatural(g_typed), "g"))
    psi_src = identity_transformation(D.triv_i)
    psi_tgt = D.pulled_g(1, (0, 0))
    rep.extend(_prefixed(check_modification(D.psi, psi_src, psi_tgt), "psi"))
    f_src = compose_transformations(D.pulled_g(3, (0, 1)), D.pulled_g(3, (1, 2)))
    f_tgt = D.pulled_g(3, (0, 2))
    rep.extend(_prefixed(check_modification(D.f, f_src, f_tgt), "f"))
    for a in ctx.points(1):
        if T.inv2(D.psi.at(a)) is None:
            rep.add("psi:invertible", _pt("a", a), D.psi.at(a))
    for x in ctx.points(3):
        if T.inv2(D.f.at(x)) is None:
            rep.add("f:invertible", _pt("Ξ", x), D.f.at(x))
    for (i, j, v) in ctx.points(2):
        gij = g.at0((i, j, v))
        lhs = _vchain(T, D.f.at((i, j, j, v)), _h(T, D.psi.at((j, v)), T.unit2(gij)))
        rep.expect("(2)", _pt("α", (i, j, v)) + ":left", lhs, T.runit(gij), T.eq2)
        lhs = _vchain(T, D.f.at((i, i, j, v)), _h(T, T.unit2(gij), D.psi.at((i, v))))
        rep.expect("(2)", _pt("α", (i, j, v)) + ":right", lhs, T.lunit(gij), T.eq2)
    for (i, j, k, l, v) in ctx.points(4):
        g12, g23, g34 = g.at0((i, j, v)), g.at0((j, k, v)), g.at0((k, l, v))
        lhs = _vchain(T, D.f.at((i, k, l, v)), _h(T, T.unit2(g34), D.f.at((i, j, k, v))),
                      T.assoc(g12, g23, g34))
        rhs = _vchain(T, D.f.at((i, j, l, v)), _h(T, D.f.at((j, k, l, v)), T.unit2(g12)))
        rep.expect("(3)", _pt("Ψ", (i, j, k, l, v)), lhs, rhs, T.eq2)
    return rep


def is_normalized(D):
    """Δ*g = id, g∘Δ21*g = id, ψ = id and Δ121*f = id."""
    ctx, T = D.ctx, D.ctx.T
    idt = identity_transformation(D.triv_i)
    diag = pull_back(D.g, ctx.map(1, (0, 0)))
    for a in ctx.points(1):
        if not T.eq1(diag.at0(a), idt.at0(a)) or not T.eq2(D.psi.at(a), T.unit2(idt.at0(a))):
            return False
    for p in ctx.groupoid(1).cells1():
        if p.word and not T.eq2(diag.at1(p), idt.at1(p)):
            return False
    loop = compose_transformations(pull_back(D.g, ctx.map(2, (1, 0))), D.g)
    back = identity_transformation(D.pulled_triv(2, (1,)))
    for a in ctx.points(2):
        if not T.eq1(loop.at0(a), back.at0(a)):
            return False
    for p in ctx.groupoid(2).cells1():
        if p.word and not T.eq2(loop.at1(p), back.at1(p)):
            return False
    for (i, j, k, v) in ctx.points(3):
        if i == k and not T.is_identity2(D.f.at((i, j, k, v))):
            return False
    return True


def check_descent_1mor(m, D=None, D2=None):
    D = m.source if D is None else D
    D2 = m.target if D2 is None else D2
    ctx, T = D.ctx, D.ctx.T
    rep = Report()
    h = PseudoNat(D.triv_i, D2.triv_i, m.h.at0, m.h.at1, name="h")
    rep.extend(_prefixed(check_pseudonatural(h), "h"))
    G = ctx.map(2, (0,)), ctx.map(2, (1,))
    eps_src = compose_transformations(D.g, pull_back(h, G[1]))
    eps_tgt = compose_transformations(pull_back(h, G[0]), D2.g)
    rep.extend(_prefixed(check_modification(m.eps, eps_src, eps_tgt), "eps"))
    for a in ctx.points(2):
        if T.inv2(m.eps.at(a)) is None:
            rep.add("eps:invertible", _pt("α", a), m.eps.at(a))
    g, g2, f, f2, eps, hh = D.g.at0, D2.g.at0, D.f.at, D2.f.at, m.eps.at, m.h.at0
    for (i, j, k, v) in ctx.points(3):
        h1, h3 = hh((i, v)), hh((k, v))
        h2 = hh((j, v))
        g12, g23 = g((i, j, v)), g((j, k, v))
        q12, q23 = g2((i, j, v)), g2((j, k, v))
        lhs = _vchain(T, eps((i, k, v)), _h(T, T.unit2(h3), f((i, j, k, v))))
        rhs = _vchain(T, _h(T, f2((i, j, k, v)), T.unit2(h1)),
                      _inv(T, T.assoc(h1, q12, q23)),
                      _h(T, T.unit2(q23), eps((i, j, v))),
                      T.assoc(g12, h2, q23),
                      _h(T, eps((j, k, v)), T.unit2(g12)),
                      _inv(T, T.assoc(g12, g23, h3)))
        rep.expect("(5)", _pt("Ξ", (i, j, k, v)), lhs, rhs, T.eq2)
    for (i, v) in ctx.points(1):
        ha = hh((i, v))
        lhs = _vchain(T, eps((i, i, v)), _h(T, T.unit2(ha), D.psi.at((i, v))))
        rhs = _vchain(T, _h(T, D2.psi.at((i, v)), T.unit2(ha)), _inv(T, T.runit(ha)), T.lunit(ha))
        rep.expect("(4)", _pt("a", (i, v)), lhs, rhs, T.eq2)
    return rep


def check_descent_2mor(E, m1=None, m2=None):
    m1 = E.source if m1 is None else m1
    m2 = E.target if m2 is None else m2
    D, D2 = m1.source, m1.target
    ctx, T = D.ctx, D.ctx.T
    rep = Report()
    h1 = PseudoNat(D.triv_i, D2.triv_i, m1.h.at0, m1.h.at1, name="h1")
    h2 = PseudoNat(D.triv_i, D2.triv_i, m2.h.at0, m2.h.at1, name="h2")
    rep.extend(_prefixed(check_modification(E.E, h1, h2), "E"))
    for (i, j, v) in ctx.points(2):
        a, b = (i, v), (j, v)
        lhs = _vchain(T, _h(T, T.unit2(D2.g.at0((i, j, v))), E.E.at(a)), m1.eps.at((i, j, v)))
        rhs = _vchain(T, m2.eps.at((i, j, v)), _h(T, E.E.at(b), T.unit2(D.g.at0((i, j, v)))))
        rep.expect("(6)", _pt("α", (i, j, v)), lhs, rhs, T.eq2)
    return rep


# ---------------------------------------------------------------------------
# the 2-category structure

def identity_descent(D):
    T = D.ctx.T
    h = identity_transformation(D.triv_i)
    eps = Modification(None, None,
                       lambda a: T.vert(_inv(T, T.lunit(D.g.at0(a))), T.runit(D.g.at0(a))),
                       name="eps_id")
    return DescentOneMor(D, D, h, eps, name=f"id_{D.name}")


def compose_descent(m1, m2):
    """m2∘m1: h = h2∘h1, ε = a•(ε2∘id)•a⁻¹•(id∘ε1)•a."""
    if m1.target is not m2.source and m1.target.tables() != m2.source.tables():
        raise TypingError("descent 1-morphisms are not composable")
    D, D2, D3 = m1.source, m1.target, m2.target
    T = D.ctx.T
    h = compose_transformations(m1.h, m2.h)

    def eps(alpha):
        i, j, v = alpha
        a, b = (i, v), (j, v)
        g, g3 = D.g.at0(alpha), D3.g.at0(alpha)
        g2 = D2.g.at0(alpha)
        h1a, h1b, h2a, h2b = m1.h.at0(a), m1.h.at0(b), m2.h.at0(a), m2.h.at0(b)
        return _vchain(T, T.assoc(h1a, h2a, g3),
                       _h(T, m2.eps.at(alpha), T.unit2(h1a)),
                       _inv(T, T.assoc(h1a, g2, h2b)),
                       _h(T, T.unit2(h2b), m1.eps.at(alpha)),
                       T.assoc(g, h1b, h2b))
    return DescentOneMor(D, D3, h, Modification(None, None, eps, name="eps"),
                         name=f"{m2.name}∘{m1.name}")


def descent_associator(m1, m2, m3):
    """(m3∘m2)∘m1 ⇒ m3∘(m2∘m1) componentwise from T's associator."""
    T = m1.source.ctx.T
    E = Modification(None, None, lambda a: T.assoc(m1.h.at0(a), m2.h.at0(a), m3.h.at0(a)))
    return DescentTwoMor(compose_descent(m1, compose_descent(m2, m3)),
                         compose_descent(compose_descent(m1, m2), m3), E, name="a")


def descent_unifiers(m):
    T = m.source.ctx.T
    l = Modification(None, None, lambda a: T.lunit(m.h.at0(a)))
    r = Modification(None, None, lambda a: T.runit(m.h.at0(a)))
    return (DescentTwoMor(compose_descent(identity_descent(m.source), m), m, l, name="l"),
            DescentTwoMor(compose_descent(m, identity_descent(m.target)), m, r, name="r"))


def forget_V(x):
    """V: the functor triv_i of an object, the transformation h of a
    1-morphism, the modification E of a 2-morphism."""
    if isinstance(x, DescentObject):
        return x.triv_i
    if isinstance(x, DescentOneMor):
        return x.h
    return x.E


# ---------------------------------------------------------------------------
# refinements

class Refinement:
    """Patch map φ with U_i ⊆ V_φ(i): Y1 → Y2 over the base."""

    def __init__(self, source, target, patch_map, name="xi"):
        self.source, self.target = source, target
        self.patch_map = tuple(patch_map)
        self.name = name
        if source.base is not target.base:
            raise ConstructionError("refinement between covers of different bases")
        if len(self.patch_map) != len(source.patches):
            raise ConstructionError("refinement needs one target patch per source patch")
        for i, U in enumerate(source.patches):
            j = self.patch_map[i]
            if not 0 <= j < len(target.patches) or not U <= target.patches[j]:
                raise ConstructionError(f"{name}: patch {i} is not contained in patch {j}")

    def cellmap(self, k):
        return CellMap(self.source.space(k), self.target.space(k), tuple(range(k)),
                       patch_map=self.patch_map, name=f"{self.name}^[{k}]")

    def then(self, other):
        """other ∘ self."""
        if self.target is not other.source:
            raise TypingError("refinements do not compose")
        return Refinement(self.source, other.target,
                          [other.patch_map[j] for j in self.patch_map], name=f"{other.name}∘{self.name}")

    @classmethod
    def identity(cls, cover):
        return cls(cover, cover, range(len(cover.patches)), name="id")


def _functor_along(xi, ctx_src, ctx_tgt, k):
    return induced_functor(xi.cellmap(k), ctx_src.groupoid(k), ctx_tgt.groupoid(k))


def restrict(xi, x, ctx=None):
    """res_ξ on descent objects, 1-morphisms and 2-morphisms."""
    if isinstance(x, DescentObject):
        c2 = x.ctx
        c1 = ctx or DescentContext(xi.source, c2.Gr, c2.T, c2.i, window=c2.window)
        G1, G2, G3 = (_functor_along(xi, c1, c2, k) for k in (1, 2, 3))
        triv = precompose(x.triv, G1)
        return DescentObject(c1, triv, pull_back(x.g, G2), pull_back(x.psi, G1),
                             pull_back(x.f, G3), name=f"res({x.name})")
    if isinstance(x, DescentOneMor):
        S = restrict(xi, x.source, ctx)
        Tt = restrict(xi, x.target, S.ctx) if x.target is not x.source else S
        c2 = x.source.ctx
        G1, G2 = (_functor_along(xi, S.ctx, c2, k) for k in (1, 2))
        return DescentOneMor(S, Tt, pull_back(x.h, G1), pull_back(x.eps, G2), name=f"res({x.name})")
    if isinstance(x, DescentTwoMor):
        m1 = restrict(xi, x.source, ctx)
        m2 = restrict(xi, x.target, m1.source.ctx)
        G1 = _functor_along(xi, m1.source.ctx, x.source.source.ctx, 1)
        return DescentTwoMor(m1, m2, pull_back(x.E, G1), name=f"res({x.name})")
    raise TypeError("restrict takes descent objects, 1-morphisms or 2-morphisms")


# ---------------------------------------------------------------------------
# the direct limit over refinements

@dataclass
class LimitObject:
    cover: CoverSpec
    D: DescentObject


@dataclass
class LimitOneMor:
    source: LimitObject
    target: LimitObject
    Z: CoverSpec
    y1: Refinement
    y2: Refinement
    m: DescentOneMor

    def check(self):
        if self.y1.target is not self.source.cover or self.y2.target is not self.target.cover:
            raise TypingError("legs do not end at the covers of source and target")
        return check_descent_1mor(self.m)


@dataclass
class LimitTwoMor:
    source: LimitOneMor
    target: LimitOneMor
    W: CoverSpec
    w1: Refinement
    w2: Refinement
    E: DescentTwoMor


def fibre_product(A, B, pairs_ok, name="Z"):
    """Cover of the common base with patches U_a ∩ U_b for the pairs allowed
    by pairs_ok; returns the cover and the two projection patch maps."""
    patches, pa, pb = [], [], []
    for a, U in enumerate(A.patches):
        for b, V in enumerate(B.patches):
            if pairs_ok(a, b) and U & V:
                patches.append(U & V)
                pa.append(a)
                pb.append(b)
    cov = CoverSpec(A.base, patches, name=name)
    return cov, Refinement(cov, A, pa, name="pr1"), Refinement(cov, B, pb, name="pr2")


def limit_compose(m12, m23):
    if m12.target is not m23.source:
        raise TypingError("limit 1-morphisms are not composable")
    Z12, Z23 = m12.Z, m23.Z
    Z13, p1, p2 = fibre_product(Z12, Z23, lambda a, b: m12.y2.patch_map[a] == m23.y1.patch_map[b],
                                name=f"{Z12.name}x{Z23.name}")
    ctx = DescentContext(Z13, m12.m.source.ctx.Gr, m12.m.source.ctx.T, m12.m.source.ctx.i,
                         window=m12.m.source.ctx.window)
    r12 = restrict(p1, m12.m, ctx)
    r23 = restrict(p2, m23.m, ctx)
    if r12.target.tables() != r23.source.tables():
        raise TypingError("restricted middle descent objects disagree")
    r23.source = r12.target
    m = compose_descent(r12, r23)
    return LimitOneMor(m12.source, m23.target, Z13, p1.then(m12.y1), p2.then(m23.y2), m)


def limit_eq(t1, t2):
    """Compare two representatives by pulling both back to
    W1 ×_{Z×_M Z'} W2."""
    W, p1, p2 = fibre_product(
        t1.W, t2.W,
        lambda a, b: (t1.w1.patch_map[a] == t2.w1.patch_map[b]
                      and t1.w2.patch_map[a] == t2.w2.patch_map[b]),
        name="W12")
    T = t1.E.source.source.ctx.T
    for (k, v) in W.space(1).vertices:
        a, b = p1.patch_map[k], p2.patch_map[k]
        if not T.eq2(t1.E.E.at((a, v)), t2.E.E.at((b, v))):
            return False
    return True

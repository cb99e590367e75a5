"""Trivialized functors, extraction, the pairing R, reconstruction and the
equivalence witnesses between the global and local sides."""
from dataclasses import dataclass
import functools
import random

from .base import Path, PathGroupoid, bundled_base
from .codescent import (
    Codescent, Section, SectionChoice, Zeta, CPath, Jump, FormalId, Star, Xi, DeltaA, Assoc,
    LUnif, RUnif, Id2, HComp, VComp, ends1, src, tgt, show, inv,
)
from .descent import (
    DescentContext, DescentObject, DescentOneMor, DescentTwoMor, GeneratedFunctor,
    GeneratedTransformation, compose_functors, check_descent_object,
)
from .instances import projection_crossed_module, two_group_from_crossed_module
from .twocat import (
    Report, TypingError, ConstructionError, CapabilityError, TwoFunctor, PseudoNat, Modification,
    EquivalenceBundle, check_two_functor, check_pseudonatural, check_modification,
    weak_inverse_report, compose_transformations, identity_transformation, identity_functor,
    pull_back, precompose, _vchain, _h, _inv, fmt,
)


def _require_strict(T, what):
    if not getattr(T, "strict", False):
        raise CapabilityError(f"{what} is implemented for strict targets only")


def _whisker(T, left, cell, right):
    """id_left ∘ cell ∘ id_right in a strict target (None means no whisker)."""
    out = cell
    if right is not None:
        out = T.horiz(out, T.unit2(right))
    if left is not None:
        out = T.horiz(T.unit2(left), out)
    return out


def _memo_nat(rho):
    c0, c1 = {}, {}

    def at0(x):
        if x not in c0:
            c0[x] = rho.at0(x)
        return c0[x]

    def at1(p):
        if p not in c1:
            c1[p] = rho.at1(p)
        return c1[p]
    return PseudoNat(rho.source, rho.target, at0, at1, name=rho.name)


# ---------------------------------------------------------------------------
# trivialized functors

@dataclass
class TrivializedFunctor:
    """F: P2(M) → T with triv: P2(Y) → Gr and t: π*F → triv_i."""
    ctx: DescentContext
    F: object
    triv: object
    t_bundle: EquivalenceBundle
    name: str = "TF"

    @property
    def pulled_F(self):
        return precompose(self.F, self.ctx.to_base(1))

    @property
    def triv_i(self):
        return compose_functors(self.ctx.i, self.triv)


def check_trivialized(tf):
    rep = Report()
    for v in check_two_functor(tf.F, tf.ctx.groupoid(0)):
        rep.add(f"F:{v.kind}", v.at, v.lhs, v.rhs)
    b = tf.t_bundle
    piF, triv_i = tf.pulled_F, tf.triv_i
    for label, rep2 in (
        ("t", check_pseudonatural(b.forward, piF, triv_i)),
        ("tbar", check_pseudonatural(b.inverse, triv_i, piF)),
        ("i_t", check_modification(b.i_t, compose_transformations(b.forward, b.inverse),
                                   identity_transformation(piF))),
        ("j_t", check_modification(b.j_t, identity_transformation(triv_i),
                                   compose_transformations(b.inverse, b.forward))),
        ("zigzag", weak_inverse_report(None, b)),
    ):
        for v in rep2:
            rep.add(f"{label}:{v.kind}", v.at, v.lhs, v.rhs)
    return rep


@dataclass(frozen=True)
class TransportQuery:
    """A path or a bigon in the base; basepoint defaults to its source."""
    cell: object
    basepoint: object = None

    def validate(self, X):
        c = self.cell
        p = c if isinstance(c, Path) else c.src
        if X.path(p.word, p.src) != p:
            raise TypingError("query path is not reduced or not well typed")
        if self.basepoint is not None and self.basepoint != p.src:
            raise TypingError("basepoint differs from the source of the query")
        return True


# ---------------------------------------------------------------------------
# extraction

def extract(tf):
    ctx, T = tf.ctx, tf.ctx.T
    b = tf.t_bundle
    t, tbar, i_t = b.forward, b.inverse, b.i_t
    g = _memo_nat(compose_transformations(pull_back(tbar, ctx.map(2, (0,))),
                                          pull_back(t, ctx.map(2, (1,)))))
    psi = Modification(None, None, b.j_t.at, name="psi")

    def f_at(x):
        i, j, k, v = x
        t1b, t2, t2b, t3 = tbar.at0((i, v)), t.at0((j, v)), tbar.at0((j, v)), t.at0((k, v))
        return _vchain(T,
                       _h(T, T.unit2(t3), T.runit(t1b)),
                       _h(T, T.unit2(t3), _h(T, i_t.at((j, v)), T.unit2(t1b))),
                       _h(T, T.unit2(t3), _inv(T, T.assoc(t1b, t2, t2b))),
                       T.assoc(T.comp(t2, t1b), t2b, t3))
    f = Modification(None, None, functools.lru_cache(maxsize=None)(f_at), name="f")
    return DescentObject(ctx, tf.triv, g, psi, f, name=f"Ex({tf.name})")


def extract_1mor(A, tf, tf2):
    """A: F → F′ gives h = (t′∘π*A)∘t̄ with ε built from i_t and i_t′."""
    ctx, T = tf.ctx, tf.ctx.T
    _require_strict(T, "extract_1mor")
    D, D2 = extract(tf), extract(tf2)
    tbar, i_t = tf.t_bundle.inverse, tf.t_bundle.i_t
    t2, i_t2 = tf2.t_bundle.forward, tf2.t_bundle.i_t
    piA = pull_back(A, ctx.to_base(1))
    h = _memo_nat(compose_transformations(compose_transformations(tbar, piA), t2))

    def eps(alpha):
        i, j, v = alpha
        a, b = (i, v), (j, v)
        Ax = piA.at0(a)
        first = _whisker(T, T.comp(t2.at0(b), Ax), i_t.at(b), tbar.at0(a))
        second = _whisker(T, t2.at0(b), _inv(T, i_t2.at(a)), T.comp(Ax, tbar.at0(a)))
        return T.vert(second, first)
    return DescentOneMor(D, D2, h, Modification(None, None, eps, name="eps"), name=f"Ex({A.name})")


def extract_2mor(B, m1, m2, tf, tf2):
    """B: A1 ⇒ A2 gives E = id_t′ ∘ π*B ∘ id_t̄."""
    T = tf.ctx.T
    _require_strict(T, "extract_2mor")
    t2, tbar = tf2.t_bundle.forward, tf.t_bundle.inverse
    E = Modification(None, None,
                     lambda a: _whisker(T, t2.at0(a), B.at(a[-1]), tbar.at0(a)), name="E")
    return DescentTwoMor(m1, m2, E, name=f"Ex({B.name})")


def extraction_compositor(m1, m2, m12, tf2):
    """Ex(A2)∘Ex(A1) ⇒ Ex(A2∘A1), contracting t̄′∘t′ with i_t′ (strict)."""
    from .descent import compose_descent
    T = tf2.ctx.T
    _require_strict(T, "extraction_compositor")
    comp = compose_descent(m1, m2)
    t2, tbar2, i2 = tf2.t_bundle.forward, tf2.t_bundle.inverse, tf2.t_bundle.i_t

    def at(a):
        # (t″ A2 t̄′)(t′ A1 t̄) with the middle t̄′ t′ contracted
        h2, h1 = m2.h.at0(a), m1.h.at0(a)
        return _contract(T, h2, h1, tbar2.at0(a), t2.at0(a), i2.at(a))
    return DescentTwoMor(comp, m12, Modification(None, None, at, name="c"), name="c")


def _contract(T, h2, h1, tb, tt, i):
    """h2∘h1 with h2 = X∘tb and h1 = tt∘Y (strict): whisker i: tb∘tt ⇒ id."""
    # strict: h2 = t″∘A2∘t̄′ and h1 = t′∘A1∘t̄; locate the factors by division
    X = _right_quotient(T, h2, tb)
    Y = _left_quotient(T, h1, tt)
    return _whisker(T, X, i, Y)


def _right_quotient(T, h, r):
    return T.comp(h, T.inv1(r))


def _left_quotient(T, h, l):
    return T.comp(T.inv1(l), h)


def extraction_unitor(tf):
    """u_F = j_t⁻¹: Ex(id_F) ⇒ id."""
    from .descent import identity_descent
    T = tf.ctx.T
    ident = identity_transformation(tf.F)
    ex = extract_1mor(ident, tf, tf)
    u = Modification(None, None, lambda a: T.inv2(tf.t_bundle.j_t.at(a)), name="u")
    return DescentTwoMor(ex, identity_descent(ex.target), u, name="u_F")


# ---------------------------------------------------------------------------
# the pairing R

class CodescentWindow:
    """The generators of the codescent 2-groupoid as a finite window, with
    formal composition.  2-cell equality is not decided here."""

    def __init__(self, cd):
        self.cd = cd
        cov = cd.cover
        self.Y = [cov.space(k) for k in range(5)]

    def cells0(self):
        return list(self.Y[1].vertices)

    def cells1(self):
        Y1, Y2 = self.Y[1], self.Y[2]
        out = [CPath(Y1.path(((e, s),), Y1.letter_ends((e, s))[0]))
               for e in Y1.edges for s in (1, -1)]
        out += [Jump(a) for a in Y2.vertices]
        out += [FormalId(a) for a in Y1.vertices]
        return out

    def cells2(self):
        from .codescent import CBigon, Theta
        P1 = PathGroupoid(self.Y[1])
        out = [CBigon(P1.face(F)) for F in self.Y[1].faces]
        out += [Theta(self.Y[2].path(((e, 1),))) for e in self.Y[2].edges]
        out += [Xi(x) for x in self.Y[3].vertices]
        out += [DeltaA(a) for a in self.Y[1].vertices]
        return out

    def src1(self, f):
        return ends1(f)[0]

    def tgt1(self, f):
        return ends1(f)[1]

    def src2(self, a):
        return src(a)

    def tgt2(self, a):
        return tgt(a)

    def comp(self, g, f):
        return Star(g, f)

    def vert(self, b, a):
        return VComp(a, b)

    def horiz(self, b, a):
        return HComp(b, a)

    def unit1(self, x):
        return FormalId(x)

    def unit2(self, f):
        return Id2(f)

    def assoc(self, f, g, h):
        return Assoc(f, g, h)

    def lunit(self, f):
        return LUnif(f)

    def runit(self, f):
        return RUnif(f)

    def inv2(self, a):
        return inv(a)

    def eq1(self, f, g):
        return f is g


class Evaluator(TwoFunctor):
    """R: codescent terms → T for a descent object.  Strict: Star goes to
    composition and formal identities to identities."""

    def __init__(self, D, cd=None):
        self.D = D
        self.cd = cd or codescent_for(D.ctx.cover)
        self.T = D.ctx.T
        TwoFunctor.__init__(self, CodescentWindow(self.cd), self.T, D.triv_i.obj,
                            self.one, self.two, name=f"R[{D.name}]")
        self.obj = D.triv_i.obj
        self._c1, self._c2 = {}, {}

    def one(self, t):
        r = self._c1.get(t)
        if r is None:
            r = self._eval1(t)
            self._c1[t] = r
        return r

    def _eval1(self, t):
        k, a, D = t.kind, t.args, self.D
        if k == "Path":
            return D.triv_i.one(a[0])
        if k == "Jump":
            return D.g.at0(a[0])
        if k == "FormalId":
            return self.T.unit1(D.triv_i.obj(a[0]))
        if k == "Star":
            return self.T.comp(self.one(a[0]), self.one(a[1]))
        raise TypeError(f"not a 1-cell term: {k}")

    def two(self, t):
        r = self._c2.get(t)
        if r is None:
            r = self._eval2(t)
            self._c2[t] = r
        return r

    def _eval2(self, t):
        k, a, D, T = t.kind, t.args, self.D, self.T
        if k == "Id2":
            return T.unit2(self.one(a[0]))
        if k == "VComp":
            out = self.two(a[0])
            for x in a[1:]:
                out = T.vert(self.two(x), out)
            return out
        if k == "HComp":
            return T.horiz(self.two(a[0]), self.two(a[1]))
        sign = a[-1]
        a = a[:-1]
        if k == "Bigon":
            r = D.triv_i.two(a[0])
        elif k == "Theta":
            r = D.g.at1(a[0])
        elif k == "Xi":
            r = D.f.at(a[0])
        elif k == "DeltaA":
            r = D.psi.at(a[0])
        elif k == "Assoc":
            r = T.assoc(*(self.one(b) for b in a))
        elif k == "LUnif":
            r = T.lunit(self.one(a[0]))
        elif k == "RUnif":
            r = T.runit(self.one(a[0]))
        elif k == "UStar":
            r = D.triv_i.unit(a[0])
        elif k == "CStar":
            r = D.triv_i.comp(a[0], a[1])
        else:
            raise TypeError(f"not a 2-cell term: {k}")
        return r if sign == 1 else T.inv2(r)


_CODESCENT = {}


def codescent_for(cover):
    cd = _CODESCENT.get(id(cover))
    if cd is None or cd.cover is not cover:
        cd = Codescent(cover)
        _CODESCENT[id(cover)] = cd
    return cd


def pairing_R(D, validate=True):
    if validate:
        rep = check_descent_object(D)
        if rep:
            raise ConstructionError(f"descent object {D.name} is invalid; "
                                    f"check_descent_object reports {len(rep)} violation(s), first: {rep[0]}")
    return Evaluator(D)


def pairing_R_1mor(m, R1=None, R2=None):
    """R_m: R_D → R_D′ with paths ↦ h(γ), jumps ↦ ε(α), composites by
    pasting and formal identities by unifiers."""
    R1 = R1 or Evaluator(m.source)
    R2 = R2 or Evaluator(m.target)
    T = R1.T
    cache = {}

    def at0(a):
        return m.h.at0(a)

    def at1(term):
        r = cache.get(term)
        if r is None:
            r = _r1(term)
            cache[term] = r
        return r

    def _r1(term):
        k, a = term.kind, term.args
        if k == "Path":
            return m.h.at1(a[0])
        if k == "Jump":
            return m.eps.at(a[0])
        if k == "FormalId":
            hX = at0(a[0])
            return T.vert(T.inv2(T.runit(hX)), T.lunit(hX))
        l, r = a
        X, Yp = ends1(r)
        Z = ends1(l)[1]
        rX, rY, rZ = at0(X), at0(Yp), at0(Z)
        F1f, F1g, F2f, F2g = R1.one(r), R1.one(l), R2.one(r), R2.one(l)
        return _vchain(T, _inv(T, T.assoc(rX, F2f, F2g)), _h(T, T.unit2(F2g), at1(r)),
                       T.assoc(F1f, rY, F2g), _h(T, at1(l), T.unit2(F1f)),
                       _inv(T, T.assoc(F1f, F1g, rZ)))
    return PseudoNat(R1, R2, at0, at1, name=f"R[{m.name}]")


def pairing_R_2mor(E, r1=None, r2=None):
    return Modification(r1, r2, E.E.at, name=f"R[{E.name}]")


# ---------------------------------------------------------------------------
# reconstruction

class Reconstruction(TrivializedFunctor):
    pass


def reconstruct(D, choice, validate=False):
    R = pairing_R(D, validate=validate)
    cd = R.cd
    s = Section(cd, choice)
    z = Zeta(s)
    T = D.ctx.T
    M = D.ctx.groupoid(0)
    F = TwoFunctor(M, T, lambda x: R.obj(s.obj(x)),
                   lambda p: R.one(s.one(p)), lambda b: R.two(s.two(b)),
                   lambda f, g: R.two(s.comp(f, g)), lambda x: R.two(s.unit(x)),
                   name=f"Rec({D.name})")
    piF = precompose(F, D.ctx.to_base(1))
    t = PseudoNat(piF, D.triv_i, lambda a: R.one(z.at0(a)),
                  lambda L: R.two(z.at1(CPath(L))), name="t")
    tbar = PseudoNat(D.triv_i, piF, lambda a: R.one(z.inv0(a)),
                     lambda L: R.two(z.inv1(CPath(L))), name="tbar")
    i_t = Modification(None, None, lambda a: R.two(z.i_at(a)), name="i_t")
    j_t = Modification(None, None, lambda a: R.two(z.j_at(a)), name="j_t")
    tf = Reconstruction(D.ctx, F, D.triv, EquivalenceBundle(_memo_nat(t), _memo_nat(tbar), i_t, j_t),
                        name=f"Rec({D.name})")
    tf.R, tf.section, tf.zeta = R, s, z
    return tf


def rho(D, choice):
    """The descent 1-morphism Ex(Rec(D)) → D: identity h, ε from f."""
    T = D.ctx.T
    E = extract(reconstruct(D, choice))
    chi0 = choice.chi0

    def eps(alpha):
        i, j, v = alpha
        s = chi0[v]
        g, g2 = D.g.at0(alpha), E.g.at0(alpha)
        return _vchain(T, _inv(T, T.lunit(g)), D.f.at((i, s, j, v)), T.runit(g2))
    m = DescentOneMor(E, D, identity_transformation(D.triv_i),
                      Modification(None, None, eps, name="eps"), name=f"rho[{D.name}]")
    m.steps = lambda alpha: [("r", T.runit(E.g.at0(alpha))),
                             ("f", D.f.at((alpha[0], chi0[alpha[2]], alpha[1], alpha[2]))),
                             ("l^-1", _inv(T, T.lunit(D.g.at0(alpha))))]
    return m


class Eta(PseudoNat):
    """η: F → Rec(Ex(TF)) with η(x) = t(s(x)), pasted along the lift of a
    path from t-squares and inverted i_t triangles at the jumps."""

    def __init__(self, tf, choice):
        T = tf.ctx.T
        _require_strict(T, "eta")
        self.tf = tf
        self.rec = reconstruct(extract(tf), choice)
        self.s = self.rec.section
        self._cache = {}
        b = tf.t_bundle
        self.t, self.i_t = b.forward, b.i_t
        super().__init__(tf.F, self.rec.F, lambda x: self.t.at0(self.s.obj(x)), self._at1,
                         name=f"eta[{tf.name}]")

    def steps(self, gamma):
        """The pasting transcript of η(γ): (token, step 2-cell) pairs."""
        T, F = self.tf.ctx.T, self.tf.F
        cd = self.s.cd
        Fg = T.unit1(F.obj(gamma.src))
        out = []
        for tok in self.s.tokens(gamma):
            a, b = ends1(tok)
            if tok.kind == "Path":
                step = _whisker(T, None, self.t.at1(tok.args[0]), Fg)
                Fg = T.comp(F.one(cd.project(tok)), Fg)
            else:
                step = _whisker(T, self.t.at0(b), _inv(T, self.i_t.at(a)), Fg)
            out.append((tok, step))
        return out

    def _at1(self, gamma):
        r = self._cache.get(gamma)
        if r is not None:
            return r
        T = self.tf.ctx.T
        R = self.rec.R
        cur = T.unit2(self.at0(gamma.src))
        for tok, step in self.steps(gamma):
            cur = T.vert(T.horiz(T.unit2(R.one(tok)), cur), step)
        self._cache[gamma] = cur
        return cur


def eta(tf, choice):
    return Eta(tf, choice)


def comparison(D, choice1, choice2):
    """κ: Rec_1(D) → Rec_2(D) with κ(x) = R(jump χ1(x) → χ2(x))."""
    r1, r2 = reconstruct(D, choice1), reconstruct(D, choice2)
    R, cd = r1.R, r1.R.cd
    s1, s2 = r1.section, r2.section
    J = lambda x: Jump((choice1.chi0[x], choice2.chi0[x], x))
    cache = {}

    def at1(gamma):
        if gamma not in cache:
            x, y = gamma.src, gamma.tgt
            cache[gamma] = R.two(cd.canonical_2cell(Star(J(y), s1.one(gamma)),
                                                    Star(s2.one(gamma), J(x))))
        return cache[gamma]
    return PseudoNat(r1.F, r2.F, lambda x: R.one(J(x)), at1, name="kappa")


def holonomy(source, q, choice=None):
    """F on the query cell; for 2-group targets the G-label of a path or the
    (G, H) pair of a bigon."""
    if isinstance(source, DescentObject):
        if choice is None:
            choice = SectionChoice.hub(source.ctx.cover)
        source = reconstruct(source, choice)
    X = source.ctx.cover.base
    q.validate(X)
    F, T = source.F, source.ctx.T
    if isinstance(q.cell, Path):
        return F.one(q.cell)
    cell = F.two(q.cell)
    dec = getattr(T, "decode2", None)
    return dec[cell] if dec is not None else cell


def transcript(witness, at):
    """Pasting steps of a constructed witness at an index: rho (a point of
    Y^[2]), eta (a base path) or a reconstruction's ζ (a path in Y)."""
    lines = []
    if isinstance(witness, Eta):
        for tok, step in witness.steps(at):
            lines.append(f"{show(tok)} : {fmt(step)}")
    elif isinstance(witness, DescentOneMor) and hasattr(witness, "steps"):
        for label, cell in witness.steps(at):
            lines.append(f"{label} : {fmt(cell)}")
    elif isinstance(witness, TrivializedFunctor) and hasattr(witness, "zeta"):
        term = witness.zeta.at1(CPath(at))
        parts = term.args if term.kind == "VComp" else (term,)
        for p in parts:
            lines.append(f"{show(p)} : {fmt(witness.R.two(p))}")
    else:
        raise TypeError("no transcript for this witness")
    return lines


# ---------------------------------------------------------------------------
# random instances over a strict 2-group

def two_group_context(cover, cm=None, window=1):
    T = two_group_from_crossed_module(cm or projection_crossed_module())
    return DescentContext(cover, T, T, identity_functor(T), window=window)


def _face_label(T, w_in_val, w_out_val, rng):
    """A random 2-cell w_in ⇒ w_out of the 2-group."""
    cm = T.crossed_module
    G, H = cm.G, cm.H
    need = G.mul(w_out_val, G.inv(w_in_val))
    pre = [h for h in H.elements if cm.t[h] == need]
    if not pre:
        raise ConstructionError("no 2-cell fills the face; t is not surjective enough")
    return T.encode2[(w_in_val, rng.choice(pre))]


def random_functor(P, T, rng, name="F"):
    """Random strict 2-functor P → 2-group T."""
    X = P.X
    G = T.crossed_module.G
    obj = {v: T.objects[0] for v in X.vertices}
    edge = {e: rng.choice(G.elements) for e in X.edges}
    F = GeneratedFunctor(P, T, obj, edge, {}, name=name)
    for fc, (w_in, w_out) in X.faces.items():
        x = X.face_start(fc)
        F.face_table[fc] = _face_label(T, F.word(w_in, x), F.word(w_out, x), rng)
    return F


def random_transformation(F1, P, T, rng, values=None, labels=None, name="rho"):
    """A random strict 2-functor F2 on P with a transformation F1 → F2 whose
    components are random (or the given values/labels)."""
    cm = T.crossed_module
    G, H = cm.G, cm.H
    X = P.X
    at0 = {v: (values or {}).get(v) or rng.choice(G.elements) for v in X.vertices}
    at1, edge = {}, {}
    for e, (a, b) in X.edges.items():
        h = (labels or {}).get(e) or rng.choice(H.elements)
        F1e = F1.one(X.path(((e, 1),)))
        start = G.mul(at0[b], F1e)
        at1[e] = T.encode2[(start, h)]
        edge[e] = G.mul(G.mul(cm.t[h], start), G.inv(at0[a]))
    F2 = GeneratedFunctor(P, T, {v: T.objects[0] for v in X.vertices}, edge, {}, name=name + "_tgt")
    rho = GeneratedTransformation(F1, F2, at0, at1, name=name)
    for fc in X.faces:
        sigma = P.face(fc)
        p_in, p_out = sigma.src, P.tgt2(sigma)
        rhs = T.vert(rho.at1(p_out), T.horiz(T.unit2(at0[p_out.tgt]), F1.two(sigma)))
        X_ = T.vert(rhs, T.inv2(rho.at1(p_in)))
        k = T.decode2[X_][1]
        F2.face_table[fc] = T.encode2[(F2.one(p_in), k)]
    return F2, rho


def _kernel(cm):
    return [h for h in cm.H.elements if cm.t[h] == cm.G.e]


def trivialize(ctx, F, rng, normalized=False, name="TF"):
    """A random π-local trivialization of F: random t with the mate t̄ and
    random kernel labels for i_t (identities when normalized)."""
    T = ctx.T
    cm = T.crossed_module
    G, H = cm.G, cm.H
    P1 = ctx.groupoid(1)
    piF = precompose(F, ctx.to_base(1))
    triv, t0 = random_transformation(piF, P1, T, rng, name="t")
    triv.name = "triv"
    triv_i = compose_functors(ctx.i, triv)
    t = GeneratedTransformation(piF, triv_i, t0.comp0, t0.comp1, name="t")
    ker = _kernel(cm)
    k = {a: (H.e if normalized else rng.choice(ker)) for a in P1.X.vertices}
    i_c = {a: T.encode2[(G.e, k[a])] for a in k}
    j_c = {a: T.encode2[(G.e, H.inv(cm.act[(t.at0(a), k[a])]))] for a in k}
    tb0 = {a: G.inv(t.at0(a)) for a in k}
    tb1 = {}
    for e, (a, b) in P1.X.edges.items():
        p = P1.X.path(((e, 1),))
        tre, Fe = triv.one(p), piF.one(p)
        s1 = _whisker(T, T.comp(tb0[b], tre), j_c[a], None)
        s2 = _whisker(T, tb0[b], T.inv2(t.at1(p)), tb0[a])
        s3 = _whisker(T, None, i_c[b], T.comp(Fe, tb0[a]))
        tb1[e] = _vchain(T, s3, s2, s1)
    tbar = GeneratedTransformation(triv_i, piF, tb0, tb1, name="tbar")
    i_t = Modification(compose_transformations(t, tbar), identity_transformation(piF),
                       i_c.__getitem__, name="i_t")
    j_t = Modification(identity_transformation(triv_i), compose_transformations(tbar, t),
                       j_c.__getitem__, name="j_t")
    return TrivializedFunctor(ctx, F, triv, EquivalenceBundle(t, tbar, i_t, j_t), name=name)


def random_trivialized_functor(ctx, rng, normalized=False, name="TF"):
    F = random_functor(ctx.groupoid(0), ctx.T, rng)
    return trivialize(ctx, F, rng, normalized=normalized, name=name)


def bundled_descent_objects(seed=0):
    """Named descent objects: a seeded 2-group cocycle on every bundled base
    and a normalized one."""
    from .base import BASES
    out = {}
    for name in sorted(BASES):
        X, cover = bundled_base(name)
        ctx = two_group_context(cover)
        rng = random.Random(f"{seed}:{name}")
        out[f"{name}-cocycle"] = extract(random_trivialized_functor(ctx, rng, name=name))
        out[f"{name}-normalized"] = extract(random_trivialized_functor(ctx, rng, normalized=True,
                                                                       name=name))
    return out

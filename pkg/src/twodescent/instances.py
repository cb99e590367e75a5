"""Concrete 2-categories: strict 2-groups from crossed modules, deloopings of
finite monoidal categories, and the trivial 2-groupoid."""

import itertools
from dataclasses import dataclass, field

from .twocat import ConstructionError, TwoCategoryTable, check_two_category


class FiniteGroup:
    """Cayley-table group on string-named elements."""

    def __init__(self, elements, table, name="G"):
        self.elements = tuple(elements)
        self.table = dict(table)          # (a, b) -> a·b
        self.name = name
        ids = [e for e in self.elements
               if all(self.table[(e, x)] == x and self.table[(x, e)] == x for x in self.elements)]
        if len(ids) != 1:
            raise ConstructionError(f"{name}: no two-sided identity")
        self.e = ids[0]
        self._inv = {}
        for a in self.elements:
            inv = [b for b in self.elements if self.table[(a, b)] == self.e]
            if len(inv) != 1:
                raise ConstructionError(f"{name}: element {a} has no inverse")
            self._inv[a] = inv[0]
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ConstructionError(f"{name}: associativity fails at ({a},{b},{c})")

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {len(self)})"

    def __len__(self):
        return len(self.elements)

    def mul(self, a, b):
        return self.table[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def prod(self, *xs):
        out = self.e
        for x in xs:
            out = self.mul(out, x)
        return out

    def conj(self, g, h):
        return self.prod(g, h, self.inv(g))

    def is_abelian(self):
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)

    def generators(self):
        gens, span = [], {self.e}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = self.closure(gens)
        return gens

    def closure(self, gens):
        span = {self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = self.mul(a, s)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        return span


def cyclic_group(n):
    els = [str(k) for k in range(n)]
    return FiniteGroup(els, {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)},
                       name=f"Z{n}")


def permutation_group(perms, name):
    perms = [tuple(p) for p in perms]
    nm = {p: "".join(map(str, p)) for p in perms}
    table = {}
    for p in perms:
        for q in perms:
            table[(nm[p], nm[q])] = nm[tuple(p[q[i]] for i in range(len(q)))]
    return FiniteGroup([nm[p] for p in perms], table, name=name)


def symmetric_group3():
    return permutation_group(sorted(itertools.permutations(range(3))), "S3")


def direct_product(A, B, name=None):
    els = [f"{a}.{b}" for a in A.elements for b in B.elements]
    split = {f"{a}.{b}": (a, b) for a in A.elements for b in B.elements}
    table = {}
    for x in els:
        for y in els:
            (a1, b1), (a2, b2) = split[x], split[y]
            table[(x, y)] = f"{A.mul(a1, a2)}.{B.mul(b1, b2)}"
    return FiniteGroup(els, table, name=name or f"{A.name}x{B.name}")


def klein_group():
    return direct_product(cyclic_group(2), cyclic_group(2), name="Z2xZ2")


def trivial_group():
    return FiniteGroup(["e"], {("e", "e"): "e"}, name="1")


def standard_groups():
    """The groups of the axiom-kernel sweep."""
    return [cyclic_group(2), cyclic_group(4), klein_group(), symmetric_group3()]


def homomorphisms(A, B):
    """All homomorphisms A → B as dicts, found by extending generator images."""
    gens = A.generators()
    out = []
    for imgs in itertools.product(B.elements, repeat=len(gens)):
        phi = {A.e: B.e}
        frontier = [A.e]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for s, t in zip(gens, imgs):
                    b = A.mul(a, s)
                    v = B.mul(phi[a], t)
                    if b in phi:
                        if phi[b] != v:
                            ok = False
                            break
                    else:
                        phi[b] = v
                        nxt.append(b)
                if not ok:
                    break
            frontier = nxt
        if ok and all(phi[A.mul(x, y)] == B.mul(phi[x], phi[y]) for x in A.elements for y in A.elements):
            out.append(phi)
    return out


def automorphisms(H):
    return [phi for phi in homomorphisms(H, H) if len(set(phi.values())) == len(H)]


# ---------------------------------------------------------------------------
# crossed modules

@dataclass
class CrossedModule:
    """t: H → G with a left action act(g, h) of G on H."""
    G: FiniteGroup
    H: FiniteGroup
    t: dict
    act: dict
    name: str = "cm"

    def violations(self):
        """All failing defining identities as (identity, witnesses) pairs."""
        G, H, t, act = self.G, self.H, self.t, self.act
        bad = []
        for h in H.elements:
            if t.get(h) not in G.elements:
                bad.append(("t total", (h,)))
        for g in G.elements:
            for h in H.elements:
                if act.get((g, h)) not in H.elements:
                    bad.append(("act total", (g, h)))
        if bad:
            return bad
        for h1 in H.elements:
            for h2 in H.elements:
                if t[H.mul(h1, h2)] != G.mul(t[h1], t[h2]):
                    bad.append(("t homomorphism", (h1, h2)))
        for h in H.elements:
            if act[(G.e, h)] != h:
                bad.append(("unit acts trivially", (h,)))
        for g1 in G.elements:
            for g2 in G.elements:
                for h in H.elements:
                    if act[(G.mul(g1, g2), h)] != act[(g1, act[(g2, h)])]:
                        bad.append(("action", (g1, g2, h)))
        for g in G.elements:
            for h1 in H.elements:
                for h2 in H.elements:
                    if act[(g, H.mul(h1, h2))] != H.mul(act[(g, h1)], act[(g, h2)]):
                        bad.append(("action by automorphisms", (g, h1, h2)))
        for g in G.elements:
            for h in H.elements:
                if t[act[(g, h)]] != G.conj(g, t[h]):
                    bad.append(("equivariance", (g, h)))
        for h1 in H.elements:
            for h2 in H.elements:
                if act[(t[h1], h2)] != H.conj(h1, h2):
                    bad.append(("Peiffer", (h1, h2)))
        return bad

    def validate(self):
        bad = self.violations()
        if bad:
            ident, wit = bad[0]
            more = f" (and {len(bad) - 1} more)" if len(bad) > 1 else ""
            raise ConstructionError(
                f"crossed module {self.name}: {ident} identity fails at "
                f"{'(' + ','.join(wit) + ')'}{more}")


def all_crossed_modules(G, H):
    """Every valid (t, act) for the pair (G, H)."""
    auts = automorphisms(H)
    aut_index = {tuple(phi[h] for h in H.elements): k for k, phi in enumerate(auts)}
    # Aut(H) as a group under composition
    names = [str(k) for k in range(len(auts))]
    table = {}
    for i, p in enumerate(auts):
        for j, q in enumerate(auts):
            comp = tuple(p[q[h]] for h in H.elements)
            table[(names[i], names[j])] = names[aut_index[comp]]
    AutH = FiniteGroup(names, table, name=f"Aut({H.name})")
    out = []
    for t in homomorphisms(H, G):
        for rho in homomorphisms(G, AutH):
            act = {(g, h): auts[int(rho[g])][h] for g in G.elements for h in H.elements}
            cm = CrossedModule(G, H, dict(t), act, name=f"{H.name}->{G.name}#{len(out)}")
            if not cm.violations():
                out.append(cm)
    return out


def crossed_module_sweep(groups=None):
    """All crossed modules with G, H from the standard list."""
    groups = standard_groups() if groups is None else groups
    out = []
    for G in groups:
        for H in groups:
            out.extend(all_crossed_modules(G, H))
    return out


def identity_crossed_module(G):
    """id: G → G with conjugation."""
    return CrossedModule(G, G, {g: g for g in G.elements},
                         {(g, h): G.conj(g, h) for g in G.elements for h in G.elements},
                         name=f"id({G.name})")


def projection_crossed_module():
    """S3×Z2 → S3, projection, S3 acting by conjugation on the first factor.
    Nonabelian with central kernel Z2; the default structure 2-group for
    random cocycles."""
    S3, Z2 = symmetric_group3(), cyclic_group(2)
    H = direct_product(S3, Z2)
    t = {f"{a}.{b}": a for a in S3.elements for b in Z2.elements}
    act = {(g, f"{a}.{b}"): f"{S3.conj(g, a)}.{b}"
           for g in S3.elements for a in S3.elements for b in Z2.elements}
    return CrossedModule(S3, H, t, act, name="S3xZ2->S3")


def quotient_crossed_module():
    """Z4 → Z2 reduction mod 2 with trivial action."""
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    t = {str(k): str(k % 2) for k in range(4)}
    act = {(g, h): h for g in Z2.elements for h in Z4.elements}
    return CrossedModule(Z2, Z4, t, act, name="Z4->Z2")


def cell2_name(g, h):
    return f"[{g};{h}]"


def two_group_from_crossed_module(cm):
    """The strict one-object 2-groupoid of cm.  The 2-cell [g;h] goes from g
    to t(h)·g."""
    cm.validate()
    G, H, t, act = cm.G, cm.H, cm.t, cm.act
    star = "*"
    one_cells = {g: (star, star) for g in G.elements}
    cells = {(g, h): cell2_name(g, h) for g in G.elements for h in H.elements}
    two_cells = {cells[(g, h)]: (g, G.mul(t[h], g)) for (g, h) in cells}
    compose1 = {(g2, g1): G.mul(g2, g1) for g1 in G.elements for g2 in G.elements}
    vcomp = {}
    for g in G.elements:
        for h in H.elements:
            g2 = G.mul(t[h], g)
            for h2 in H.elements:
                vcomp[(cells[(g2, h2)], cells[(g, h)])] = cells[(g, H.mul(h2, h))]
    hcomp = {}
    for (g1, h1), a in cells.items():
        for (g2, h2), b in cells.items():
            hcomp[(b, a)] = cells[(G.mul(g2, g1), H.mul(h2, act[(g2, h1)]))]
    ident2 = {g: cells[(g, H.e)] for g in G.elements}
    assoc = {(f, g, h): ident2[G.prod(h, g, f)]
             for f in G.elements for g in G.elements for h in G.elements}
    lu = {g: ident2[g] for g in G.elements}
    inverse2 = {cells[(g, h)]: cells[(G.mul(t[h], g), H.inv(h))] for (g, h) in cells}
    inverse1 = {g: G.inv(g) for g in G.elements}
    T = TwoCategoryTable([star], one_cells, two_cells, compose1, vcomp, hcomp,
                         {star: G.e}, ident2, assoc, lu, dict(lu), inverse2, inverse1,
                         strict=True, name=f"2Gr({cm.name})")
    T.crossed_module = cm
    T.decode2 = {v: k for k, v in cells.items()}
    T.encode2 = cells
    return T


def trivial_2groupoid():
    star, one, two = "*", "1", "id"
    return TwoCategoryTable([star], {one: (star, star)}, {two: (one, one)},
                            {(one, one): one}, {(two, two): two}, {(two, two): two},
                            {star: one}, {one: two}, {(one, one, one): two},
                            {one: two}, {one: two}, {two: two}, {one: one},
                            strict=True, name="trivial")


# ---------------------------------------------------------------------------
# monoidal categories

@dataclass
class MonoidalTable:
    """A finite monoidal category.

    ``alpha[(X, Y, Z)]``: (X⊗Y)⊗Z → X⊗(Y⊗Z); ``lam[X]``: X⊗I → X;
    ``rho[X]``: I⊗X → X.  ``compose[(g, f)]`` is g∘f.
    """
    objects: list
    morphisms: dict        # name -> (src, tgt)
    compose: dict
    identity: dict
    tensor_obj: dict
    tensor_mor: dict
    unit: str
    alpha: dict
    lam: dict
    rho: dict
    inverse: dict = field(default_factory=dict)
    strict: bool = False
    name: str = "mon"

    def hom(self, x, y):
        return [m for m, (s, t) in self.morphisms.items() if s == x and t == y]

    def is_iso(self, m):
        return m in self.inverse


def _delooping_table(m):
    star = "*"
    return TwoCategoryTable(
        [star], {x: (star, star) for x in m.objects}, dict(m.morphisms),
        dict(m.tensor_obj), dict(m.compose), dict(m.tensor_mor),
        {star: m.unit}, dict(m.identity),
        {(x, y, z): m.alpha[(z, y, x)] for (z, y, x) in m.alpha},
        dict(m.lam), dict(m.rho), dict(m.inverse), strict=m.strict, name=f"B({m.name})")


def delooping(m):
    """One-object 2-category of m; tensor is horizontal composition and
    a_{X,Y,Z} = α_{Z,Y,X}.  Coherence failures raise ConstructionError."""
    T = _delooping_table(m)
    rep = check_two_category(T)
    if rep:
        raise ConstructionError(f"monoidal table {m.name} is not coherent: {rep[0]}"
                                + (f" (and {len(rep) - 1} more)" if len(rep) > 1 else ""))
    T.monoidal = m
    return T


def _identity_structure(objects, morphisms, compose, identity, tensor_obj, tensor_mor, unit,
                        inverse, name):
    alpha = {(x, y, z): identity[tensor_obj[(tensor_obj[(x, y)], z)]]
             for x in objects for y in objects for z in objects}
    lam = {x: identity[x] for x in objects}
    return MonoidalTable(list(objects), morphisms, compose, identity, tensor_obj, tensor_mor,
                         unit, alpha, lam, dict(lam), inverse, True, name)


def graded_monoid_table():
    """Objects Z2 (tensor = addition), End(a) = multiplicative monoid Z/4,
    no morphisms between distinct objects.  Strict, 2 objects, 8 morphisms."""
    objs = ["0", "1"]
    mon = range(4)
    morphisms = {f"{k}@{a}": (a, a) for a in objs for k in mon}
    compose = {(f"{k}@{a}", f"{j}@{a}"): f"{(k * j) % 4}@{a}" for a in objs for k in mon for j in mon}
    identity = {a: f"1@{a}" for a in objs}
    tensor_obj = {(a, b): str((int(a) + int(b)) % 2) for a in objs for b in objs}
    tensor_mor = {(f"{k}@{a}", f"{j}@{b}"): f"{(k * j) % 4}@{tensor_obj[(a, b)]}"
                  for a in objs for b in objs for k in mon for j in mon}
    inverse = {f"{k}@{a}": f"{k}@{a}" for a in objs for k in (1, 3)}
    return _identity_structure(objs, morphisms, compose, identity, tensor_obj, tensor_mor, "0",
                               inverse, "gradedZ4")


def matrix_table():
    """Matrices over F2 between dimensions 0 and 1, tensor = Kronecker product.
    Strict, 2 objects, 5 morphisms."""
    objs = ["0", "1"]
    # a morphism m -> n is an n×m matrix; encode entries as a string
    morphisms = {"z00": ("0", "0"), "z01": ("0", "1"), "z10": ("1", "0"),
                 "m0": ("1", "1"), "m1": ("1", "1")}
    val = {"m0": 0, "m1": 1}

    def mk(s, t, v=None):
        if s == "0" or t == "0":
            return f"z{s}{t}"
        return f"m{v}"

    compose = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if ft == gs:
                v = val[g] * val[f] if (fs == "1" and gt == "1" and gs == "1") else 0
                compose[(g, f)] = mk(fs, gt, v)
    identity = {"0": "z00", "1": "m1"}
    tensor_obj = {(a, b): str(int(a) * int(b)) for a in objs for b in objs}
    tensor_mor = {}
    for f, (fs, ft) in morphisms.items():
        for g, (gs, gt) in morphisms.items():
            s, t = tensor_obj[(fs, gs)], tensor_obj[(ft, gt)]
            v = val.get(f, 0) * val.get(g, 0)
            tensor_mor[(f, g)] = mk(s, t, v)
    inverse = {"z00": "z00", "m1": "m1"}
    return _identity_structure(objs, morphisms, compose, identity, tensor_obj, tensor_mor, "1",
                               inverse, "matF2")


def crossed_module_monoidal(cm):
    """The monoidal category underlying the 2-group of cm: objects G,
    morphisms (g, h): g → t(h)g, tensor from horizontal composition."""
    T = two_group_from_crossed_module(cm)
    objs = list(cm.G.elements)
    m = MonoidalTable(objs, dict(T.two_cells), dict(T.vcomp), dict(T.identity2),
                      dict(T.compose1), dict(T.hcomp), cm.G.e,
                      {(x, y, z): T.identity2[T.compose1[(T.compose1[(x, y)], z)]]
                       for x in objs for y in objs for z in objs},
                      {x: T.identity2[x] for x in objs}, {x: T.identity2[x] for x in objs},
                      dict(T.inverse2), True, f"mon({cm.name})")
    return m


def anomaly_table():
    """Z2-graded lines with the nontrivial associator (-1)^{abc}: objects
    Z2, Aut(a) = {+,-}.  Not strict; used to exercise the weak code paths."""
    objs = ["0", "1"]
    signs = ["+", "-"]
    morphisms = {f"{s}{a}": (a, a) for a in objs for s in signs}
    mul = {("+", "+"): "+", ("+", "-"): "-", ("-", "+"): "-", ("-", "-"): "+"}
    compose = {(f"{s}{a}", f"{r}{a}"): f"{mul[(s, r)]}{a}" for a in objs for s in signs for r in signs}
    identity = {a: f"+{a}" for a in objs}
    tensor_obj = {(a, b): str((int(a) + int(b)) % 2) for a in objs for b in objs}
    tensor_mor = {(f"{s}{a}", f"{r}{b}"): f"{mul[(s, r)]}{tensor_obj[(a, b)]}"
                  for a in objs for b in objs for s in signs for r in signs}
    alpha = {}
    for x in objs:
        for y in objs:
            for z in objs:
                tot = tensor_obj[(tensor_obj[(x, y)], z)]
                sgn = "-" if x == y == z == "1" else "+"
                alpha[(x, y, z)] = f"{sgn}{tot}"
    lam = {a: f"+{a}" for a in objs}
    inverse = {m: m for m in morphisms}
    return MonoidalTable(objs, morphisms, compose, identity, tensor_obj, tensor_mor, "0",
                         alpha, lam, dict(lam), inverse, False, "anomalyZ2")


def unit_functor(Gr, T):
    """The 2-functor i: trivial 2-groupoid → T picking the identity 1-cell of
    the (single) object of T; strict."""
    from .twocat import TwoFunctorData
    star = T.objects[0]
    one = T.identity1[star]
    return TwoFunctorData(Gr, T, {o: star for o in Gr.objects}, {f: one for f in Gr.one_cells},
                          {a: T.identity2[one] for a in Gr.two_cells}, name="i")


def brute_force_algebras(m):
    """Triples (A, μ: A⊗A → A, η: I → A) with μ, η invertible, satisfying
    both unit laws and associativity, computed directly in m."""
    out = set()
    for A in m.objects:
        AA = m.tensor_obj[(A, A)]
        for mu in m.hom(AA, A):
            for eta in m.hom(m.unit, A):
                if not (m.is_iso(mu) and m.is_iso(eta)):
                    continue
                idA = m.identity[A]
                # μ∘(η⊗id_A) = ρ_A  and  μ∘(id_A⊗η) = λ_A
                left = m.compose.get((mu, m.tensor_mor[(eta, idA)]))
                right = m.compose.get((mu, m.tensor_mor[(idA, eta)]))
                if left != m.rho[A] or right != m.lam[A]:
                    continue
                # μ∘(μ⊗id)  vs  μ∘(id⊗μ)∘α_{A,A,A}
                lhs = m.compose[(mu, m.tensor_mor[(mu, idA)])]
                rhs = m.compose[(m.compose[(mu, m.tensor_mor[(idA, mu)])], m.alpha[(A, A, A)])]
                if lhs != rhs:
                    continue
                out.add((A, mu, eta))
    return out

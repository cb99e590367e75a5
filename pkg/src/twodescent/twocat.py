"""Finite 2-categories as explicit tables, plus 2-functors, pseudonatural
transformations and modifications, with exhaustive axiom checkers.

Every checker returns a :class:`Report`, a list of :class:`Violation`
records.  An empty report means the checked structure satisfies all
enumerated axiom instances.

Anything with the methods below can be handed to the generic checkers
(a "2-category protocol"):

    cells0() cells1() cells2()            finite enumerations (a window)
    src1 tgt1 src2 tgt2
    comp(g, f)      g after f
    vert(b, a)      b after a (vertical)
    horiz(b, a)     horizontal composite, b on the left
    unit1(X) unit2(f) assoc(f, g, h) lunit(f) runit(f) inv2(a)
    eq1 eq2

Operations return None where a composite is undefined; checkers turn a
None into a violation instead of raising.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class TypingError(ValueError):
    """Endpoint mismatch in some piece of structure."""


class CapabilityError(RuntimeError):
    """The request is outside what the engine can compute (e.g. weak targets
    in constructions that are only implemented for strict ones)."""


class ConstructionError(ValueError):
    """Input data violates a defining identity."""


def fmt(x):
    if x is None:
        return "undefined"
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(fmt(y) for y in x) + ")"
    return str(x)


@dataclass(frozen=True)
class Violation:
    kind: str
    at: object
    lhs: object = None
    rhs: object = None

    def __str__(self):
        return f"{self.kind}@{fmt(self.at)}: lhs={fmt(self.lhs)} rhs={fmt(self.rhs)}"


class Report(list):
    @property
    def ok(self):
        return len(self) == 0

    def kinds(self):
        return sorted({v.kind for v in self})

    def add(self, kind, at, lhs=None, rhs=None):
        self.append(Violation(kind, at, lhs, rhs))

    def expect(self, kind, at, lhs, rhs, eq):
        if lhs is None or rhs is None or not eq(lhs, rhs):
            self.append(Violation(kind, at, lhs, rhs))

    def __str__(self):
        return "\n".join(str(v) for v in self)


def _nn(*xs):
    return all(x is not None for x in xs)


# ---------------------------------------------------------------------------
# explicit tables

class TwoCategoryTable:
    """A finite 2-category stored as explicit composition tables.

    ``one_cells`` maps a 1-cell name to ``(source, target)`` objects and
    ``two_cells`` maps a 2-cell name to ``(source, target)`` 1-cells.
    ``compose1[(g, f)]`` is g∘f, ``vcomp[(b, a)]`` is b•a and
    ``hcomp[(b, a)]`` is b∘a.  ``associator[(f, g, h)]`` is
    a_{f,g,h}: (h∘g)∘f ⇒ h∘(g∘f); ``left_unifier[f]`` is l_f: f∘id ⇒ f and
    ``right_unifier[f]`` is r_f: id∘f ⇒ f.  ``inverse2`` holds the stored
    inverses of invertible 2-cells, ``inverse1`` optional strict inverses
    of 1-cells (used for groupoid-valued functors).
    """

    def __init__(self, objects, one_cells, two_cells, compose1, vcomp, hcomp,
                 identity1, identity2, associator, left_unifier, right_unifier,
                 inverse2=None, inverse1=None, strict=False, name="C"):
        self.objects = tuple(objects)
        self.one_cells = dict(one_cells)
        self.two_cells = dict(two_cells)
        self.compose1 = dict(compose1)
        self.vcomp = dict(vcomp)
        self.hcomp = dict(hcomp)
        self.identity1 = dict(identity1)
        self.identity2 = dict(identity2)
        self.associator = dict(associator)
        self.left_unifier = dict(left_unifier)
        self.right_unifier = dict(right_unifier)
        self.inverse2 = dict(inverse2 or {})
        self.inverse1 = dict(inverse1 or {})
        self.strict = bool(strict)
        self.name = name

    _fields = ("objects", "one_cells", "two_cells", "compose1", "vcomp", "hcomp",
               "identity1", "identity2", "associator", "left_unifier",
               "right_unifier", "inverse2", "inverse1", "strict", "name")

    def replace(self, **changes):
        kw = {k: getattr(self, k) for k in self._fields}
        kw.update(changes)
        return TwoCategoryTable(**kw)

    def with_entry(self, table, key, value):
        """Copy of self with a single table entry overwritten.  If the parent's
        index arrays are already built, the copy patches them instead of
        rebuilding (mutation sweeps rely on this)."""
        d = dict(getattr(self, table))
        d[key] = value
        out = self.replace(**{table: d})
        arr = self.__dict__.get("_arrays")
        if arr is not None and table in _PATCHABLE:
            out.__dict__["_arrays"] = arr.patched(table, key, value)
        return out

    def __repr__(self):
        return (f"TwoCategoryTable({self.name}: {len(self.objects)} objects, "
                f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)")

    # protocol
    def cells0(self):
        return self.objects

    def cells1(self):
        return tuple(self.one_cells)

    def cells2(self):
        return tuple(self.two_cells)

    def src1(self, f):
        e = self.one_cells.get(f)
        return None if e is None else e[0]

    def tgt1(self, f):
        e = self.one_cells.get(f)
        return None if e is None else e[1]

    def src2(self, a):
        e = self.two_cells.get(a)
        return None if e is None else e[0]

    def tgt2(self, a):
        e = self.two_cells.get(a)
        return None if e is None else e[1]

    def comp(self, g, f):
        return self.compose1.get((g, f))

    def vert(self, b, a):
        return self.vcomp.get((b, a))

    def horiz(self, b, a):
        return self.hcomp.get((b, a))

    def unit1(self, x):
        return self.identity1.get(x)

    def unit2(self, f):
        return self.identity2.get(f)

    def assoc(self, f, g, h):
        return self.associator.get((f, g, h))

    def lunit(self, f):
        return self.left_unifier.get(f)

    def runit(self, f):
        return self.right_unifier.get(f)

    def inv2(self, a):
        return self.inverse2.get(a)

    def inv1(self, f):
        return self.inverse1.get(f)

    def eq1(self, f, g):
        return f == g

    def eq2(self, a, b):
        return a == b

    def is_identity2(self, a):
        s = self.src2(a)
        return s is not None and self.identity2.get(s) == a

    def hom2(self, f, g):
        """All 2-cells f ⇒ g."""
        return [a for a, (s, t) in self.two_cells.items() if s == f and t == g]

    @cached_property
    def _arrays(self):
        return _TableArrays(self)


def strictify_check(C):
    """True iff the stored coherence cells are identities (the strict flag is
    then legitimate)."""
    return not _strict_report(C)


# ---------------------------------------------------------------------------
# vectorised exhaustive checker for tables

class _TableArrays:
    """Integer-indexed copies of a table's structure.  Every array carries one
    trailing sentinel slot per axis holding -1, so an undefined index (-1)
    looks up the sentinel and stays undefined."""

    def __init__(self, C):
        self.ob = {x: i for i, x in enumerate(C.objects)}
        self.on = {f: i for i, f in enumerate(C.one_cells)}
        self.tw = {a: i for i, a in enumerate(C.two_cells)}
        self.names0 = list(C.objects)
        self.names1 = list(C.one_cells)
        self.names2 = list(C.two_cells)
        self.n = (len(self.ob), len(self.on), len(self.tw))
        self.bad_values = []
        self.s1 = _pad(np.array([self.ob.get(C.one_cells[f][0], -1) for f in self.names1], dtype=np.int64))
        self.t1 = _pad(np.array([self.ob.get(C.one_cells[f][1], -1) for f in self.names1], dtype=np.int64))
        self.s2 = _pad(np.array([self.on.get(C.two_cells[a][0], -1) for a in self.names2], dtype=np.int64))
        self.t2 = _pad(np.array([self.on.get(C.two_cells[a][1], -1) for a in self.names2], dtype=np.int64))
        for attr, (table, kmaps, vmap) in _ARRAYS.items():
            setattr(self, attr, self._lut(table, getattr(C, table),
                                          tuple(getattr(self, k) for k in kmaps), getattr(self, vmap)))

    def patched(self, table, key, value):
        attr, kmaps, vmap = _PATCHABLE[table]
        kmaps = tuple(getattr(self, k) for k in kmaps)
        vmap = getattr(self, vmap)
        key = key if len(kmaps) > 1 else (key,)
        new = object.__new__(_TableArrays)
        new.__dict__.update(self.__dict__)
        arr = getattr(self, attr).copy()
        idx = tuple(km[k] for km, k in zip(kmaps, key))
        v = vmap.get(value, -1)
        if v < 0:
            new.bad_values = self.bad_values + [(table, key, value)]
        arr[idx] = v
        setattr(new, attr, arr)
        return new

    def _lut(self, name, table, key_maps, val_map):
        shape = tuple(len(k) + 1 for k in key_maps)
        arr = np.full(shape, -1, dtype=np.int64)
        single = len(key_maps) == 1
        for key, val in table.items():
            key = (key,) if single else key
            try:
                idx = tuple(km[k] for km, k in zip(key_maps, key))
            except (KeyError, TypeError):
                self.bad_values.append((name, key, val))
                continue
            if len(idx) != len(shape):
                self.bad_values.append((name, key, val))
                continue
            v = val_map.get(val, -1)
            if v < 0:
                self.bad_values.append((name, key, val))
            arr[idx] = v
        return arr


def _pad(a):
    return np.concatenate([a, np.array([-1], dtype=np.int64)])


_ARRAYS = {
    "C1": ("compose1", ("on", "on"), "on"),
    "V": ("vcomp", ("tw", "tw"), "tw"),
    "H": ("hcomp", ("tw", "tw"), "tw"),
    "I1": ("identity1", ("ob",), "on"),
    "I2": ("identity2", ("on",), "tw"),
    "A": ("associator", ("on", "on", "on"), "tw"),
    "L": ("left_unifier", ("on",), "tw"),
    "R": ("right_unifier", ("on",), "tw"),
    "INV": ("inverse2", ("tw",), "tw"),
}
_PATCHABLE = {table: (attr, kmaps, vmap) for attr, (table, kmaps, vmap) in _ARRAYS.items()}


class _Look:
    """Array lookups for a batch of axiom instances.  ``trace`` collects the
    flat keys every lookup reads; ``patch`` overrides one entry per instance
    (the batched form of a single-entry mutation)."""

    def __init__(self, T, trace=None, patch=None):
        self.T, self.trace, self.patch = T, trace, patch

    def __call__(self, attr, *idx):
        arr = getattr(self.T, attr)
        flat = np.ravel_multi_index(idx, arr.shape, mode="wrap")
        out = arr.ravel()[flat]
        if self.trace is not None:
            self.trace.setdefault(attr, []).append(flat)
        if self.patch is not None and self.patch[0] == attr:
            out = np.where(flat == self.patch[1], self.patch[2], out)
        return out


def _grid(*axes):
    return tuple(g.ravel() for g in np.meshgrid(*axes, indexing="ij"))


def _families(T, strict):
    """Every axiom of a 2-category as (instances, run, label).  Instances are
    enumerated from the typing arrays only, so a change to a composition
    table never changes which instances exist."""
    n0, n1, n2 = T.n
    N0, N1, N2 = T.names0, T.names1, T.names2
    s1, t1, s2, t2 = T.s1, T.t1, T.s2, T.t2
    r0, r1, r2 = np.arange(n0), np.arange(n1), np.arange(n2)
    fams = []

    def fam(inst, label):
        def deco(run):
            fams.append((inst, run, label))
            return run
        return deco

    # -- typing ---------------------------------------------------------
    @fam((r1,), lambda i: N1[i])
    def _(look, i):
        return [("typing:1-cell", (s1[i] < 0) | (t1[i] < 0), None, None, 0)]

    @fam((r2,), lambda i: N2[i])
    def _(look, i):
        return [("typing:2-cell", (s2[i] < 0) | (t2[i] < 0), None, None, 0),
                ("typing:2-cell-endpoints",
                 (s1[s2[i]] != s1[t2[i]]) | (t1[s2[i]] != t1[t2[i]]), None, None, 0)]

    @fam(_grid(r1, r1), lambda g, f: (N1[g], N1[f]))
    def _(look, g, f):
        want = t1[f] == s1[g]
        c = look("C1", g, f)
        have = c >= 0
        return [("typing:compose1", want != have, c, None, 1),
                ("typing:compose1-endpoints",
                 want & have & ((s1[c] != s1[f]) | (t1[c] != t1[g])), c, None, 1)]

    @fam(_grid(r2, r2), lambda b, a: (N2[b], N2[a]))
    def _(look, b, a):
        want = t2[a] == s2[b]
        c = look("V", b, a)
        have = c >= 0
        return [("typing:vcomp", want != have, c, None, 2),
                ("typing:vcomp-endpoints",
                 want & have & ((s2[c] != s2[a]) | (t2[c] != t2[b])), c, None, 2)]

    @fam(_grid(r2, r2), lambda b, a: (N2[b], N2[a]))
    def _(look, b, a):
        want = t1[s2[a]] == s1[s2[b]]
        c = look("H", b, a)
        have = c >= 0
        ends = (s2[c] != look("C1", s2[b], s2[a])) | (t2[c] != look("C1", t2[b], t2[a]))
        return [("typing:hcomp", want != have, c, None, 2),
                ("typing:hcomp-endpoints", want & have & ends, c, None, 2)]

    @fam((r0,), lambda x: N0[x])
    def _(look, x):
        e = look("I1", x)
        return [("typing:identity1", (e < 0) | (s1[e] != x) | (t1[e] != x), e, None, 1)]

    @fam((r1,), lambda f: N1[f])
    def _(look, f):
        e = look("I2", f)
        return [("typing:identity2", (e < 0) | (s2[e] != f) | (t2[e] != f), e, None, 2)]

    f3, g3, h3 = _grid(r1, r1, r1)
    keep = (t1[f3] == s1[g3]) & (t1[g3] == s1[h3])
    triples = (f3[keep], g3[keep], h3[keep])
    lab3 = lambda f, g, h: (N1[f], N1[g], N1[h])

    @fam(triples, lab3)
    def _(look, f, g, h):
        a = look("A", f, g, h)
        bad = ((a < 0) | (s2[a] != look("C1", look("C1", h, g), f))
               | (t2[a] != look("C1", h, look("C1", g, f))))
        return [("typing:associator", bad, a, None, 2)]

    @fam((r1,), lambda f: N1[f])
    def _(look, f):
        l, r = look("L", f), look("R", f)
        lb = (l < 0) | (s2[l] != look("C1", f, look("I1", s1[f]))) | (t2[l] != f)
        rb = (r < 0) | (s2[r] != look("C1", look("I1", t1[f]), f)) | (t2[r] != f)
        return [("typing:left_unifier", lb, l, None, 2),
                ("typing:right_unifier", rb, r, None, 2)]

    @fam((r2,), lambda a: N2[a])
    def _(look, a):
        i = look("INV", a)
        return [("typing:inverse2", (i >= 0) & ((s2[i] != t2[a]) | (t2[i] != s2[a])), i, None, 2)]

    if strict:
        def not_id(look, a):
            return (a >= 0) & (a != look("I2", s2[a]))

        @fam(triples, lab3)
        def _(look, f, g, h):
            a = look("A", f, g, h)
            return [("strict:associator", not_id(look, a), a, None, 2)]

        @fam((r1,), lambda f: N1[f])
        def _(look, f):
            l, r = look("L", f), look("R", f)
            return [("strict:left_unifier", not_id(look, l), l, None, 2),
                    ("strict:right_unifier", not_id(look, r), r, None, 2)]

    # -- (C1) -------------------------------------------------------------
    c, b, a = _grid(r2, r2, r2)
    keep = (t2[a] == s2[b]) & (t2[b] == s2[c])

    @fam((c[keep], b[keep], a[keep]), lambda c, b, a: (N2[c], N2[b], N2[a]))
    def _(look, c, b, a):
        lhs = look("V", look("V", c, b), a)
        rhs = look("V", c, look("V", b, a))
        return [("C1:vertical-associativity", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]

    a, b, c = _grid(r2, r2, r2)
    keep = (t1[s2[a]] == s1[s2[b]]) & (t1[s2[b]] == s1[s2[c]])

    @fam((a[keep], b[keep], c[keep]), lambda a, b, c: (N2[a], N2[b], N2[c]))
    def _(look, a, b, c):
        lhs = look("V", look("A", t2[a], t2[b], t2[c]), look("H", look("H", c, b), a))
        rhs = look("V", look("H", c, look("H", b, a)), look("A", s2[a], s2[b], s2[c]))
        return [("C1:associator-naturality", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]

    # -- (C2) -------------------------------------------------------------
    @fam((r2,), lambda a: N2[a])
    def _(look, a):
        lhs = look("V", look("I2", t2[a]), a)
        rhs = look("V", a, look("I2", s2[a]))
        return [("C2:left-identity", lhs != a, lhs, a, 2),
                ("C2:right-identity", rhs != a, rhs, a, 2)]

    f, g = _grid(r1, r1)
    keep = t1[f] == s1[g]
    pairs = (f[keep], g[keep])

    @fam(pairs, lambda f, g: (N1[f], N1[g]))
    def _(look, f, g):
        lhs = look("V", look("H", look("I2", g), look("R", f)), look("A", f, look("I1", t1[f]), g))
        rhs = look("H", look("L", g), look("I2", f))
        return [("C2:triangle", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]

    @fam(pairs, lambda f, g: (N1[g], N1[f]))
    def _(look, f, g):
        lhs = look("H", look("I2", g), look("I2", f))
        rhs = look("I2", look("C1", g, f))
        return [("C2:identity-hcomp", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]

    # -- (C3) -------------------------------------------------------------
    b, a = _grid(r2, r2)
    keep = t2[a] == s2[b]
    pb, pa = b[keep], a[keep]
    i, j = _grid(np.arange(len(pb)), np.arange(len(pb)))
    keep = t1[s2[pb[j]]] == s1[s2[pb[i]]]
    i, j = i[keep], j[keep]

    @fam((pb[i], pa[i], pb[j], pa[j]), lambda b1, b2, a1, a2: (N2[b1], N2[b2], N2[a1], N2[a2]))
    def _(look, b1, b2, a1, a2):
        lhs = look("H", look("V", b1, b2), look("V", a1, a2))
        rhs = look("V", look("H", b1, a1), look("H", b2, a2))
        return [("C3:interchange", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]

    # -- (C4) -------------------------------------------------------------
    def invertible(look, x):
        i = look("INV", x)
        missing = i < 0
        left = look("V", i, x)
        right = look("V", x, i)
        u_s, u_t = look("I2", s2[x]), look("I2", t2[x])
        return [("C4:invertible", missing, x, None, 2),
                ("C4:invertible", ~missing & ((left != u_s) | (left < 0) | (u_s < 0)), left, u_s, 2),
                ("C4:invertible", ~missing & ((right != u_t) | (right < 0) | (u_t < 0)), right, u_t, 2)]

    @fam((r1,), lambda f: ("left_unifier", N1[f]))
    def _(look, f):
        return invertible(look, look("L", f))

    @fam((r1,), lambda f: ("right_unifier", N1[f]))
    def _(look, f):
        return invertible(look, look("R", f))

    @fam(triples, lambda f, g, h: ("associator", lab3(f, g, h)))
    def _(look, f, g, h):
        return invertible(look, look("A", f, g, h))

    @fam((r2,), lambda a: N2[a])
    def _(look, a):
        i = look("INV", a)
        has = i >= 0
        left, right = look("V", i, a), look("V", a, i)
        u_s, u_t = look("I2", s2[a]), look("I2", t2[a])
        return [("C4:stored-inverse", has & ((left != u_s) | (left < 0)), left, u_s, 2),
                ("C4:stored-inverse", has & ((right != u_t) | (right < 0)), right, u_t, 2)]

    @fam((r2,), lambda a: N2[a])
    def _(look, a):
        f, f2 = s2[a], t2[a]
        lhs = look("V", look("L", f2), look("H", a, look("I2", look("I1", s1[f]))))
        rhs = look("V", a, look("L", f))
        out = [("C4:left-unifier-naturality", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]
        lhs = look("V", look("R", f2), look("H", look("I2", look("I1", t1[f])), a))
        rhs = look("V", a, look("R", f))
        out.append(("C4:right-unifier-naturality", (lhs != rhs) | (lhs < 0), lhs, rhs, 2))
        return out

    f, g, h, k = _grid(r1, r1, r1, r1)
    keep = (t1[f] == s1[g]) & (t1[g] == s1[h]) & (t1[h] == s1[k])

    @fam((f[keep], g[keep], h[keep], k[keep]),
         lambda f, g, h, k: (N1[f], N1[g], N1[h], N1[k]))
    def _(look, f, g, h, k):
        step1 = look("H", look("A", g, h, k), look("I2", f))
        step2 = look("A", f, look("C1", h, g), k)
        step3 = look("H", look("I2", k), look("A", f, g, h))
        lhs = look("V", step3, look("V", step2, step1))
        rhs = look("V", look("A", look("C1", g, f), h, k), look("A", f, g, look("C1", k, h)))
        return [("C4:pentagon", (lhs != rhs) | (lhs < 0), lhs, rhs, 2)]

    return fams


def _name(T, level, x):
    if level == 0 or x is None:
        return None
    x = int(x)
    if x < 0:
        return None
    return (T.names1 if level == 1 else T.names2)[x]


def _emit(rep, T, kind, bad, lhs, rhs, level, inst, label, rows=None):
    """Append the violations flagged in ``bad``.  ``rows`` maps positions in
    the batch back to instance indices (identity when omitted)."""
    for k in np.nonzero(bad)[0]:
        row = k if rows is None else rows[k]
        at = label(*(int(x[row]) for x in inst))
        rep.add(kind, at,
                _name(T, level, None if lhs is None else lhs[k]),
                _name(T, level, None if rhs is None else rhs[k]))


def _bad_value_report(bad_values):
    rep = Report()
    for table, key, val in bad_values:
        rep.add(f"typing:{table}", key, val)
    return rep


def _check_table_vectorised(C):
    T = C._arrays
    rep = _bad_value_report(T.bad_values)
    for inst, run, label in _families(T, C.strict):
        look = _Look(T)
        for kind, bad, lhs, rhs, level in run(look, *inst):
            _emit(rep, T, kind, bad, lhs, rhs, level, inst, label)
    return rep


class MutationSweep:
    """Exact reports for many single-entry mutations of one table.

    An axiom instance that never reads the mutated entry evaluates exactly as
    before (every lookup it makes is unchanged), so only the instances that
    read the entry are re-evaluated, all mutations in one batch.
    ``report(m)`` equals ``check_two_category`` of the mutated table,
    violation for violation and in the same order."""

    def __init__(self, C, table, mutations):
        if not isinstance(C, TwoCategoryTable) or table not in _PATCHABLE:
            raise CapabilityError(f"cannot sweep mutations of {table!r}")
        self.C, self.table = C, table
        self.mutations = list(mutations)
        T = self.T = C._arrays
        attr, kmaps, vmap = _PATCHABLE[table]
        self.attr = attr
        arr = getattr(T, attr)
        kmaps = tuple(getattr(T, km) for km in kmaps)
        vmap = getattr(T, vmap)
        M = len(self.mutations)
        if len(kmaps) == 1:
            cols = [[kmaps[0][key] for key, _ in self.mutations]]
        else:
            cols = [[km[key[n]] for key, _ in self.mutations] for n, km in enumerate(kmaps)]
        self.mkey = np.ravel_multi_index(tuple(np.array(c, dtype=np.int64).reshape(M) for c in cols),
                                         arr.shape)
        self.mval = np.array([vmap.get(v, -1) for _, v in self.mutations], dtype=np.int64).reshape(M)
        self.counts = np.zeros(M, dtype=np.int64)
        self.counts += (self.mval < 0)      # unknown value: one typing violation
        self.counts += len(T.bad_values)
        self.fams = []
        ukey, kinv = np.unique(self.mkey, return_inverse=True)
        kinv = kinv.reshape(M)
        for inst, run, label in _families(T, C.strict):
            trace = {}
            base = run(_Look(T, trace=trace), *inst)
            ninst = len(inst[0])
            sites = trace.get(attr, [])
            if not sites or ninst == 0:
                self.fams.append((inst, label, base, None))
                for chk in base:
                    self.counts += int(np.count_nonzero(chk[1]))
                continue
            flat = np.concatenate(sites)
            ids = np.tile(np.arange(ninst), len(sites))
            order = np.argsort(flat, kind="stable")
            flat, ids = flat[order], ids[order]
            # instances reading each distinct key, then one copy per mutation
            lo = np.searchsorted(flat, ukey, "left")
            cnt = np.searchsorted(flat, ukey, "right") - lo
            code = np.unique(_spread(cnt, lo, ids, ninst))
            kid, krows = code // ninst, code % ninst
            kcnt = np.bincount(kid, minlength=len(ukey))
            kstart = np.cumsum(kcnt) - kcnt
            cnt = kcnt[kinv]
            mid = np.repeat(np.arange(M), cnt)
            rows = krows[_positions(cnt, kstart[kinv])]
            sub = tuple(x[rows] for x in inst)
            new = run(_Look(T, patch=(attr, self.mkey[mid], self.mval[mid])), *sub)
            for (kind, bad0, *_), (_, bad1, *_) in zip(base, new):
                self.counts += int(np.count_nonzero(bad0))
                self.counts -= np.bincount(mid, weights=bad0[rows], minlength=M).astype(np.int64)
                self.counts += np.bincount(mid, weights=bad1, minlength=M).astype(np.int64)
            self.fams.append((inst, label, base, (mid, rows, new)))

    def __len__(self):
        return len(self.mutations)

    def detected(self):
        return self.counts > 0

    def report(self, m):
        T = self.T
        key, value = self.mutations[m]
        bad_values = list(T.bad_values)
        if self.mval[m] < 0:
            bad_values.append((self.table, key, value))
        rep = _bad_value_report(bad_values)
        for inst, label, base, delta in self.fams:
            if delta is None:
                for kind, bad, lhs, rhs, level in base:
                    _emit(rep, T, kind, bad, lhs, rhs, level, inst, label)
                continue
            mid, rows, new = delta
            sel = mid == m
            touched = rows[sel]
            for (kind, bad0, lhs0, rhs0, level), (_, bad1, lhs1, rhs1, _) in zip(base, new):
                hits = []
                keep = bad0.copy()
                keep[touched] = False
                for r in np.nonzero(keep)[0]:
                    hits.append((r, None if lhs0 is None else lhs0[r], None if rhs0 is None else rhs0[r]))
                b1 = bad1[sel]
                l1 = None if lhs1 is None else lhs1[sel]
                r1 = None if rhs1 is None else rhs1[sel]
                for q in np.nonzero(b1)[0]:
                    hits.append((touched[q], None if l1 is None else l1[q], None if r1 is None else r1[q]))
                hits.sort(key=lambda h: h[0])
                for r, lv, rv in hits:
                    rep.add(kind, label(*(int(x[r]) for x in inst)),
                            _name(T, level, lv), _name(T, level, rv))
        return rep


def _positions(cnt, start):
    """Concatenated ranges start[i] .. start[i] + cnt[i]."""
    return np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt) + np.repeat(start, cnt)


def _spread(cnt, lo, ids, ninst):
    """Codes group * ninst + instance for the sorted sites of every group."""
    return np.repeat(np.arange(len(cnt)), cnt) * ninst + ids[_positions(cnt, lo)]


def mutation_sweep(C, table, mutations):
    """Batched exact reports for single-entry mutations ``(key, value)`` of
    ``table``; see MutationSweep."""
    return MutationSweep(C, table, mutations)


def _nm(names, i):
    i = int(i)
    return names[i] if i >= 0 else None


def _strict_report(C):
    rep = Report()
    for key, a in C.associator.items():
        if not C.is_identity2(a):
            rep.add("strict:associator", key, a)
    for f, a in C.left_unifier.items():
        if not C.is_identity2(a):
            rep.add("strict:left_unifier", f, a)
    for f, a in C.right_unifier.items():
        if not C.is_identity2(a):
            rep.add("strict:right_unifier", f, a)
    return rep


# ---------------------------------------------------------------------------
# generic loop checker (second route; works on any protocol object)

def _composable_pairs(C, ones):
    by_src = {}
    for f in ones:
        by_src.setdefault(C.src1(f), []).append(f)
    for f in ones:
        for g in by_src.get(C.tgt1(f), ()):
            yield f, g


def check_two_category_generic(C, ones=None, twos=None):
    """Loop-based check of (C1)–(C4) over the cells C enumerates (or over the
    given lists).  Composites may leave the window; they are compared with
    C.eq2."""
    ones = list(C.cells1() if ones is None else ones)
    twos = list(C.cells2() if twos is None else twos)
    rep = Report()
    eq = C.eq2
    V, Hc = C.vert, C.horiz

    def v(*xs):  # right-nested vertical composite, first argument applied last
        out = xs[-1]
        for x in reversed(xs[:-1]):
            out = V(x, out) if _nn(x, out) else None
        return out

    def hz(b, a):
        return Hc(b, a) if _nn(b, a) else None

    vin = {}
    for a in twos:
        vin.setdefault(C.src2(a), []).append(a)
    vpairs = [(b, a) for a in twos for b in vin.get(C.tgt2(a), ())]

    # (C1)
    for b, a in vpairs:
        for c in vin.get(C.tgt2(b), ()):
            rep.expect("C1:vertical-associativity", (c, b, a), v(v(c, b), a), v(c, v(b, a)), eq)
    src_obj = {}
    for a in twos:
        src_obj.setdefault(C.src1(C.src2(a)), []).append(a)
    for a in twos:
        for b in src_obj.get(C.tgt1(C.src2(a)), ()):
            for c in src_obj.get(C.tgt1(C.src2(b)), ()):
                at_t = C.assoc(C.tgt2(a), C.tgt2(b), C.tgt2(c))
                at_s = C.assoc(C.src2(a), C.src2(b), C.src2(c))
                rep.expect("C1:associator-naturality", (a, b, c),
                           v(at_t, hz(hz(c, b), a)), v(hz(c, hz(b, a)), at_s), eq)
    # (C2)
    for a in twos:
        rep.expect("C2:left-identity", a, v(C.unit2(C.tgt2(a)), a), a, eq)
        rep.expect("C2:right-identity", a, v(a, C.unit2(C.src2(a))), a, eq)
    for f, g in _composable_pairs(C, ones):
        idy = C.unit1(C.tgt1(f))
        rep.expect("C2:triangle", (f, g),
                   v(hz(C.unit2(g), C.runit(f)), C.assoc(f, idy, g)),
                   hz(C.lunit(g), C.unit2(f)), eq)
        rep.expect("C2:identity-hcomp", (g, f), hz(C.unit2(g), C.unit2(f)),
                   C.unit2(C.comp(g, f)), eq)
    # (C3)
    for b1, b2 in vpairs:
        for a1, a2 in vpairs:
            if C.tgt1(C.src2(a1)) != C.src1(C.src2(b1)):
                continue
            rep.expect("C3:interchange", (b1, b2, a1, a2), hz(v(b1, b2), v(a1, a2)),
                       v(hz(b1, a1), hz(b2, a2)), eq)
    # (C4)
    def invertible(kind, at, x):
        i = C.inv2(x) if x is not None else None
        if i is None:
            rep.add("C4:invertible", (kind, at), x, None)
            return
        rep.expect("C4:invertible", (kind, at), v(i, x), C.unit2(C.src2(x)), eq)
        rep.expect("C4:invertible", (kind, at), v(x, i), C.unit2(C.tgt2(x)), eq)

    for f in ones:
        invertible("left_unifier", f, C.lunit(f))
        invertible("right_unifier", f, C.runit(f))
    for f, g in _composable_pairs(C, ones):
        for h in ones:
            if C.src1(h) == C.tgt1(g):
                invertible("associator", (f, g, h), C.assoc(f, g, h))
    for a in twos:
        i = C.inv2(a)
        if i is not None:
            rep.expect("C4:stored-inverse", a, v(i, a), C.unit2(C.src2(a)), eq)
            rep.expect("C4:stored-inverse", a, v(a, i), C.unit2(C.tgt2(a)), eq)
    for a in twos:
        f, f2 = C.src2(a), C.tgt2(a)
        rep.expect("C4:left-unifier-naturality", a,
                   v(C.lunit(f2), hz(a, C.unit2(C.unit1(C.src1(f))))), v(a, C.lunit(f)), eq)
        rep.expect("C4:right-unifier-naturality", a,
                   v(C.runit(f2), hz(C.unit2(C.unit1(C.tgt1(f))), a)), v(a, C.runit(f)), eq)
    for f, g in _composable_pairs(C, ones):
        for h in ones:
            if C.src1(h) != C.tgt1(g):
                continue
            for k in ones:
                if C.src1(k) != C.tgt1(h):
                    continue
                hg, kh, gf = C.comp(h, g), C.comp(k, h), C.comp(g, f)
                lhs = v(hz(C.unit2(k), C.assoc(f, g, h)), C.assoc(f, hg, k),
                        hz(C.assoc(g, h, k), C.unit2(f)))
                rhs = v(C.assoc(gf, h, k), C.assoc(f, g, kh))
                rep.expect("C4:pentagon", (f, g, h, k), lhs, rhs, eq)
    return rep


def check_two_category(C, method="auto"):
    """Exhaustive check of (C1)–(C4).  Tables use the vectorised route by
    default; anything else goes through the generic loop."""
    if method == "loop" or not isinstance(C, TwoCategoryTable):
        rep = check_two_category_generic(C)
        if isinstance(C, TwoCategoryTable) and C.strict:
            rep.extend(_strict_report(C))
        return rep
    return _check_table_vectorised(C)


# ---------------------------------------------------------------------------
# terms

def evaluate_term(C, term):
    """Fold a formal composite through C's tables.

    Terms are cell names or tuples ``(op, *args)`` with op one of
    comp, vcomp, hcomp, id1, id2, assoc, lunit, runit, inv, cell1, cell2.
    Bracketing is taken literally; no coherence cells are inserted.
    """
    level, val = _eval(C, term, ())
    return val


def _eval(C, term, path):
    def sub(i, t):
        return _eval(C, t, path + (i,))

    def fail(msg):
        raise TypingError(f"ill-typed node at {list(path)}: {msg} in {term!r}")

    if isinstance(term, tuple) and term and isinstance(term[0], str) and term[0] in _OPS:
        op, args = term[0], term[1:]
        if op == "cell1":
            if args[0] not in C.one_cells:
                fail("unknown 1-cell")
            return 1, args[0]
        if op == "cell2":
            if args[0] not in C.two_cells:
                fail("unknown 2-cell")
            return 2, args[0]
        if op == "id1":
            return 1, C.unit1(args[0])
        vals = [sub(i, t) for i, t in enumerate(args)]
        lv = [l for l, _ in vals]
        xs = [x for _, x in vals]
        if op == "comp":
            if lv != [1, 1] or C.tgt1(xs[1]) != C.src1(xs[0]):
                fail("1-cells not composable")
            return 1, C.comp(*xs)
        if op == "vcomp":
            if lv != [2, 2] or C.tgt2(xs[1]) != C.src2(xs[0]):
                fail("2-cells not vertically composable")
            return 2, C.vert(*xs)
        if op == "hcomp":
            if lv != [2, 2] or C.tgt1(C.src2(xs[1])) != C.src1(C.src2(xs[0])):
                fail("2-cells not horizontally composable")
            return 2, C.horiz(*xs)
        if op == "id2":
            if lv != [1]:
                fail("id2 needs a 1-cell")
            return 2, C.unit2(xs[0])
        if op == "assoc":
            if lv != [1, 1, 1] or C.tgt1(xs[0]) != C.src1(xs[1]) or C.tgt1(xs[1]) != C.src1(xs[2]):
                fail("associator arguments not composable")
            return 2, C.assoc(*xs)
        if op in ("lunit", "runit"):
            if lv != [1]:
                fail(f"{op} needs a 1-cell")
            return 2, (C.lunit if op == "lunit" else C.runit)(xs[0])
        if op == "inv":
            if lv != [2]:
                fail("inv needs a 2-cell")
            r = C.inv2(xs[0])
            if r is None:
                fail("no stored inverse")
            return 2, r
    if isinstance(term, str) or not isinstance(term, tuple):
        in1 = term in C.one_cells
        in2 = term in C.two_cells
        if in1 and in2:
            fail("ambiguous cell name; wrap in cell1/cell2")
        if in2:
            return 2, term
        if in1:
            return 1, term
        fail("unknown cell")
    fail("malformed term")


_OPS = {"comp", "vcomp", "hcomp", "id1", "id2", "assoc", "lunit", "runit", "inv", "cell1", "cell2"}


# ---------------------------------------------------------------------------
# functors, transformations, modifications

class TwoFunctor:
    """A 2-functor given by callables.  ``comp(f, g)`` is the compositor
    c_{f,g}: F(g)∘F(f) ⇒ F(g∘f) and ``unit(X)`` the unitor
    u_X: F(id_X) ⇒ id_{F(X)}.  Missing compositor/unitor mean identities."""

    def __init__(self, source, target, obj, one, two, comp=None, unit=None, name="F"):
        self.source, self.target = source, target
        self._obj, self._one, self._two = obj, one, two
        self._comp, self._unit = comp, unit
        self.name = name

    def obj(self, x):
        return self._obj(x)

    def one(self, f):
        return self._one(f)

    def two(self, a):
        return self._two(a)

    def comp(self, f, g):
        if self._comp is not None:
            return self._comp(f, g)
        T = self.target
        return T.unit2(T.comp(self.one(g), self.one(f)))

    def unit(self, x):
        if self._unit is not None:
            return self._unit(x)
        T = self.target
        return T.unit2(T.unit1(self.obj(x)))


class TwoFunctorData(TwoFunctor):
    """A 2-functor between finite 2-categories given by explicit tables."""

    def __init__(self, source, target, map0, map1, map2, compositor=None, unitor=None, name="F"):
        self.map0, self.map1, self.map2 = dict(map0), dict(map1), dict(map2)
        self.compositor = None if compositor is None else dict(compositor)
        self.unitor = None if unitor is None else dict(unitor)
        super().__init__(
            source, target, self.map0.get, self.map1.get, self.map2.get,
            None if compositor is None else (lambda f, g: self.compositor.get((f, g))),
            None if unitor is None else self.unitor.get, name)


def identity_functor(C):
    ident = lambda x: x
    return TwoFunctor(C, C, ident, ident, ident, name="id")


class PseudoNat:
    """ρ: F1 → F2 with ρ(X) = at0(X) and ρ(f): ρ(Y)∘F1(f) ⇒ F2(f)∘ρ(X)."""

    def __init__(self, source, target, at0, at1, name="rho"):
        self.source, self.target = source, target
        self._at0, self._at1 = at0, at1
        self.name = name

    def at0(self, x):
        return self._at0(x)

    def at1(self, f):
        return self._at1(f)


class PseudoNatData(PseudoNat):
    def __init__(self, source, target, comp0, comp1, name="rho"):
        self.comp0, self.comp1 = dict(comp0), dict(comp1)
        super().__init__(source, target, self.comp0.get, self.comp1.get, name)


class Modification:
    """A: ρ1 ⇒ ρ2 with components A(X): ρ1(X) ⇒ ρ2(X)."""

    def __init__(self, source, target, at, name="A"):
        self.source, self.target = source, target
        self._at = at
        self.name = name

    def at(self, x):
        return self._at(x)


class ModificationData(Modification):
    def __init__(self, source, target, comp, name="A"):
        self.comp = dict(comp)
        super().__init__(source, target, self.comp.get, name)


@dataclass
class EquivalenceBundle:
    """forward t, inverse t̄, i: t̄∘t ⇒ id and j: id ⇒ t∘t̄.

    Either all four are cells of a single 2-category ``category`` or they
    are transformations/modifications (``category`` None), in which case the
    zigzags are checked componentwise."""
    forward: object
    inverse: object
    i_t: object
    j_t: object
    category: object = None


def _vchain(T, *xs):
    """x1 • x2 • ... • xn (xn applied first)."""
    out = xs[-1]
    for x in reversed(xs[:-1]):
        if out is None or x is None:
            return None
        out = T.vert(x, out)
    return out


def _h(T, b, a):
    return T.horiz(b, a) if _nn(b, a) else None


def _inv(T, a):
    return T.inv2(a) if a is not None else None


def _typ2(T, a):
    return (T.src2(a), T.tgt2(a))


def _window(S):
    return list(S.cells0()), list(S.cells1()), list(S.cells2())


def check_two_functor(F, S=None, T=None, typing=True):
    S = F.source if S is None else S
    T = F.target if T is None else T
    objs, ones, twos = _window(S)
    rep = Report()
    eq = T.eq2
    if typing:
        for f in ones:
            Ff = F.one(f)
            if Ff is None or not (T.src1(Ff) == F.obj(S.src1(f)) and T.tgt1(Ff) == F.obj(S.tgt1(f))):
                raise TypingError(f"{F.name}: image of 1-cell {fmt(f)} has wrong endpoints")
        for a in twos:
            Fa = F.two(a)
            if Fa is None or not (T.eq1(T.src2(Fa), F.one(S.src2(a))) and T.eq1(T.tgt2(Fa), F.one(S.tgt2(a)))):
                raise TypingError(f"{F.name}: image of 2-cell {fmt(a)} has wrong endpoints")
    # (F1)
    vin = {}
    for a in twos:
        vin.setdefault(S.src2(a), []).append(a)
    for a in twos:
        for b in vin.get(S.tgt2(a), ()):
            rep.expect("F1:vertical", (b, a), F.two(S.vert(b, a)), T.vert(F.two(b), F.two(a)), eq)
    for f in ones:
        rep.expect("F1:identity", f, F.two(S.unit2(f)), T.unit2(F.one(f)), eq)
    # (F2)
    by_src = {}
    for a in twos:
        by_src.setdefault(S.src1(S.src2(a)), []).append(a)
    for a in twos:
        for b in by_src.get(S.tgt1(S.src2(a)), ()):
            f, f2, g, g2 = S.src2(a), S.tgt2(a), S.src2(b), S.tgt2(b)
            lhs = _vchain(T, F.comp(f2, g2), _h(T, F.two(b), F.two(a)))
            rhs = _vchain(T, F.two(S.horiz(b, a)), F.comp(f, g))
            rep.expect("F2:compositor-naturality", (a, b), lhs, rhs, eq)
    # (F3)
    for f, g in _composable_pairs(S, ones):
        for h in ones:
            if S.src1(h) != S.tgt1(g):
                continue
            Ff, Fg, Fh = F.one(f), F.one(g), F.one(h)
            lhs = _vchain(T, F.two(S.assoc(f, g, h)), F.comp(f, S.comp(h, g)),
                          _h(T, F.comp(g, h), T.unit2(Ff)))
            rhs = _vchain(T, F.comp(S.comp(g, f), h), _h(T, T.unit2(Fh), F.comp(f, g)),
                          T.assoc(Ff, Fg, Fh))
            rep.expect("F3:associator", (f, g, h), lhs, rhs, eq)
    # (F4)
    for f in ones:
        X, Y = S.src1(f), S.tgt1(f)
        Ff = F.one(f)
        lhs = _vchain(T, F.two(S.lunit(f)), F.comp(S.unit1(X), f))
        rhs = _vchain(T, T.lunit(Ff), _h(T, T.unit2(Ff), F.unit(X)))
        rep.expect("F4:left", f, lhs, rhs, eq)
        lhs = _vchain(T, F.two(S.runit(f)), F.comp(f, S.unit1(Y)))
        rhs = _vchain(T, T.runit(Ff), _h(T, F.unit(Y), T.unit2(Ff)))
        rep.expect("F4:right", f, lhs, rhs, eq)
    # invertibility of coherence data
    for x in objs:
        u = F.unit(x)
        if u is None or T.inv2(u) is None:
            rep.add("F:unitor-invertible", x, u)
    for f, g in _composable_pairs(S, ones):
        c = F.comp(f, g)
        if c is None or T.inv2(c) is None:
            rep.add("F:compositor-invertible", (f, g), c)
    return rep


def check_pseudonatural(rho, F1=None, F2=None, pairs=True, typing=True):
    """(T1) on composable 1-cell pairs of the source window, (T2) on its
    2-cells, the unit-compatibility diagram, and invertibility of ρ(f)."""
    F1 = rho.source if F1 is None else F1
    F2 = rho.target if F2 is None else F2
    S, T = F1.source, F1.target
    objs, ones, twos = _window(S)
    rep = Report()
    eq = T.eq2
    if typing:
        for x in objs:
            r = rho.at0(x)
            if r is None or T.src1(r) != F1.obj(x) or T.tgt1(r) != F2.obj(x):
                raise TypingError(f"{rho.name}: component at {fmt(x)} has wrong endpoints")
        for f in ones:
            r = rho.at1(f)
            X, Y = S.src1(f), S.tgt1(f)
            want = (T.comp(rho.at0(Y), F1.one(f)), T.comp(F2.one(f), rho.at0(X)))
            got = None if r is None else _typ2(T, r)
            if got is None or not (T.eq1(got[0], want[0]) and T.eq1(got[1], want[1])):
                raise TypingError(f"{rho.name}: component at 1-cell {fmt(f)} has wrong endpoints")
    for f in ones:
        r = rho.at1(f)
        if r is None or T.inv2(r) is None:
            rep.add("T:invertible", f, r)
    if pairs:
        for f, g in _composable_pairs(S, ones):
            X, Y, Z = S.src1(f), S.tgt1(f), S.tgt1(g)
            rX, rY, rZ = rho.at0(X), rho.at0(Y), rho.at0(Z)
            F1f, F1g, F2f, F2g = F1.one(f), F1.one(g), F2.one(f), F2.one(g)
            lhs = _vchain(T, _inv(T, T.assoc(rX, F2f, F2g)), _h(T, T.unit2(F2g), rho.at1(f)),
                          T.assoc(F1f, rY, F2g), _h(T, rho.at1(g), T.unit2(F1f)))
            rhs = _vchain(T, _h(T, _inv(T, F2.comp(f, g)), T.unit2(rX)), rho.at1(S.comp(g, f)),
                          _h(T, T.unit2(rZ), F1.comp(f, g)), T.assoc(F1f, F1g, rZ))
            rep.expect("T1", (f, g), lhs, rhs, eq)
    for a in twos:
        f, g = S.src2(a), S.tgt2(a)
        X, Y = S.src1(f), S.tgt1(f)
        lhs = _vchain(T, _h(T, F2.two(a), T.unit2(rho.at0(X))), rho.at1(f))
        rhs = _vchain(T, rho.at1(g), _h(T, T.unit2(rho.at0(Y)), F1.two(a)))
        rep.expect("T2", a, lhs, rhs, eq)
    for x in objs:
        rX = rho.at0(x)
        lhs = _vchain(T, _h(T, F2.unit(x), T.unit2(rX)), rho.at1(S.unit1(x)))
        rhs = _vchain(T, _inv(T, T.runit(rX)), T.lunit(rX), _h(T, T.unit2(rX), F1.unit(x)))
        rep.expect("T:unit", x, lhs, rhs, eq)
    return rep


def check_modification(A, rho1=None, rho2=None, typing=True):
    rho1 = A.source if rho1 is None else rho1
    rho2 = A.target if rho2 is None else rho2
    F1, F2 = rho1.source, rho1.target
    S, T = F1.source, F1.target
    objs, ones, _ = _window(S)
    rep = Report()
    if typing:
        for x in objs:
            a = A.at(x)
            if a is None or not (T.eq1(T.src2(a), rho1.at0(x)) and T.eq1(T.tgt2(a), rho2.at0(x))):
                raise TypingError(f"{A.name}: component at {fmt(x)} has wrong endpoints")
    for f in ones:
        X, Y = S.src1(f), S.tgt1(f)
        lhs = _vchain(T, _h(T, T.unit2(F2.one(f)), A.at(X)), rho1.at1(f))
        rhs = _vchain(T, rho2.at1(f), _h(T, A.at(Y), T.unit2(F1.one(f))))
        rep.expect("M", f, lhs, rhs, T.eq2)
    return rep


def zigzag_report(C, f, g, i, j, at=None):
    """Both zigzag identities for (f, g, i: g∘f ⇒ id, j: id ⇒ f∘g) in C."""
    rep = Report()
    jinv = _inv(C, j)
    lhs = _vchain(C, C.runit(f), _h(C, jinv, C.unit2(f)))
    rhs = _vchain(C, C.lunit(f), _h(C, C.unit2(f), i), C.assoc(f, g, f))
    rep.expect("zigzag:1", at if at is not None else f, lhs, rhs, C.eq2)
    lhs = _vchain(C, C.runit(g), _h(C, i, C.unit2(g)))
    rhs = _vchain(C, C.lunit(g), _h(C, C.unit2(g), jinv), C.assoc(g, f, g))
    rep.expect("zigzag:2", at if at is not None else g, lhs, rhs, C.eq2)
    for name, x in (("i", i), ("j", j)):
        if x is None or C.inv2(x) is None:
            rep.add("zigzag:invertible", (name, at), x)
    return rep


def weak_inverse1(T, f):
    """A weak inverse of the 1-cell f of a finite table: a stored strict
    inverse, else some g with invertible 2-cells g∘f ⇒ id and f∘g ⇒ id.
    None if there is none."""
    g = T.inv1(f)
    if g is not None:
        return g
    x, y = T.src1(f), T.tgt1(f)
    iso = lambda u, v: any(T.inv2(a) is not None for a in T.hom2(u, v))
    for g in T.cells1():
        if T.src1(g) == y and T.tgt1(g) == x \
                and iso(T.comp(g, f), T.unit1(x)) and iso(T.comp(f, g), T.unit1(y)):
            return g
    return None


def check_weak_inverse(f, bundle):
    """True iff both zigzag diagrams commute.  For a bundle of
    transformations the zigzags are checked at every source object."""
    return not weak_inverse_report(f, bundle)


def weak_inverse_report(f, bundle):
    if bundle.category is not None:
        return zigzag_report(bundle.category, f, bundle.inverse, bundle.i_t, bundle.j_t)
    rho = bundle.forward if f is None else f
    S, T = rho.source.source, rho.source.target
    rep = Report()
    for x in S.cells0():
        rep.extend(zigzag_report(T, rho.at0(x), bundle.inverse.at0(x),
                                 bundle.i_t.at(x), bundle.j_t.at(x), at=x))
    return rep


def check_normalized_two_functor(F):
    S, T = F.source, F.target
    for x in S.cells0():
        Fid = F.one(S.unit1(x))
        if not T.eq1(Fid, T.unit1(F.obj(x))):
            return False
        if not T.eq2(F.unit(x), T.unit2(Fid)):
            return False
    for f, g in _composable_pairs(S, list(S.cells1())):
        gf = S.comp(g, f)
        if S.eq1(gf, S.unit1(S.src1(f))):
            FgFf = T.comp(F.one(g), F.one(f))
            if not T.eq1(FgFf, T.unit1(F.obj(S.src1(f)))):
                return False
            if not T.eq2(F.comp(f, g), T.unit2(FgFf)):
                return False
    return True


# ---------------------------------------------------------------------------
# the 2-category of 2-functors

def identity_transformation(F):
    T = F.target
    return PseudoNat(F, F, lambda x: T.unit1(F.obj(x)),
                     lambda f: _vchain(T, _inv(T, T.lunit(F.one(f))), T.runit(F.one(f))),
                     name=f"id_{F.name}")


def compose_transformations(rho1, rho2):
    """ρ2∘ρ1 with the standard component formula (associators included)."""
    F1, F3 = rho1.source, rho2.target
    T = F1.target
    S = F1.source

    def at0(x):
        return T.comp(rho2.at0(x), rho1.at0(x))

    def at1(f):
        X, Y = S.src1(f), S.tgt1(f)
        r1X, r1Y, r2X, r2Y = rho1.at0(X), rho1.at0(Y), rho2.at0(X), rho2.at0(Y)
        F1f, F2f, F3f = F1.one(f), rho1.target.one(f), F3.one(f)
        return _vchain(T,
                       T.assoc(r1X, r2X, F3f),
                       _h(T, rho2.at1(f), T.unit2(r1X)),
                       _inv(T, T.assoc(r1X, F2f, r2Y)),
                       _h(T, T.unit2(r2Y), rho1.at1(f)),
                       T.assoc(F1f, r1Y, r2Y))
    return PseudoNat(F1, F3, at0, at1, name=f"{rho2.name}∘{rho1.name}")


def identity_modification(rho):
    T = rho.source.target
    return Modification(rho, rho, lambda x: T.unit2(rho.at0(x)), name=f"id_{rho.name}")


def vcomp_modifications(B, A):
    T = A.source.source.target
    return Modification(A.source, B.target, lambda x: T.vert(B.at(x), A.at(x)),
                        name=f"{B.name}•{A.name}")


def hcomp_modifications(B, A):
    """B∘A for A: ρ1 ⇒ ρ1', B: ρ2 ⇒ ρ2' with ρ2 after ρ1."""
    T = A.source.source.target
    return Modification(compose_transformations(A.source, B.source),
                        compose_transformations(A.target, B.target),
                        lambda x: T.horiz(B.at(x), A.at(x)), name=f"{B.name}∘{A.name}")


def pull_back(rho, G):
    """Precompose a transformation (or modification) with a strict functor G."""
    if isinstance(rho, Modification):
        lift = lambda r: None if r is None else pull_back(r, G)
        return Modification(lift(rho.source), lift(rho.target),
                            lambda x: rho.at(G.obj(x)), name=rho.name)
    return PseudoNat(precompose(rho.source, G), precompose(rho.target, G),
                     lambda x: rho.at0(G.obj(x)), lambda f: rho.at1(G.one(f)), name=rho.name)


def precompose(F, G):
    """F∘G for a strict G (compositors of G are identities)."""
    return TwoFunctor(G.source, F.target, lambda x: F.obj(G.obj(x)),
                      lambda f: F.one(G.one(f)), lambda a: F.two(G.two(a)),
                      lambda f, g: F.comp(G.one(f), G.one(g)),
                      lambda x: F.unit(G.obj(x)), name=f"{F.name}∘{G.name}")


class FunctorCategory:
    """Funct(S, T) over given finite lists of functors, transformations and
    modifications (the window).  Equality is componentwise over S's window.
    """

    def __init__(self, S, T, functors, transformations=(), modifications=()):
        self.S, self.T = S, T
        self.strict = getattr(T, "strict", False)
        self._objs = list(functors)
        self._ones = list(transformations)
        self._twos = list(modifications)

    def cells0(self):
        return self._objs

    def cells1(self):
        return self._ones

    def cells2(self):
        return self._twos

    def src1(self, r):
        return r.source

    def tgt1(self, r):
        return r.target

    def src2(self, A):
        return A.source

    def tgt2(self, A):
        return A.target

    def comp(self, r2, r1):
        return compose_transformations(r1, r2)

    def vert(self, B, A):
        return vcomp_modifications(B, A)

    def horiz(self, B, A):
        return hcomp_modifications(B, A)

    def unit1(self, F):
        return identity_transformation(F)

    def unit2(self, r):
        return identity_modification(r)

    def assoc(self, r1, r2, r3):
        T = self.T
        return Modification(compose_transformations(r1, compose_transformations(r2, r3)),
                            compose_transformations(compose_transformations(r1, r2), r3),
                            lambda x: T.assoc(r1.at0(x), r2.at0(x), r3.at0(x)), name="a")

    def lunit(self, r):
        T = self.T
        return Modification(compose_transformations(identity_transformation(r.source), r), r,
                            lambda x: T.lunit(r.at0(x)), name="l")

    def runit(self, r):
        T = self.T
        return Modification(compose_transformations(r, identity_transformation(r.target)), r,
                            lambda x: T.runit(r.at0(x)), name="r")

    def inv2(self, A):
        T = self.T
        comps = {x: T.inv2(A.at(x)) for x in self.S.cells0()}
        if any(v is None for v in comps.values()):
            return None
        return Modification(A.target, A.source, comps.get, name=f"{A.name}^-1")

    def key1(self, r):
        S = self.S
        return (r.source, r.target,
                tuple(r.at0(x) for x in S.cells0()), tuple(r.at1(f) for f in S.cells1()))

    def key2(self, A):
        return tuple(A.at(x) for x in self.S.cells0())

    def eq1(self, r, q):
        return self.key1(r)[2:] == self.key1(q)[2:]

    def eq2(self, A, B):
        return self.key2(A) == self.key2(B)


def functor_2category(S, T, functors=None, enumerate_all=False, limit=200000):
    """Funct(S, T).  With ``enumerate_all`` every strict functor, every
    pseudonatural transformation and every modification is enumerated by
    brute force and the result is materialised as a TwoCategoryTable."""
    if not enumerate_all:
        return FunctorCategory(S, T, functors or [])
    for attr in ("objects", "one_cells", "two_cells"):
        if not hasattr(S, attr) or not hasattr(T, attr):
            raise CapabilityError("full enumeration needs finite tables on both sides")
    funcs = list(functors) if functors is not None else enumerate_strict_functors(S, T, limit)
    trans = []
    for F1 in funcs:
        for F2 in funcs:
            trans.extend(enumerate_transformations(F1, F2, limit))
    mods = []
    for r1 in trans:
        for r2 in trans:
            if r1.source is r2.source and r1.target is r2.target:
                mods.extend(enumerate_modifications(r1, r2, limit))
    return materialise(FunctorCategory(S, T, funcs, trans, mods))


def enumerate_strict_functors(S, T, limit=200000):
    objs, ones, twos = list(S.objects), list(S.one_cells), list(S.two_cells)
    out = []
    count = 0
    for m0 in itertools.product(T.objects, repeat=len(objs)):
        M0 = dict(zip(objs, m0))
        cand1 = [[g for g in T.one_cells if T.one_cells[g] == (M0[S.one_cells[f][0]], M0[S.one_cells[f][1]])]
                 for f in ones]
        for m1 in itertools.product(*cand1):
            M1 = dict(zip(ones, m1))
            cand2 = [T.hom2(M1[S.two_cells[a][0]], M1[S.two_cells[a][1]]) for a in twos]
            for m2 in itertools.product(*cand2):
                count += 1
                if count > limit:
                    raise CapabilityError("functor enumeration exceeds limit")
                F = TwoFunctorData(S, T, M0, M1, dict(zip(twos, m2)), name=f"F{len(out)}")
                try:
                    if check_two_functor(F).ok:
                        out.append(F)
                except TypingError:
                    pass
    return out


def enumerate_transformations(F1, F2, limit=200000):
    S, T = F1.source, F1.target
    objs, ones = list(S.cells0()), list(S.cells1())
    out = []
    count = 0
    cand0 = [[g for g in T.one_cells if T.one_cells[g] == (F1.obj(x), F2.obj(x))] for x in objs]
    for c0 in itertools.product(*cand0):
        C0 = dict(zip(objs, c0))
        cand1 = []
        for f in ones:
            X, Y = S.src1(f), S.tgt1(f)
            cand1.append(T.hom2(T.comp(C0[Y], F1.one(f)), T.comp(F2.one(f), C0[X])))
        for c1 in itertools.product(*cand1):
            count += 1
            if count > limit:
                raise CapabilityError("transformation enumeration exceeds limit")
            r = PseudoNatData(F1, F2, C0, dict(zip(ones, c1)), name=f"t{len(out)}")
            if check_pseudonatural(r).ok:
                out.append(r)
    return out


def enumerate_modifications(r1, r2, limit=200000):
    S, T = r1.source.source, r1.source.target
    objs = list(S.cells0())
    cand = [T.hom2(r1.at0(x), r2.at0(x)) for x in objs]
    out = []
    for c in itertools.product(*cand):
        if len(out) > limit:
            raise CapabilityError("modification enumeration exceeds limit")
        A = ModificationData(r1, r2, dict(zip(objs, c)), name=f"m{len(out)}")
        if check_modification(A).ok:
            out.append(A)
    return out


def materialise(FC):
    """Turn a closed FunctorCategory window into a TwoCategoryTable.  Cells
    are named by their position in the window."""
    objs, ones, twos = FC.cells0(), FC.cells1(), FC.cells2()
    on = {id(F): f"F{i}" for i, F in enumerate(objs)}
    k1 = {}
    n1 = {}
    for i, r in enumerate(ones):
        key = (id(r.source), id(r.target), FC.key1(r)[2:])
        k1.setdefault(key, f"t{i}")
        n1[i] = k1[key]
    k2 = {}
    n2 = {}
    for i, A in enumerate(twos):
        key = (k1[(id(A.source.source), id(A.source.target), FC.key1(A.source)[2:])],
               k1[(id(A.target.source), id(A.target.target), FC.key1(A.target)[2:])],
               FC.key2(A))
        k2.setdefault(key, f"m{i}")
        n2[i] = k2[key]

    def name1(r):
        return k1.get((id(r.source), id(r.target), FC.key1(r)[2:]))

    def name2(A):
        s, t = name1(A.source), name1(A.target)
        return k2.get((s, t, FC.key2(A)))

    uniq1 = {n1[i]: r for i, r in enumerate(ones)}
    uniq2 = {n2[i]: A for i, A in enumerate(twos)}
    one_cells = {n: (on[id(r.source)], on[id(r.target)]) for n, r in uniq1.items()}
    two_cells = {n: (name1(A.source), name1(A.target)) for n, A in uniq2.items()}
    compose1, vcomp, hcomp, assoc = {}, {}, {}, {}
    for a, r in uniq1.items():
        for b, q in uniq1.items():
            if r.target is q.source:
                compose1[(b, a)] = name1(FC.comp(q, r))
    for a, A in uniq2.items():
        for b, B in uniq2.items():
            if two_cells[a][1] == two_cells[b][0]:
                vcomp[(b, a)] = name2(FC.vert(B, A))
            if one_cells[two_cells[a][0]][1] == one_cells[two_cells[b][0]][0]:
                hcomp[(b, a)] = name2(FC.horiz(B, A))
    for a, r in uniq1.items():
        for b, q in uniq1.items():
            if r.target is not q.source:
                continue
            for c, p in uniq1.items():
                if q.target is p.source:
                    assoc[(a, b, c)] = name2(FC.assoc(r, q, p))
    identity1 = {on[id(F)]: name1(FC.unit1(F)) for F in objs}
    identity2 = {n: name2(FC.unit2(r)) for n, r in uniq1.items()}
    lu = {n: name2(FC.lunit(r)) for n, r in uniq1.items()}
    ru = {n: name2(FC.runit(r)) for n, r in uniq1.items()}
    inv = {}
    for n, A in uniq2.items():
        i = FC.inv2(A)
        if i is not None:
            inv[n] = name2(i)
    return TwoCategoryTable(list(on.values()), one_cells, two_cells, compose1, vcomp, hcomp,
                            identity1, identity2, assoc, lu, ru, inv,
                            strict=FC.strict, name=f"Funct({getattr(FC.S, 'name', 'S')},{getattr(FC.T, 'name', 'T')})")

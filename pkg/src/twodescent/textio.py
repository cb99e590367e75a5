"""The text format shared by all artifacts.

A document is a version line followed by sections::

    twodescent 1

    [kind name]
    key arg arg = value
    # comment

Sections are separated by one blank line.  Printing a parsed document
reproduces it byte for byte.  Point and cell keys of fibre spaces are
written with dots, patch indices first: ``0.1.v3`` is (0, 1, 'v3').
"""
from dataclasses import dataclass, field

from .base import Computad, CoverSpec, parse_word, word_str, bundled_base, BASES
from .codescent import SectionChoice
from .descent import DescentContext, DescentObject, GeneratedFunctor, GeneratedTransformation, \
    compose_functors, Refinement
from .instances import (
    FiniteGroup, CrossedModule, projection_crossed_module, quotient_crossed_module,
    identity_crossed_module, cyclic_group, two_group_from_crossed_module, trivial_2groupoid,
    delooping, unit_functor, graded_monoid_table, matrix_table, anomaly_table,
)
from .twocat import TypingError, EquivalenceBundle, Modification, identity_functor, precompose, \
    identity_transformation, compose_transformations, TwoCategoryTable, TwoFunctorData, \
    PseudoNatData, ModificationData

VERSION = "twodescent 1"


class ParseError(ValueError):
    def __init__(self, line, column, msg):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line, self.column = line, column


@dataclass
class Entry:
    key: str
    args: tuple = ()
    value: str = ""

    def render(self):
        if self.key == "#":
            return "#" + self.value
        head = " ".join((self.key,) + tuple(self.args))
        return f"{head} = {self.value}"


@dataclass
class SectionDoc:
    kind: str
    name: str
    entries: list = field(default_factory=list)

    def add(self, key, *args, value):
        self.entries.append(Entry(key, tuple(str(a) for a in args), str(value)))

    def get(self, key, default=None):
        for e in self.entries:
            if e.key == key and not e.args:
                return e.value
        return default

    def rows(self, key):
        return [e for e in self.entries if e.key == key]

    def render(self):
        return "\n".join([f"[{self.kind} {self.name}]"] + [e.render() for e in self.entries])


@dataclass
class Document:
    sections: list = field(default_factory=list)

    def render(self):
        return VERSION + "\n" + "".join("\n" + s.render() + "\n" for s in self.sections)

    def find(self, kind=None, name=None):
        return [s for s in self.sections
                if (kind is None or s.kind == kind) and (name is None or s.name == name)]


def parse(text):
    lines = text.split("\n")
    if not lines or lines[0] != VERSION:
        raise ParseError(1, 1, f"missing version header {VERSION!r}")
    if not text.endswith("\n"):
        raise ParseError(len(lines), 1, "document must end with a newline")
    lines = lines[:-1]
    doc = Document()
    cur = None
    expect_blank = True
    for n, line in enumerate(lines[1:], start=2):
        if expect_blank:
            if line != "":
                raise ParseError(n, 1, "expected a blank line before the next section")
            expect_blank = False
            cur = None
            continue
        if line == "":
            if cur is None:
                raise ParseError(n, 1, "unexpected blank line")
            cur = None
            continue
        if cur is None:
            if not (line.startswith("[") and line.endswith("]")):
                raise ParseError(n, 1, "expected a section header [kind name]")
            parts = line[1:-1].split(" ")
            if len(parts) != 2 or not all(parts):
                raise ParseError(n, 2, "section header needs exactly a kind and a name")
            cur = SectionDoc(parts[0], parts[1])
            doc.sections.append(cur)
            continue
        if line.startswith("#"):
            cur.entries.append(Entry("#", (), line[1:]))
            continue
        k = line.find(" = ")
        if k < 0:
            raise ParseError(n, len(line) + 1, "expected 'key [args] = value'")
        head = line[:k].split(" ")
        if not all(head):
            raise ParseError(n, 1, "doubled space in key")
        cur.entries.append(Entry(head[0], tuple(head[1:]), line[k + 3:]))
    if cur is None and len(lines) > 1 and lines[-1] == "":
        raise ParseError(len(lines), 1, "trailing blank line")
    return doc


def render(doc):
    return doc.render()


# ---------------------------------------------------------------------------
# keys

def key_str(x):
    if isinstance(x, tuple):
        return ".".join(str(c) for c in x)
    return str(x)


def key_parse(s):
    parts = s.split(".")
    try:
        return tuple(int(p) for p in parts[:-1]) + (parts[-1],)
    except ValueError:
        raise TypingError(f"bad point key {s!r}")


def _word_out(w):
    return word_str(w) if w else "1"


def _word_in(s):
    return () if s == "1" else parse_word(s)


# ---------------------------------------------------------------------------
# built-in names

BUILTIN_CROSSED = {
    "S3xZ2->S3": projection_crossed_module,
    "Z4->Z2": quotient_crossed_module,
    "id(Z2)": lambda: identity_crossed_module(cyclic_group(2)),
}
BUILTIN_MONOIDAL = {"gradedZ4": graded_monoid_table, "matF2": matrix_table, "anomalyZ2": anomaly_table}


@dataclass
class Structure:
    """The pair (Gr, T) with i: Gr → T named by a crossed module or a
    monoidal table."""
    kind: str
    name: str
    Gr: object
    T: object
    i: object


class Workspace:
    """Named artifacts of a loaded document."""

    def __init__(self):
        self.items = {}
        self.kinds = {}
        self._structures = {}
        self._contexts = {}

    def put(self, kind, name, obj):
        if name in self.items:
            raise TypingError(f"duplicate artifact name {name!r}")
        self.items[name], self.kinds[name] = obj, kind

    def get(self, name, kind=None):
        if name in self.items:
            if kind is not None and self.kinds[name] not in (kind if isinstance(kind, tuple) else (kind,)):
                raise TypingError(f"{name!r} is a {self.kinds[name]}, not a {kind}")
            return self.items[name]
        if kind == "cover" and name in BASES:
            cov = bundled_base(name)[1]
            self.put("cover", name, cov)
            return cov
        if kind == "crossed-module" and name in BUILTIN_CROSSED:
            cm = BUILTIN_CROSSED[name]()
            self.put("crossed-module", name, cm)
            return cm
        if kind == "monoidal" and name in BUILTIN_MONOIDAL:
            m = BUILTIN_MONOIDAL[name]()
            self.put("monoidal", name, m)
            return m
        raise TypingError(f"unknown reference {name!r}")

    def of_kind(self, kind):
        return [(n, self.items[n]) for n in self.items if self.kinds[n] == kind]

    def structure(self, sec):
        cm_name, m_name = sec.get("structure"), sec.get("monoidal")
        if (cm_name is None) == (m_name is None):
            raise TypingError(f"[{sec.kind} {sec.name}] needs exactly one of structure / monoidal")
        key = ("cm", cm_name) if cm_name else ("mon", m_name)
        st = self._structures.get(key)
        if st is None:
            if cm_name:
                T = two_group_from_crossed_module(self.get(cm_name, "crossed-module"))
                st = Structure("structure", cm_name, T, T, identity_functor(T))
            else:
                T = delooping(self.get(m_name, "monoidal"))
                Gr = trivial_2groupoid()
                st = Structure("monoidal", m_name, Gr, T, unit_functor(Gr, T))
            self._structures[key] = st
        return st

    def context(self, cover_name, st):
        key = (cover_name, st.kind, st.name)
        ctx = self._contexts.get(key)
        if ctx is None:
            ctx = DescentContext(self.get(cover_name, "cover"), st.Gr, st.T, st.i)
            ctx.cover_name, ctx.structure = cover_name, st
            self._contexts[key] = ctx
        return ctx


# ---------------------------------------------------------------------------
# typed load

def _cell(T, level, v, where):
    cells = T.one_cells if level == 1 else T.two_cells if level == 2 else T.objects
    if v not in cells:
        raise TypingError(f"{where}: {v!r} is not a {level}-cell of {T.name}")
    return v


def _table(sec, key, cells, T, level, parse_key=key_parse):
    out = {}
    for e in sec.rows(key):
        if len(e.args) != 1:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} takes one index")
        k = parse_key(e.args[0])
        if k not in cells:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} {e.args[0]}: no such cell")
        if k in out:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} {e.args[0]} given twice")
        out[k] = _cell(T, level, e.value, f"[{sec.kind} {sec.name}] {key} {e.args[0]}")
    missing = [c for c in cells if c not in out]
    if missing:
        raise TypingError(f"[{sec.kind} {sec.name}] {key} missing at {key_str(missing[0])}")
    return out


def _load_computad(ws, sec):
    if sec.get("builtin"):
        raise TypingError("computads are built in through their cover")
    vs = sec.get("vertices", "").split()
    es = {e.args[0]: tuple(e.value.split()) for e in sec.rows("edge")}
    fs = {}
    for e in sec.rows("face"):
        a, _, b = e.value.partition(" => ")
        fs[e.args[0]] = (_word_in(a), _word_in(b))
    for c in list(vs) + list(es) + list(fs):
        if "." in c:
            raise TypingError(f"cell name {c!r} contains a dot")
    return Computad(vs, es, fs, name=sec.name)


def _load_cover(ws, sec):
    b = sec.get("builtin")
    if b is not None:
        if b not in BASES:
            raise TypingError(f"unknown built-in cover {b!r}")
        return bundled_base(b)[1]
    X = ws.get(sec.get("base"), "computad")
    patches = [set(e.value.split()) for e in sorted(sec.rows("patch"), key=lambda e: int(e.args[0]))]
    return CoverSpec(X, patches, name=sec.name)


def _load_group(ws, sec):
    els = sec.get("elements").split()
    table = {}
    for e in sec.rows("mul"):
        row = e.value.split()
        if len(row) != len(els):
            raise TypingError(f"[group {sec.name}] row {e.args[0]} has the wrong length")
        for b, c in zip(els, row):
            table[(e.args[0], b)] = c
    return FiniteGroup(els, table, name=sec.name)


def _load_crossed(ws, sec):
    b = sec.get("builtin")
    if b is not None:
        if b not in BUILTIN_CROSSED:
            raise TypingError(f"unknown built-in crossed module {b!r}")
        return BUILTIN_CROSSED[b]()
    G, H = ws.get(sec.get("G"), "group"), ws.get(sec.get("H"), "group")
    t = {e.args[0]: e.value for e in sec.rows("t")}
    act = {}
    for e in sec.rows("act"):
        for h, v in zip(H.elements, e.value.split()):
            act[(e.args[0], h)] = v
    cm = CrossedModule(G, H, t, act, name=sec.name)
    cm.validate()
    return cm


def _load_monoidal(ws, sec):
    b = sec.get("builtin")
    if b not in BUILTIN_MONOIDAL:
        raise TypingError(f"monoidal tables are built in; unknown {b!r}")
    return BUILTIN_MONOIDAL[b]()


def _load_choice(ws, sec):
    cover = ws.get(sec.get("cover"), "cover")
    b = sec.get("builtin")
    if b == "hub":
        ch = SectionChoice.hub(cover, name=sec.name)
    elif b == "last":
        ch = SectionChoice.last(cover, name=sec.name)
    else:
        pick = lambda key: {e.args[0]: int(e.value) for e in sec.rows(key)}
        ch = SectionChoice(pick("vertex"), pick("edge"), pick("face"), name=sec.name)
    ch.validate(cover)
    ch.cover_name = sec.get("cover")
    return ch


def _load_refinement(ws, sec):
    r = Refinement(ws.get(sec.get("source"), "cover"), ws.get(sec.get("target"), "cover"),
                   [int(x) for x in sec.get("map").split()], name=sec.name)
    r.source_name, r.target_name = sec.get("source"), sec.get("target")
    return r


def descent_tables(ctx):
    """(key, fibre level, cell-kind, T-level) of every table of a descent object."""
    cov = ctx.cover
    Y1, Y2, Y3 = cov.space(1), cov.space(2), cov.space(3)
    return [("triv0", Y1.vertices, "Gr", 0), ("triv1", list(Y1.edges), "Gr", 1),
            ("triv2", list(Y1.faces), "Gr", 2), ("g0", Y2.vertices, "T", 1),
            ("g1", list(Y2.edges), "T", 2), ("psi", Y1.vertices, "T", 2),
            ("f", Y3.vertices, "T", 2)]


def _load_descent(ws, sec):
    st = ws.structure(sec)
    ctx = ws.context(sec.get("cover"), st)
    t = {}
    for key, cells, which, level in descent_tables(ctx):
        t[key] = _table(sec, key, cells, st.Gr if which == "Gr" else st.T, level)
    D = DescentObject.from_tables(ctx, t, name=sec.name)
    return D


def _load_trivialized(ws, sec):
    st = ws.structure(sec)
    if st.kind != "structure":
        raise TypingError("trivialized functors are stored for 2-group targets")
    ctx = ws.context(sec.get("cover"), st)
    T = st.T
    X, Y = ctx.cover.base, ctx.cover.space(1)
    plain = lambda s: s
    F = GeneratedFunctor(ctx.groupoid(0), T, {v: T.objects[0] for v in X.vertices},
                         _table(sec, "F1", list(X.edges), T, 1, plain),
                         _table(sec, "F2", list(X.faces), T, 2, plain), name="F")
    triv = GeneratedFunctor(ctx.groupoid(1), st.Gr, {v: st.Gr.objects[0] for v in Y.vertices},
                            _table(sec, "triv1", list(Y.edges), st.Gr, 1),
                            _table(sec, "triv2", list(Y.faces), st.Gr, 2), name="triv")
    piF = precompose(F, ctx.to_base(1))
    triv_i = compose_functors(ctx.i, triv)
    t = GeneratedTransformation(piF, triv_i, _table(sec, "t0", Y.vertices, T, 1),
                                _table(sec, "t1", list(Y.edges), T, 2), name="t")
    tbar = GeneratedTransformation(triv_i, piF, _table(sec, "tbar0", Y.vertices, T, 1),
                                   _table(sec, "tbar1", list(Y.edges), T, 2), name="tbar")
    i_c = _table(sec, "i_t", Y.vertices, T, 2)
    j_c = _table(sec, "j_t", Y.vertices, T, 2)
    i_t = Modification(compose_transformations(t, tbar), identity_transformation(piF), i_c.get, "i_t")
    j_t = Modification(identity_transformation(triv_i), compose_transformations(tbar, t), j_c.get, "j_t")
    from .transport import TrivializedFunctor
    return TrivializedFunctor(ctx, F, triv, EquivalenceBundle(t, tbar, i_t, j_t), name=sec.name)


# ---------------------------------------------------------------------------
# finite 2-categories and table-valued functor data

def _pairs(sec, key, n):
    out = {}
    for e in sec.rows(key):
        if len(e.args) != n:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} takes {n} argument(s)")
        k = e.args[0] if n == 1 else tuple(e.args)
        if k in out:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} {' '.join(e.args)} given twice")
        out[k] = e.value
    return out


def _load_2category(ws, sec):
    ones = {f: tuple(v.split()) for f, v in _pairs(sec, "one", 1).items()}
    twos = {a: tuple(v.split()) for a, v in _pairs(sec, "two", 1).items()}
    if any(len(v) != 2 for v in list(ones.values()) + list(twos.values())):
        raise TypingError(f"[2-category {sec.name}] cells need a source and a target")
    strict = sec.get("strict", "false")
    if strict not in ("true", "false"):
        raise TypingError(f"[2-category {sec.name}] strict must be true or false")
    C = TwoCategoryTable(
        sec.get("objects", "").split(), ones, twos, _pairs(sec, "compose1", 2),
        _pairs(sec, "vcomp", 2), _pairs(sec, "hcomp", 2), _pairs(sec, "id1", 1),
        _pairs(sec, "id2", 1), _pairs(sec, "assoc", 3), _pairs(sec, "lunit", 1),
        _pairs(sec, "runit", 1), _pairs(sec, "inv2", 1), _pairs(sec, "inv1", 1),
        strict=strict == "true", name=sec.name)
    cells = set(C.objects) | set(ones) | set(twos)
    for table in ("compose1", "vcomp", "hcomp", "identity1", "identity2", "associator",
                  "left_unifier", "right_unifier", "inverse2", "inverse1"):
        for v in getattr(C, table).values():
            if v not in cells:
                raise TypingError(f"[2-category {sec.name}] {table}: unknown cell {v!r}")
    return C


def _total(sec, key, table, domain, codomain):
    for c in domain:
        if c not in table:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} missing at {c}")
        if table[c] not in codomain:
            raise TypingError(f"[{sec.kind} {sec.name}] {key} {c}: unknown cell {table[c]!r}")
    extra = set(table) - set(domain)
    if extra:
        raise TypingError(f"[{sec.kind} {sec.name}] {key} {sorted(extra)[0]}: no such cell")
    return table


def _load_2functor(ws, sec):
    S = ws.get(sec.get("source"), "2-category")
    T = ws.get(sec.get("target"), "2-category")
    obj = _total(sec, "obj", _pairs(sec, "obj", 1), S.objects, T.objects)
    one = _total(sec, "one", _pairs(sec, "one", 1), S.one_cells, T.one_cells)
    two = _total(sec, "two", _pairs(sec, "two", 1), S.two_cells, T.two_cells)
    comp, unit = _pairs(sec, "comp", 2), _pairs(sec, "unit", 1)
    if unit:
        _total(sec, "unit", unit, S.objects, T.two_cells)
    for v in comp.values():
        if v not in T.two_cells:
            raise TypingError(f"[2-functor {sec.name}] comp: unknown cell {v!r}")
    return TwoFunctorData(S, T, obj, one, two, comp or None, unit or None, name=sec.name)


def _load_pseudonat(ws, sec):
    F1 = ws.get(sec.get("source"), "2-functor")
    F2 = ws.get(sec.get("target"), "2-functor")
    S, T = F1.source, F1.target
    if F2.source is not S or F2.target is not T:
        raise TypingError(f"[pseudonat {sec.name}] functors have different source or target")
    at0 = _total(sec, "at0", _pairs(sec, "at0", 1), S.objects, T.one_cells)
    at1 = _total(sec, "at1", _pairs(sec, "at1", 1), S.one_cells, T.two_cells)
    return PseudoNatData(F1, F2, at0, at1, name=sec.name)


def _load_modification(ws, sec):
    r1 = ws.get(sec.get("source"), "pseudonat")
    r2 = ws.get(sec.get("target"), "pseudonat")
    if r1.source is not r2.source or r1.target is not r2.target:
        raise TypingError(f"[modification {sec.name}] transformations are not parallel")
    S, T = r1.source.source, r1.source.target
    at = _total(sec, "at", _pairs(sec, "at", 1), S.objects, T.two_cells)
    return ModificationData(r1, r2, at, name=sec.name)


def dump_2category(C, name=None):
    sec = SectionDoc("2-category", name or C.name)
    sec.add("objects", value=" ".join(C.objects))
    sec.add("strict", value=str(C.strict).lower())
    for f, (x, y) in C.one_cells.items():
        sec.add("one", f, value=f"{x} {y}")
    for a, (f, g) in C.two_cells.items():
        sec.add("two", a, value=f"{f} {g}")
    for key, table in (("id1", C.identity1), ("id2", C.identity2), ("compose1", C.compose1),
                       ("vcomp", C.vcomp), ("hcomp", C.hcomp), ("assoc", C.associator),
                       ("lunit", C.left_unifier), ("runit", C.right_unifier),
                       ("inv2", C.inverse2), ("inv1", C.inverse1)):
        for k, v in table.items():
            sec.add(key, *(k if isinstance(k, tuple) else (k,)), value=v)
    return sec


def dump_2functor(F, source_name, target_name, name=None):
    """F must be a TwoFunctorData or expose finite source and target tables."""
    S = F.source
    sec = SectionDoc("2-functor", name or F.name)
    sec.add("source", value=source_name)
    sec.add("target", value=target_name)
    for x in S.objects:
        sec.add("obj", x, value=F.obj(x))
    for f in S.one_cells:
        sec.add("one", f, value=F.one(f))
    for a in S.two_cells:
        sec.add("two", a, value=F.two(a))
    if getattr(F, "compositor", None) is not None:
        for (f, g), v in F.compositor.items():
            sec.add("comp", f, g, value=v)
    if getattr(F, "unitor", None) is not None:
        for x, v in F.unitor.items():
            sec.add("unit", x, value=v)
    return sec


def dump_pseudonat(rho, source_name, target_name, name=None):
    S = rho.source.source
    sec = SectionDoc("pseudonat", name or rho.name)
    sec.add("source", value=source_name)
    sec.add("target", value=target_name)
    for x in S.objects:
        sec.add("at0", x, value=rho.at0(x))
    for f in S.one_cells:
        sec.add("at1", f, value=rho.at1(f))
    return sec


def dump_modification(A, source_name, target_name, name=None):
    sec = SectionDoc("modification", name or A.name)
    sec.add("source", value=source_name)
    sec.add("target", value=target_name)
    for x in A.source.source.source.objects:
        sec.add("at", x, value=A.at(x))
    return sec


LOADERS = {
    "2-category": _load_2category, "2-functor": _load_2functor, "pseudonat": _load_pseudonat,
    "modification": _load_modification,
    "computad": _load_computad, "cover": _load_cover, "group": _load_group,
    "crossed-module": _load_crossed, "monoidal": _load_monoidal, "choice": _load_choice,
    "refinement": _load_refinement, "descent": _load_descent, "trivialized": _load_trivialized,
}
# output-only sections (reports and witnesses) are kept as raw sections
PASSIVE = {"report", "rho", "eta", "reconstruction", "holonomy"}


def load(doc):
    ws = Workspace()
    ws.doc = doc
    for sec in doc.sections:
        if sec.kind in PASSIVE:
            ws.put(sec.kind, sec.name, sec)
            continue
        loader = LOADERS.get(sec.kind)
        if loader is None:
            raise TypingError(f"unknown section kind {sec.kind!r}")
        obj = loader(ws, sec)
        ws.put(sec.kind, sec.name, obj)
        ws.sections = getattr(ws, "sections", {})
        ws.sections[sec.name] = sec
    return ws


def load_text(text):
    return load(parse(text))


# ---------------------------------------------------------------------------
# typed dump

def dump_computad(X, name=None):
    sec = SectionDoc("computad", name or X.name)
    sec.add("vertices", value=" ".join(X.vertices))
    for e, (s, t) in X.edges.items():
        sec.add("edge", e, value=f"{s} {t}")
    for F, (a, b) in X.faces.items():
        sec.add("face", F, value=f"{_word_out(a)} => {_word_out(b)}")
    return sec


def dump_cover(cov, name, base_name=None, builtin=None):
    sec = SectionDoc("cover", name)
    if builtin:
        sec.add("builtin", value=builtin)
        return sec
    sec.add("base", value=base_name or cov.base.name)
    for k, U in enumerate(cov.patches):
        sec.add("patch", k, value=" ".join(sorted(U)))
    return sec


def dump_choice(ch, cover_name):
    sec = SectionDoc("choice", ch.name)
    sec.add("cover", value=cover_name)
    for key, table in (("vertex", ch.chi0), ("edge", ch.chi1), ("face", ch.chi2)):
        for c, i in table.items():
            sec.add(key, c, value=i)
    return sec


def _structure_lines(sec, ctx):
    sec.add("cover", value=ctx.cover_name)
    st = ctx.structure
    sec.add(st.kind, value=st.name)


def dump_descent(D, name=None):
    sec = SectionDoc("descent", name or D.name)
    _structure_lines(sec, D.ctx)
    t = D.tables()
    for key, cells, _, _ in descent_tables(D.ctx):
        for c in cells:
            sec.add(key, key_str(c), value=t[key][c])
    return sec


def dump_trivialized(tf, name=None):
    sec = SectionDoc("trivialized", name or tf.name)
    _structure_lines(sec, tf.ctx)
    ctx = tf.ctx
    X, Y = ctx.cover.base, ctx.cover.space(1)
    P0, P1 = ctx.groupoid(0), ctx.groupoid(1)
    b = tf.t_bundle
    one = lambda S, e: S.path(((e, 1),))
    for e in X.edges:
        sec.add("F1", e, value=tf.F.one(one(X, e)))
    for F in X.faces:
        sec.add("F2", F, value=tf.F.two(P0.face(F)))
    for e in Y.edges:
        sec.add("triv1", key_str(e), value=tf.triv.one(one(Y, e)))
    for F in Y.faces:
        sec.add("triv2", key_str(F), value=tf.triv.two(P1.face(F)))
    for key, nat in (("t", b.forward), ("tbar", b.inverse)):
        for a in Y.vertices:
            sec.add(key + "0", key_str(a), value=nat.at0(a))
        for e in Y.edges:
            sec.add(key + "1", key_str(e), value=nat.at1(one(Y, e)))
    for a in Y.vertices:
        sec.add("i_t", key_str(a), value=b.i_t.at(a))
    for a in Y.vertices:
        sec.add("j_t", key_str(a), value=b.j_t.at(a))
    return sec


def attach(ctx, cover_name, structure):
    """Label a context so its objects can be dumped."""
    ctx.cover_name, ctx.structure = cover_name, structure
    return ctx

"""The codescent 2-groupoid of a cover as a term algebra.

Objects are points of Y (tuples ``(i, v)``).  1-cells are trees over paths
in single patches, jumps between patches over one base point, formal
identities and formal composition ``Star``.  2-cells are trees over the six
generator kinds.  Equality of 2-cells is never decided here; it is
certified by evaluating under the pairing functors of descent objects.
"""
from dataclasses import dataclass, field

from .base import Path, Bigon, Step, PathGroupoid, CellMap, reduce_word, word_str
from .twocat import TypingError, ConstructionError, TwoFunctor


# ---------------------------------------------------------------------------
# hash-consed terms

_TABLE = {}


class Term:
    __slots__ = ("kind", "args", "_h", "__weakref__")

    def __new__(cls, kind, *args):
        key = (kind, args)
        t = _TABLE.get(key)
        if t is None:
            t = object.__new__(cls)
            t.kind, t.args, t._h = kind, args, hash(key)
            _TABLE[key] = t
        return t

    def __hash__(self):
        return self._h

    def __eq__(self, other):
        return self is other

    def __repr__(self):
        return show(self)

    def __reduce__(self):
        return (Term, (self.kind,) + self.args)


ONE_KINDS = {"Path", "Jump", "FormalId", "Star"}
GENERATORS = {"Bigon", "Theta", "Xi", "DeltaA", "Assoc", "LUnif", "RUnif", "UStar", "CStar"}


def CPath(p):
    return Term("Path", p)


def Jump(alpha):
    return Term("Jump", tuple(alpha))


def FormalId(a):
    return Term("FormalId", tuple(a))


def Star(left, right):
    return Term("Star", left, right)


def CBigon(sigma, sign=1):
    return Term("Bigon", sigma, sign)


def Theta(theta, sign=1):
    return Term("Theta", theta, sign)


def Xi(xi, sign=1):
    return Term("Xi", tuple(xi), sign)


def DeltaA(a, sign=1):
    return Term("DeltaA", tuple(a), sign)


def Assoc(b1, b2, b3, sign=1):
    return Term("Assoc", b1, b2, b3, sign)


def LUnif(b, sign=1):
    return Term("LUnif", b, sign)


def RUnif(b, sign=1):
    return Term("RUnif", b, sign)


def UStar(a, sign=1):
    return Term("UStar", tuple(a), sign)


def CStar(g1, g2, sign=1):
    return Term("CStar", g1, g2, sign)


def Id2(b):
    return Term("Id2", b)


def HComp(b, a):
    return Term("HComp", b, a)


def VComp(*parts):
    """Vertical composite, parts in order of application (first applied
    first).  Identities are dropped and nested composites flattened."""
    flat = []
    for p in parts:
        if p.kind == "VComp":
            flat.extend(p.args)
        elif p.kind != "Id2":
            flat.append(p)
    if not flat:
        return Id2(src(parts[0]))
    if len(flat) == 1:
        return flat[0]
    return Term("VComp", *flat)


def inv(t):
    k = t.kind
    if k in GENERATORS:
        return Term(k, *t.args[:-1], -t.args[-1])
    if k == "Id2":
        return t
    if k == "VComp":
        return Term("VComp", *(inv(p) for p in reversed(t.args)))
    if k == "HComp":
        return HComp(inv(t.args[0]), inv(t.args[1]))
    raise TypeError(f"not a 2-cell term: {k}")


def sign_of(t):
    return t.args[-1] if t.kind in GENERATORS else 1


# ---------------------------------------------------------------------------
# typing

def _pi(c, positions):
    return tuple(c[p] for p in positions) + (c[-1],)


def _proj_path(theta, positions):
    f = lambda c: _pi(c, positions)
    return Path(f(theta.src), f(theta.tgt), reduce_word(tuple((f(e), s) for e, s in theta.word)))


def ends1(t):
    """(source object, target object) of a 1-cell term."""
    k = t.kind
    if k == "Path":
        return t.args[0].src, t.args[0].tgt
    if k == "Jump":
        i, j, v = t.args[0]
        return (i, v), (j, v)
    if k == "FormalId":
        return t.args[0], t.args[0]
    if k == "Star":
        l, r = t.args
        (a, b), (c, d) = ends1(r), ends1(l)
        if b != c:
            raise TypingError(f"ill-typed Star: {show(l)} after {show(r)}")
        return a, d
    raise TypeError(f"not a 1-cell term: {k}")


_BOUND = {}


def bound(t):
    """(source, target) 1-cell terms of a 2-cell term."""
    r = _BOUND.get(t)
    if r is None:
        r = _bound(t)
        _BOUND[t] = r
    return r


def src(t):
    return bound(t)[0]


def tgt(t):
    return bound(t)[1]


def _bound(t):
    k, a = t.kind, t.args
    if k in GENERATORS:
        s, tt = _gen_bound(k, a[:-1])
        return (s, tt) if a[-1] == 1 else (tt, s)
    if k == "Id2":
        ends1(a[0])
        return a[0], a[0]
    if k == "VComp":
        for x, y in zip(a, a[1:]):
            if tgt(x) is not src(y):
                raise TypingError(f"ill-typed vertical composite: {show(tgt(x))} vs {show(src(y))}")
        return src(a[0]), tgt(a[-1])
    if k == "HComp":
        b, c = a
        s, tt = Star(src(b), src(c)), Star(tgt(b), tgt(c))
        ends1(s)
        return s, tt
    raise TypeError(f"not a 2-cell term: {k}")


def _gen_bound(k, a):
    if k == "Bigon":
        return CPath(a[0].src), CPath(a[0].tgt)
    if k == "Theta":
        th = a[0]
        return (Star(Jump(th.tgt), CPath(_proj_path(th, (0,)))),
                Star(CPath(_proj_path(th, (1,))), Jump(th.src)))
    if k == "Xi":
        i, j, l, v = a[0]
        return Star(Jump((j, l, v)), Jump((i, j, v))), Jump((i, l, v))
    if k == "DeltaA":
        i, v = a[0]
        return FormalId(a[0]), Jump((i, i, v))
    if k == "Assoc":
        b1, b2, b3 = a
        return Star(Star(b3, b2), b1), Star(b3, Star(b2, b1))
    if k == "LUnif":
        return Star(a[0], FormalId(ends1(a[0])[0])), a[0]
    if k == "RUnif":
        return Star(FormalId(ends1(a[0])[1]), a[0]), a[0]
    if k == "UStar":
        return CPath(Path(a[0], a[0], ())), FormalId(a[0])
    if k == "CStar":
        g1, g2 = a
        return Star(CPath(g2), CPath(g1)), CPath(g1.then(g2))
    raise TypeError(k)


def typecheck(t):
    if t.kind in ONE_KINDS:
        ends1(t)
    else:
        ends1(src(t))
        ends1(tgt(t))
    return True


# ---------------------------------------------------------------------------
# debug printer
#
#   1-cells:  path[<word>]@<pt> | jump<i,j,v> | id*<pt> | (<left> * <right>)
#   2-cells:  bigon{<steps>} theta{<word>@<pt>} xi<i,j,k,v> delta<pt>
#             assoc(<b1>,<b2>,<b3>) lunif(<b>) runif(<b>) ustar<pt>
#             cstar(<word>,<word>) with suffix ^-1 for inverses,
#             [<a1> ; <a2> ; ...] vertical (application order),
#             (<b> o <a>) horizontal, 1(<b>) identity.

def _pt(x):
    return "<" + ",".join(str(c) for c in x) + ">"


def show(t):
    k, a = t.kind, t.args
    if k == "Path":
        p = a[0]
        return f"path[{word_str(p.word)}]@{_pt(p.src)}"
    if k == "Jump":
        return "jump" + _pt(a[0])
    if k == "FormalId":
        return "id*" + _pt(a[0])
    if k == "Star":
        return f"({show(a[0])} * {show(a[1])})"
    if k == "Id2":
        return f"1({show(a[0])})"
    if k == "VComp":
        return "[" + " ; ".join(show(x) for x in a) + "]"
    if k == "HComp":
        return f"({show(a[0])} o {show(a[1])})"
    suffix = "" if a[-1] == 1 else "^-1"
    b = a[:-1]
    if k == "Bigon":
        body = "bigon{" + str(b[0]) + "}"
    elif k == "Theta":
        body = f"theta{{{word_str(b[0].word)}@{_pt(b[0].src)}}}"
    elif k == "Xi":
        body = "xi" + _pt(b[0])
    elif k == "DeltaA":
        body = "delta" + _pt(b[0])
    elif k == "UStar":
        body = "ustar" + _pt(b[0])
    elif k == "CStar":
        body = f"cstar({word_str(b[0].word)},{word_str(b[1].word)})"
    else:
        body = k.lower() + "(" + ",".join(show(x) for x in b) + ")"
    return body + suffix


def generator_kinds(t):
    """Multiset of generator kinds occurring in a 2-cell term, with the
    points of Xi generators (used to inspect compositor terms)."""
    out = []

    def go(x):
        if x.kind in GENERATORS:
            out.append((x.kind, x.args[0] if x.kind in ("Xi", "DeltaA") else None))
        elif x.kind in ("VComp", "HComp"):
            for y in x.args:
                go(y)
    go(t)
    return out


# ---------------------------------------------------------------------------
# flat token lists and the pasting builder

def flatten(t):
    """Atoms of a 1-cell term in order of application (FormalIds dropped)."""
    k = t.kind
    if k == "Star":
        return flatten(t.args[1]) + flatten(t.args[0])
    if k == "FormalId":
        return ()
    return (t,)


def rn(tokens, pt):
    """Right-nested composite t_n * (... * (t_2 * t_1)); FormalId(pt) if empty."""
    if not tokens:
        return FormalId(pt)
    out = tokens[0]
    for x in tokens[1:]:
        out = Star(x, out)
    return out


def _start(tokens, pt):
    return ends1(tokens[0])[0] if tokens else pt


def _end(tokens, pt):
    return ends1(tokens[-1])[1] if tokens else pt


_SPLIT = {}


def split(tokens, k):
    """rn(tokens) ⇒ rn(tokens[k:]) * rn(tokens[:k]) for 0 < k < len."""
    key = (tokens, k)
    r = _SPLIT.get(key)
    if r is not None:
        return r
    n = len(tokens)
    if n - k == 1:
        r = Id2(rn(tokens, None))
    else:
        A, Bp, last = tokens[:k], tokens[k:-1], tokens[-1]
        r = VComp(HComp(Id2(last), split(tokens[:-1], k)),
                  Assoc(rn(A, None), rn(Bp, None), last, -1))
    _SPLIT[key] = r
    return r


def to_rn(t):
    """t ⇒ rn(flatten(t)) from associators and unifiers."""
    k = t.kind
    if k != "Star":
        return Id2(t)
    l, r = t.args
    Fl, Fr = flatten(l), flatten(r)
    a0 = ends1(t)[0]
    mid = ends1(r)[1]
    step1 = HComp(to_rn(l), to_rn(r))
    A, B = rn(Fl, mid), rn(Fr, a0)
    if not Fl and not Fr:
        merge = LUnif(A)
    elif not Fl:
        merge = RUnif(B)
    elif not Fr:
        merge = LUnif(A)
    else:
        merge = inv(split(Fr + Fl, len(Fr)))
    return VComp(step1, merge)


def local_2cell(tokens, pt, k, m, X, new):
    """Whisker X: rn(tokens[k:k+m]) ⇒ rn(new) into rn(tokens)."""
    tokens, new = tuple(tokens), tuple(new)
    A, S, C = tokens[:k], tokens[k:k + m], tokens[k + m:]
    AS, AN = A + S, A + new
    # inner: rn(A+S) ⇒ rn(A+new)
    if A:
        if S:
            b = split(AS, k)
        else:
            b = RUnif(rn(A, pt), -1)
        slot = HComp(X, Id2(rn(A, pt)))
        if new:
            d = inv(split(AN, k))
        else:
            d = RUnif(rn(A, pt))
        inner = VComp(b, slot, d)
    else:
        inner = X
    if not C:
        return inner
    rC = rn(C, None)
    if AS:
        a = split(tokens, k + m)
    else:
        a = LUnif(rC, -1)
    e = inv(split(AN + C, len(AN))) if AN else LUnif(rC)
    return VComp(a, HComp(Id2(rC), inner), e)


class Chain:
    """Accumulates a vertical composite starting from a 1-cell term while
    tracking the current flat token list."""

    def __init__(self, term):
        self.start = term
        self.pt = ends1(term)[0]
        self.tokens = flatten(term)
        self.cells = [to_rn(term)]

    def rewrite(self, k, m, X, new):
        new = tuple(new)
        self.cells.append(local_2cell(self.tokens, self.pt, k, m, X, new))
        self.tokens = self.tokens[:k] + new + self.tokens[k + m:]

    def current(self):
        return rn(self.tokens, self.pt)

    def result(self):
        return VComp(*self.cells) if self.cells else Id2(self.start)


def _letter(t):
    return t.kind == "Path" and len(t.args[0].word) == 1


def _patch(t):
    return t.args[0].src[0]


def _base_letter(t):
    (e, s), = t.args[0].word
    return e[-1], s


def _letter_path(patch, base_edge, sign, cover):
    X = cover.base
    a, b = X.edges[base_edge]
    if sign == -1:
        a, b = b, a
    return Path((patch, a), (patch, b), (((patch, base_edge), sign),))


def _expand(ch):
    """Split every multi-letter path token into letters and remove empty
    paths."""
    while True:
        for k, t in enumerate(ch.tokens):
            if t.kind == "Path" and len(t.args[0].word) != 1:
                break
        else:
            return
        p = t.args[0]
        if not p.word:
            ch.rewrite(k, 1, UStar(p.src), ())
            continue
        init = _walk(p.src, p.word[:-1])
        last = Path(init.tgt, p.tgt, p.word[-1:])
        ch.rewrite(k, 1, CStar(init, last, -1), (CPath(init), CPath(last)))


_EDGE_ENDS = {}


def register_space(Y):
    """Record edge endpoints of a fibre space so paths can be walked."""
    for e, ends in Y.edges.items():
        _EDGE_ENDS[e] = ends


def _walk(start, w):
    cur = start
    for e, s in w:
        a, b = _EDGE_ENDS[e]
        cur = b if s == 1 else a
    return Path(start, cur, tuple(w))


def _walk_back(end, w):
    cur = end
    for e, s in reversed(w):
        a, b = _EDGE_ENDS[e]
        cur = a if s == 1 else b
    return Path(cur, end, tuple(w))


def _collapse_jumps(ch):
    """Collapse every maximal run of jumps to a single jump or nothing."""
    changed = True
    while changed:
        changed = False
        toks = ch.tokens
        for k in range(len(toks) - 1):
            if toks[k].kind == "Jump" and toks[k + 1].kind == "Jump":
                i, j, v = toks[k].args[0]
                _, l, _ = toks[k + 1].args[0]
                ch.rewrite(k, 2, Xi((i, j, l, v)), (Jump((i, l, v)),))
                changed = True
                break
        else:
            for k, t in enumerate(toks):
                if t.kind == "Jump" and t.args[0][0] == t.args[0][1]:
                    i, _, v = t.args[0]
                    ch.rewrite(k, 1, DeltaA((i, v), -1), ())
                    changed = True
                    break


def _theta_move(ch, k, target_patch, cover):
    """tokens[k] is a letter in patch i and tokens[k+1] the jump (i,h,·):
    move the letter to patch h with a Theta square."""
    t = ch.tokens[k]
    i = _patch(t)
    e, s = _base_letter(t)
    X = cover.base
    a, b = X.edges[e]
    x, y = (a, b) if s == 1 else (b, a)
    h = target_patch
    theta = Path((i, h, x), (i, h, y), (((i, h, e), s),))
    new_letter = CPath(_letter_path(h, e, s, cover))
    ch.rewrite(k, 2, Theta(theta), (Jump((i, h, x)), new_letter))


def _ensure_jump_after(ch, k, h):
    """Make tokens[k+1] a jump to patch h from the patch of tokens[k]."""
    t = ch.tokens[k]
    i = _patch(t)
    v = ends1(t)[1][1]
    nxt = ch.tokens[k + 1] if k + 1 < len(ch.tokens) else None
    if nxt is not None and nxt.kind == "Jump":
        _, j, _ = nxt.args[0]
        if j == h:
            return
        # jump (i,j) ⇒ (h,j)*(i,h)
        ch.rewrite(k + 1, 1, Xi((i, h, j, v), -1), (Jump((i, h, v)), Jump((h, j, v))))
        return
    ch.rewrite(k + 1, 0, VComp(DeltaA((i, v)), Xi((i, h, i, v), -1)),
               (Jump((i, h, v)), Jump((h, i, v))))


def _cancel_once(ch, cover):
    toks = ch.tokens
    for k in range(len(toks) - 1):
        t1 = toks[k]
        if not _letter(t1):
            continue
        e, s = _base_letter(t1)
        t2 = toks[k + 1]
        if _letter(t2):
            if _base_letter(t2) == (e, -s) and _patch(t2) == _patch(t1):
                g1, g2 = t1.args[0], t2.args[0]
                ch.rewrite(k, 2, VComp(CStar(g1, g2), UStar(g1.src)), ())
                return True
            continue
        if t2.kind == "Jump" and k + 2 < len(toks) and _letter(toks[k + 2]) \
                and _base_letter(toks[k + 2]) == (e, -s):
            _theta_move(ch, k, _patch(toks[k + 2]), cover)
            _collapse_jumps(ch)
            return True
    return False


def _cancel_stage(ch, cover):
    _expand(ch)
    _collapse_jumps(ch)
    while _cancel_once(ch, cover):
        _collapse_jumps(ch)


def _hub_stage(ch, cover):
    k = 0
    while k < len(ch.tokens):
        t = ch.tokens[k]
        if _letter(t):
            e, s = _base_letter(t)
            h = cover.hub(e)
            if _patch(t) != h:
                _ensure_jump_after(ch, k, h)
                _theta_move(ch, k, h, cover)
                _collapse_jumps(ch)
                k = 0
                continue
        k += 1


class Codescent:
    """Constructions over a fixed cover."""

    def __init__(self, cover):
        self.cover = cover
        for k in range(1, 4):
            register_space(cover.space(k))
        self.M = PathGroupoid(cover.base)
        self.to_base = CellMap(cover.space(1), cover.base, None)
        self._std = {}
        self._canon = {}

    # -- canonical 2-cells ---------------------------------------------------
    def _standard(self, term, full):
        key = (term, full)
        r = self._std.get(key)
        if r is None:
            ch = Chain(term)
            _cancel_stage(ch, self.cover)
            if full:
                _hub_stage(ch, self.cover)
            r = (ch.result(), ch.tokens)
            self._std[key] = r
        return r

    def canonical_2cell(self, lift1, lift2):
        key = (lift1, lift2)
        r = self._canon.get(key)
        if r is not None:
            return r
        e1, e2 = ends1(lift1), ends1(lift2)
        if e1 != e2:
            raise TypingError("lifts have different endpoints")
        if self.project(lift1) != self.project(lift2):
            raise TypingError("lifts project to different base paths")
        if lift1 is lift2:
            r = Id2(lift1)
        else:
            for full in (False, True):
                A1, t1 = self._standard(lift1, full)
                A2, t2 = self._standard(lift2, full)
                if t1 == t2:
                    r = VComp(A1, inv(A2))
                    break
            else:
                raise ConstructionError("standard forms of two lifts disagree")
        self._canon[key] = r
        return r

    def normalize_jump_hom(self, s, t):
        for x in (s, t):
            if any(a.kind != "Jump" for a in flatten(x)):
                raise TypingError("normalize_jump_hom takes jump words only")
        return self.canonical_2cell(s, t)

    def standard_lift(self, term):
        """Normal-form lift of the same base path with the same endpoints."""
        return rn(self._standard(term, True)[1], ends1(term)[0])

    def lift_path(self, gamma, a, b):
        """A lift of the base path gamma from point a to point b: each edge
        in its hub patch, connected by jumps."""
        if gamma.src != a[1] or gamma.tgt != b[1]:
            raise TypingError("lift endpoints do not lie over the path endpoints")
        cov = self.cover
        toks = []
        cur = a
        for e, s in gamma.word:
            h = cov.hub(e)
            x = cur[1]
            if cur[0] != h:
                toks.append(Jump((cur[0], h, x)))
            lp = _letter_path(h, e, s, cov)
            toks.append(CPath(lp))
            cur = lp.tgt
        if cur != b:
            toks.append(Jump((cur[0], b[0], cur[1])))
        return rn(tuple(toks), a)

    # -- projection and inclusion -------------------------------------------
    def project(self, t):
        M, pi = self.M, self.to_base
        k = t.kind
        if k in ONE_KINDS:
            if k == "Path":
                return pi.path(t.args[0])
            if k in ("Jump", "FormalId"):
                return M.unit1(ends1(t)[0][1])
            return M.comp(self.project(t.args[0]), self.project(t.args[1]))
        if k == "Bigon":
            b = pi.bigon(t.args[0])
            return b if t.args[1] == 1 else M.inv2(b)
        if k == "VComp":
            out = self.project(t.args[0])
            for x in t.args[1:]:
                out = M.vert(self.project(x), out)
            return out
        if k == "HComp":
            return M.horiz(self.project(t.args[0]), self.project(t.args[1]))
        return M.unit2(self.project(src(t)))

    def include(self, cell):
        if isinstance(cell, Path):
            return CPath(cell)
        if isinstance(cell, Bigon):
            return CBigon(cell)
        return FormalId(cell)

    def gamma(self, theta):
        """The component of Γ at a path in Y^[2]: Theta for a single letter,
        pasted along words, and the unitor cluster at identity paths."""
        if len(theta.word) == 1:
            return Theta(theta)
        s = Star(Jump(theta.tgt), CPath(_proj_path(theta, (0,))))
        ch = Chain(s)
        if not theta.word:
            a = ch.tokens[0].args[0].src
            ch.rewrite(0, 1, UStar(a), ())
            alpha = theta.src
            i, j, v = alpha
            ch.rewrite(1, 0, UStar((j, v), -1), (CPath(Path((j, v), (j, v), ())),))
            return ch.result()
        _expand(ch)
        # letters of π1Θ are tokens[0..n-1], the jump α' is last
        n = len(theta.word)
        for idx in range(n - 1, -1, -1):
            (e, sgn) = theta.word[idx]
            a, b = _EDGE_ENDS[e]
            x, y = (a, b) if sgn == 1 else (b, a)
            ch.rewrite(idx, 2, Theta(Path(x, y, ((e, sgn),))),
                       (Jump(x), CPath(_proj_path(Path(x, y, ((e, sgn),)), (1,)))))
        # merge the letters of π2Θ back into one path
        while len(ch.tokens) > 2:
            g1, g2 = ch.tokens[1].args[0], ch.tokens[2].args[0]
            ch.rewrite(1, 2, CStar(g1, g2), (CPath(g1.then(g2)),))
        return ch.result()


# ---------------------------------------------------------------------------
# sections

@dataclass
class SectionChoice:
    chi0: dict
    chi1: dict
    chi2: dict
    overrides: dict = field(default_factory=dict)
    name: str = "chi"

    def validate(self, cover):
        X = cover.base
        for table, cells, label in ((self.chi0, X.vertices, "vertex"),
                                    (self.chi1, X.edges, "edge"),
                                    (self.chi2, X.faces, "face")):
            for c in cells:
                if c not in table:
                    raise ConstructionError(f"{self.name}: no patch chosen for {label} {c!r}")
                i = table[c]
                if not 0 <= i < len(cover.patches) or c not in cover.patches[i]:
                    raise ConstructionError(f"{self.name}: {label} {c!r} is not in patch {i}")
        return True

    @classmethod
    def hub(cls, cover, name="hub"):
        X = cover.base
        return cls({v: cover.hub(v) for v in X.vertices}, {e: cover.hub(e) for e in X.edges},
                   {F: cover.hub(F) for F in X.faces}, name=name)

    @classmethod
    def last(cls, cover, name="last"):
        X = cover.base
        pick = lambda c: cover.containing(c)[-1]
        return cls({v: pick(v) for v in X.vertices}, {e: pick(e) for e in X.edges},
                   {F: pick(F) for F in X.faces}, name=name)

    @classmethod
    def random(cls, cover, rng, name="random"):
        X = cover.base
        pick = lambda c: rng.choice(cover.containing(c))
        return cls({v: pick(v) for v in X.vertices}, {e: pick(e) for e in X.edges},
                   {F: pick(F) for F in X.faces}, name=name)


def _inv_atom(t):
    if t.kind == "Path":
        return CPath(t.args[0].inverse())
    i, j, v = t.args[0]
    return Jump((j, i, v))


class Section:
    """The section 2-functor s: P2(M) → codescent terms for a SectionChoice."""

    def __init__(self, cd, choice):
        choice.validate(cd.cover)
        self.cd, self.choice = cd, choice
        self.cover = cd.cover
        self.M = cd.M
        self._letter_cache = {}
        for e, term in choice.overrides.items():
            p = cd.project(term)
            if p.word != ((e, 1),):
                raise ConstructionError(f"override for {e!r} does not project to the edge")
            a, b = ends1(term)
            x, y = self.cover.base.edges[e]
            if a != self.obj(x) or b != self.obj(y):
                raise ConstructionError(f"override for {e!r} has the wrong endpoints")

    def obj(self, x):
        return (self.choice.chi0[x], x)

    def letter_tokens(self, letter):
        r = self._letter_cache.get(letter)
        if r is not None:
            return r
        e, s = letter
        if e in self.choice.overrides:
            toks = flatten(self.choice.overrides[e])
        else:
            X = self.cover.base
            x, y = X.edges[e]
            c = self.choice.chi1[e]
            toks = []
            if self.choice.chi0[x] != c:
                toks.append(Jump((self.choice.chi0[x], c, x)))
            toks.append(CPath(_letter_path(c, e, 1, self.cover)))
            if self.choice.chi0[y] != c:
                toks.append(Jump((c, self.choice.chi0[y], y)))
            toks = tuple(toks)
        if s == -1:
            toks = tuple(_inv_atom(t) for t in reversed(toks))
        self._letter_cache[letter] = toks
        return toks

    def word_tokens(self, word):
        out = ()
        for l in word:
            out += self.letter_tokens(l)
        return out

    def tokens(self, path):
        return self.word_tokens(path.word)

    def one(self, path):
        return rn(self.tokens(path), self.obj(path.src))

    def comp(self, f, g):
        """c_{f,g}: s(g) * s(f) ⇒ s(g∘f)."""
        return self.cd.canonical_2cell(Star(self.one(g), self.one(f)), self.one(f.then(g)))

    def unit(self, x):
        return Id2(FormalId(self.obj(x)))

    def face_2cell(self, F, sign, prefix, suffix):
        """s of one step: s(P·in·S) ⇒ s(P·out·S) through the face in patch χ2."""
        cd, X = self.cd, self.cover.base
        a_w, b_w = X.faces[F]
        w_in, w_out = (a_w, b_w) if sign == 1 else (b_w, a_w)
        x, y = X.face_ends(F)
        c = self.choice.chi2[F]
        P = X.path(prefix) if prefix else Path(x, x, ())
        S = X.path(suffix) if suffix else Path(y, y, ())
        tP, tS = self.tokens(P), self.tokens(S)
        J = (Jump((self.choice.chi0[x], c, x)),)
        Jb = (Jump((c, self.choice.chi0[y], y)),)
        lift = lambda w: CPath(Path((c, x), (c, y), tuple(((c, e), s) for e, s in w)))
        framed_in = tP + J + (lift(w_in),) + Jb + tS
        framed_out = tP + J + (lift(w_out),) + Jb + tS
        start = self.obj(P.src)
        src_word = reduce_word(tuple(prefix) + tuple(w_in) + tuple(suffix))
        tgt_word = reduce_word(tuple(prefix) + tuple(w_out) + tuple(suffix))
        s_src = rn(self.word_tokens(src_word), start)
        s_tgt = rn(self.word_tokens(tgt_word), start)
        sigma = Bigon(Path((c, x), (c, y), lift(w_in).args[0].word),
                      (Step((), (c, F), sign, ()),),
                      Path((c, x), (c, y), lift(w_out).args[0].word))
        k = len(tP) + 1
        mid = local_2cell(framed_in, start, k, 1, CBigon(sigma), (lift(w_out),))
        A1 = cd.canonical_2cell(s_src, rn(framed_in, start))
        A2 = cd.canonical_2cell(rn(framed_out, start), s_tgt)
        return VComp(A1, mid, A2)

    def two(self, bigon):
        if not bigon.steps:
            return Id2(self.one(bigon.src))
        parts = [self.face_2cell(st.face, st.sign, st.prefix, st.suffix) for st in bigon.steps]
        return VComp(*parts)

    def functor(self):
        return TwoFunctor(self.M, None, self.obj, self.one, self.two, self.comp, self.unit,
                          name=f"s[{self.choice.name}]")


def section_functor(cd, choice):
    return Section(cd, choice)


class Zeta:
    """ζ: s∘p̄ → id with inverse ξ and the unit/counit clusters, all as
    term-valued components."""

    def __init__(self, section):
        self.s = section
        self.cd = section.cd

    def at0(self, a):
        return Jump((self.s.choice.chi0[a[1]], a[0], a[1]))

    def at1(self, L):
        a, b = ends1(L)
        sp = self.s.one(self.cd.project(L))
        return self.cd.canonical_2cell(Star(self.at0(b), sp), Star(L, self.at0(a)))

    def inv0(self, a):
        return Jump((a[0], self.s.choice.chi0[a[1]], a[1]))

    def inv1(self, L):
        a, b = ends1(L)
        sp = self.s.one(self.cd.project(L))
        return self.cd.canonical_2cell(Star(self.inv0(b), L), Star(sp, self.inv0(a)))

    def i_at(self, a):
        """ξ(a) * ζ(a) ⇒ id*_{s(p)}."""
        s = self.s.obj(a[1])
        return self.cd.canonical_2cell(Star(self.inv0(a), self.at0(a)), FormalId(s))

    def j_at(self, a):
        """id*_a ⇒ ζ(a) * ξ(a)."""
        return self.cd.canonical_2cell(FormalId(a), Star(self.at0(a), self.inv0(a)))


def zeta(section):
    return Zeta(section)


def relation_instances(cover):
    """Both sides of every jump-coherence identification: the pentagon-type
    relation at each point of Y^[4] and the two unit relations at each point
    of Y^[2].  Yields (label, point, lhs, rhs)."""
    J = lambda i, j, v: Jump((i, j, v))
    for (i, j, k, l, v) in cover.space(4).vertices:
        lhs = VComp(Assoc(J(i, j, v), J(j, k, v), J(k, l, v)),
                    HComp(Id2(J(k, l, v)), Xi((i, j, k, v))), Xi((i, k, l, v)))
        rhs = VComp(HComp(Xi((j, k, l, v)), Id2(J(i, j, v))), Xi((i, j, l, v)))
        yield "V1", (i, j, k, l, v), lhs, rhs
    for (i, j, v) in cover.space(2).vertices:
        lhs = VComp(HComp(DeltaA((j, v)), Id2(J(i, j, v))), Xi((i, j, j, v)))
        yield "V2", (i, j, v), lhs, RUnif(J(i, j, v))
        lhs = VComp(HComp(Id2(J(i, j, v)), DeltaA((i, v))), Xi((i, i, j, v)))
        yield "V2", (i, j, v), lhs, LUnif(J(i, j, v))

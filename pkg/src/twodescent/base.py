"""Combinatorial base spaces, their free path 2-groupoids, covers and the
fibre-product spaces Y^[k] with projection and diagonal maps.

Words are tuples of letters ``(edge, ±1)``.  A 1-cell is a reduced word with
explicit endpoints (``Path``); a 2-cell is a sequence of whiskered face
steps (``Bigon``).  Two 2-cells are equal when they have the same boundary
and the same signed count of faces, each face weighted by the homotopy
class of the path that whiskers it in.  This is exactly equality in the free
strict 2-groupoid (the free crossed module is detected by its boundary
together with its image in the chains of the universal cover), so the
exchange law holds in every case, including steps whose whiskers cancel.
"""
from collections import Counter, deque
import functools
from dataclasses import dataclass, field
from functools import cached_property
import itertools

from .twocat import TypingError, ConstructionError, CapabilityError, TwoFunctor


# ---------------------------------------------------------------------------
# words

def inv_word(w):
    return tuple((e, -s) for e, s in reversed(w))


def reduce_word(w):
    out = []
    for e, s in w:
        if out and out[-1][0] == e and out[-1][1] == -s:
            out.pop()
        else:
            out.append((e, s))
    return tuple(out)


def parse_word(text):
    """'a b^-1 c' -> (('a',1),('b',-1),('c',1))."""
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
    return tuple(out)


def _cell_str(c):
    return "(" + ",".join(map(str, c)) + ")" if isinstance(c, tuple) else str(c)


def word_str(w):
    return " ".join(_cell_str(e) if s == 1 else f"{_cell_str(e)}^-1" for e, s in w)


# ---------------------------------------------------------------------------
# computads

class Computad:
    """Vertices, directed edges and faces between co-terminal edge words."""

    def __init__(self, vertices, edges, faces=None, name="X"):
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        self.faces = {k: (tuple(a), tuple(b)) for k, (a, b) in (faces or {}).items()}
        self.name = name
        self._validate()

    def _validate(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ConstructionError(f"{self.name}: duplicate vertex")
        names = Counter(list(self.vertices) + list(self.edges) + list(self.faces))
        dup = [n for n, c in names.items() if c > 1]
        if dup:
            raise ConstructionError(f"{self.name}: cell name used twice: {dup[0]!r}")
        for e, (s, t) in self.edges.items():
            if s not in vs or t not in vs:
                raise ConstructionError(f"{self.name}: edge {e!r} has an unknown endpoint")
        for F, (a, b) in self.faces.items():
            if not a and not b:
                raise ConstructionError(f"{self.name}: face {F!r} has two empty boundary words")
            for w in (a, b):
                if reduce_word(w) != w:
                    raise ConstructionError(f"{self.name}: face {F!r} boundary word is not reduced")
            ea, eb = self.word_ends(a), self.word_ends(b)
            if ea is None or eb is None:
                raise ConstructionError(f"{self.name}: face {F!r} boundary word is not a path")
            if a and b and ea != eb:
                raise ConstructionError(f"{self.name}: face {F!r} boundary words are not co-terminal")
            if not a and eb[0] != eb[1] or not b and ea[0] != ea[1]:
                raise ConstructionError(f"{self.name}: face {F!r} empty side needs a closed other side")

    def letter_ends(self, letter):
        e, s = letter
        if e not in self.edges:
            return None
        a, b = self.edges[e]
        return (a, b) if s == 1 else (b, a)

    def word_ends(self, w):
        """(start, end) of a nonempty word, or None if it does not chain."""
        if not w:
            return None
        ends = [self.letter_ends(l) for l in w]
        if any(x is None for x in ends):
            return None
        for (_, t), (s, _) in zip(ends, ends[1:]):
            if t != s:
                return None
        return ends[0][0], ends[-1][1]

    def face_ends(self, F):
        a, b = self.faces[F]
        return self.word_ends(a) or self.word_ends(b)

    def face_start(self, F):
        return self.face_ends(F)[0]

    def cells(self):
        return set(self.vertices) | set(self.edges) | set(self.faces)

    def path(self, word, start=None):
        word = parse_word(word) if isinstance(word, str) else tuple(word)
        word = reduce_word(word)
        if not word:
            if start is None:
                raise TypingError("empty path needs a start vertex")
            if start not in self.vertices:
                raise TypingError(f"unknown vertex {start!r}")
            return Path(start, start, ())
        ends = self.word_ends(word)
        if ends is None:
            raise TypingError(f"{self.name}: word {word_str(word)!r} is not a path")
        if start is not None and start != ends[0]:
            raise TypingError(f"{self.name}: word does not start at {start!r}")
        return Path(ends[0], ends[1], word)

    def face_cell(self, F, sign=1):
        """The generating 2-cell of a face (or its inverse)."""
        a, b = self.faces[F]
        x, y = self.face_ends(F)
        src = Path(x, y, a if sign == 1 else b)
        return Bigon(src, (Step((), F, sign, ()),))

    def __repr__(self):
        return (f"Computad({self.name}: {len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, {len(self.faces)} faces)")

    @cached_property
    def homotopy(self):
        return _HomotopySolver(self)


@dataclass(frozen=True)
class Path:
    src: object
    tgt: object
    word: tuple

    def __str__(self):
        return word_str(self.word) if self.word else f"id[{_cell_str(self.src)}]"

    def then(self, other):
        if self.tgt != other.src:
            raise TypingError(f"paths do not compose: {self} then {other}")
        return Path(self.src, other.tgt, reduce_word(self.word + other.word))

    def inverse(self):
        return Path(self.tgt, self.src, inv_word(self.word))


@dataclass(frozen=True)
class Step:
    """prefix · face^sign · suffix."""
    prefix: tuple
    face: object
    sign: int
    suffix: tuple


@dataclass(frozen=True)
class Bigon:
    src: Path
    steps: tuple
    tgt: Path = field(default=None, compare=False)

    def __str__(self):
        if not self.steps:
            return f"id[{_cell_str(self.src)}]"
        parts = []
        for st in self.steps:
            f = _cell_str(st.face) if st.sign == 1 else f"{_cell_str(st.face)}^-1"
            parts.append(f"<{word_str(st.prefix)}|{f}|{word_str(st.suffix)}>")
        return " ; ".join(parts)


# ---------------------------------------------------------------------------
# homotopy classes of paths (for 2-cell equality)

class _HomotopySolver:
    """Canonical keys for homotopy classes of paths rel endpoints.

    A spanning forest turns paths into words in the non-tree edges; Tietze
    moves eliminate generators using the face relators.  The remaining
    presentation must be free or free abelian (true for every bundled
    complex); anything else raises CapabilityError."""

    def __init__(self, X):
        self.X = X
        self.root, self.tree_word = {}, {}
        adj = {v: [] for v in X.vertices}
        for e, (s, t) in X.edges.items():
            adj[s].append((e, 1, t))
            adj[t].append((e, -1, s))
        tree = set()
        for v in X.vertices:
            if v in self.root:
                continue
            self.root[v], self.tree_word[v] = v, ()
            q = deque([v])
            while q:
                u = q.popleft()
                for e, s, w in adj[u]:
                    if w not in self.root:
                        self.root[w] = v
                        self.tree_word[w] = self.tree_word[u] + ((e, s),)
                        tree.add(e)
                        q.append(w)
        self.gens = [e for e in X.edges if e not in tree]
        rels = []
        for F in X.faces:
            a, b = X.faces[F]
            x = X.face_start(F)
            loop = self.tree_word[x] + a + inv_word(b) + inv_word(self.tree_word[x])
            rels.append(_cyc(self._gen_word(loop)))
        self.subst = {}
        self.kind, self.live = self._simplify([r for r in rels if r])

    def _gen_word(self, w):
        gens = set(self.gens)
        return reduce_word(tuple(l for l in w if l[0] in gens))

    def _apply(self, w):
        out = []
        for g, s in w:
            if g in self.subst:
                out.extend(self.subst[g] if s == 1 else inv_word(self.subst[g]))
            else:
                out.append((g, s))
        return reduce_word(tuple(out))

    def _simplify(self, rels):
        while True:
            rels = [r for r in (_cyc(r) for r in rels) if r]
            hit = None
            for k, r in enumerate(rels):
                cnt = Counter(g for g, _ in r)
                for pos, (g, s) in enumerate(r):
                    if cnt[g] == 1:
                        hit = (k, pos)
                        break
                if hit:
                    break
            if not hit:
                break
            k, pos = hit
            r = rels.pop(k)
            g, s = r[pos]
            u, v = r[:pos], r[pos + 1:]
            val = reduce_word(inv_word(u) + inv_word(v)) if s == 1 else reduce_word(v + u)
            self.subst = {h: reduce_word(self._sub_one(w, g, val)) for h, w in self.subst.items()}
            self.subst[g] = val
            rels = [reduce_word(self._sub_one(x, g, val)) for x in rels]
        live = sorted({g for g in self.gens if g not in self.subst}, key=str)
        if not rels:
            return "free", live
        pairs = set()
        for r in rels:
            if len(r) != 4:
                break
            (a, s1), (b, s2), (c, s3), (d, s4) = r
            if not (a == c and b == d and a != b and s1 == -s3 and s2 == -s4):
                break
            pairs.add(frozenset((a, b)))
        else:
            want = {frozenset(p) for p in itertools.combinations(live, 2)}
            if pairs == want:
                return "abelian", live
        raise CapabilityError(f"{self.X.name}: fundamental group is neither free nor free abelian")

    @staticmethod
    def _sub_one(w, g, val):
        out = []
        for h, s in w:
            if h == g:
                out.extend(val if s == 1 else inv_word(val))
            else:
                out.append((h, s))
        return tuple(out)

    def key(self, x, word):
        """Canonical key of the class of a path starting at x (relative to x's
        root; all paths compared share the same start)."""
        end = x
        for l in word:
            end = self.X.letter_ends(l)[1]
        loop = self.tree_word[x] + tuple(word) + inv_word(self.tree_word[end])
        g = self._apply(self._gen_word(loop))
        if self.kind == "abelian":
            c = Counter()
            for h, s in g:
                c[h] += s
            g = tuple((h, c[h]) for h in self.live if c[h])
        return (end, g)


def _cyc(w):
    w = list(reduce_word(w))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


# ---------------------------------------------------------------------------
# the free path 2-groupoid

class PathGroupoid:
    """The free strict 2-groupoid P2(X) on a computad, with a finite window
    of cells used by the checkers.

    ``max_word`` bounds the reduced words enumerated as 1-cells and
    ``whiskered`` adds face steps whiskered by single letters."""

    strict = True

    def __init__(self, X, max_word=1, whiskered=False):
        self.X = X
        self.max_word = max_word
        self.whiskered = whiskered

    # -- construction -----------------------------------------------------
    def path(self, word, start=None):
        return self.X.path(word, start)

    def bigon(self, src, steps):
        """A 2-cell from a source path and a step list, typechecked."""
        cur = src
        for st in steps:
            cur = self._apply_step(cur, st)
        return Bigon(src, tuple(steps), cur)

    def _apply_step(self, cur, st):
        X = self.X
        if st.face not in X.faces:
            raise TypingError(f"unknown face {st.face!r}")
        a, b = X.faces[st.face]
        fin, fout = (a, b) if st.sign == 1 else (b, a)
        x0 = X.face_start(st.face)
        if st.prefix:
            ends = X.word_ends(st.prefix)
            if ends is None or ends[1] != x0:
                raise TypingError("step prefix does not end at the face")
            start = ends[0]
        else:
            start = x0
        if st.suffix:
            ends = X.word_ends(st.suffix)
            y0 = X.face_ends(st.face)[1]
            if ends is None or ends[0] != y0:
                raise TypingError("step suffix does not start at the face end")
        w_in = reduce_word(st.prefix + fin + st.suffix)
        if cur.word != w_in or (not w_in and cur.src != start):
            raise TypingError(f"step <{word_str(st.prefix)}|{st.face}|{word_str(st.suffix)}> "
                              f"does not apply to {cur}")
        w_out = reduce_word(st.prefix + fout + st.suffix)
        end = cur.tgt
        return Path(cur.src, end, w_out)

    def face(self, F, sign=1):
        c = self.X.face_cell(F, sign)
        return self.bigon(c.src, c.steps)

    # -- protocol ---------------------------------------------------------
    def cells0(self):
        return self.X.vertices

    def cells1(self):
        X = self.X
        out = [Path(v, v, ()) for v in X.vertices]
        letters = [(e, s) for e in X.edges for s in (1, -1)]
        words = [()]
        for n in range(1, self.max_word + 1):
            nxt = []
            for w in words:
                for l in letters:
                    if w and w[-1][0] == l[0] and w[-1][1] == -l[1]:
                        continue
                    cand = w + (l,)
                    if X.word_ends(cand) is not None:
                        nxt.append(cand)
            words = nxt
            out.extend(X.path(w) for w in words)
        return out

    def cells2(self):
        X = self.X
        out = [self.unit2(p) for p in self.cells1()]
        for F in X.faces:
            for s in (1, -1):
                out.append(self.face(F, s))
                if self.whiskered:
                    x, y = X.face_ends(F)
                    for e, (u, v) in X.edges.items():
                        for l, (p, q) in (((e, 1), (u, v)), ((e, -1), (v, u))):
                            if q == x:
                                c = X.face_cell(F, s)
                                out.append(self.bigon(self.X.path((l,) + c.src.word
                                                                  if c.src.word else (l,)),
                                                      (Step((l,), F, s, ()),)))
        return out

    def src1(self, p):
        return p.src

    def tgt1(self, p):
        return p.tgt

    def src2(self, a):
        return a.src

    def tgt2(self, a):
        return a.tgt

    def comp(self, g, f):
        if f is None or g is None or f.tgt != g.src:
            return None
        return f.then(g)

    def vert(self, b, a):
        if a is None or b is None or a.tgt != b.src:
            return None
        return Bigon(a.src, a.steps + b.steps, b.tgt)

    def horiz(self, b, a):
        if a is None or b is None or a.src.tgt != b.src.src:
            return None
        q, p2 = b.src, a.tgt
        steps = [Step(st.prefix, st.face, st.sign, reduce_word(st.suffix + q.word))
                 for st in a.steps]
        steps += [Step(reduce_word(p2.word + st.prefix), st.face, st.sign, st.suffix)
                  for st in b.steps]
        return self.bigon(a.src.then(q), steps)

    def unit1(self, x):
        return Path(x, x, ())

    def unit2(self, p):
        return Bigon(p, (), p)

    def assoc(self, f, g, h):
        return self.unit2(f.then(g).then(h))

    def lunit(self, f):
        return self.unit2(f)

    def runit(self, f):
        return self.unit2(f)

    def inv2(self, a):
        steps = tuple(Step(st.prefix, st.face, -st.sign, st.suffix) for st in reversed(a.steps))
        return Bigon(a.tgt, steps, a.src)

    def inv1(self, p):
        return p.inverse()

    def eq1(self, f, g):
        return f == g

    def key2(self, a):
        """Boundary plus signed face counts weighted by whisker classes."""
        H = self.X.homotopy
        x = a.src.src
        c = Counter()
        for st in a.steps:
            c[(st.face, H.key(x, st.prefix))] += st.sign
        return (a.src, a.tgt, frozenset((k, v) for k, v in c.items() if v))

    def eq2(self, a, b):
        return self.key2(a) == self.key2(b)

    def is_identity2(self, a):
        return a.src == a.tgt and not self.key2(a)[2]

    # -- exchange normal form ----------------------------------------------
    def normal_form(self, a, rng=None):
        """Representative obtained by cancelling adjacent inverse steps and
        moving literally independent steps leftmost-first.  With ``rng`` the
        applicable moves are taken in random order (confluence tests)."""
        steps = list(a.steps)
        while True:
            moves = self._moves(a.src, steps)
            if not moves:
                break
            k, kind = moves[rng.randrange(len(moves))] if rng else moves[0]
            if kind == "cancel":
                del steps[k:k + 2]
            else:
                steps[k:k + 2] = self._swap(a.src, steps, k)
        return Bigon(a.src, tuple(steps), a.tgt)

    def _words(self, src, steps):
        ws = [src.word]
        cur = src
        for st in steps:
            cur = self._apply_step(cur, st)
            ws.append(cur.word)
        return ws

    def _moves(self, src, steps):
        out = []
        ws = self._words(src, steps)
        for k in range(len(steps) - 1):
            s1, s2 = steps[k], steps[k + 1]
            if (s1.prefix, s1.face, s1.suffix) == (s2.prefix, s2.face, s2.suffix) and s1.sign == -s2.sign:
                out.append((k, "cancel"))
                continue
            if self._independent(ws[k + 1], s1, s2) and self._position(s2) < self._position(s1):
                out.append((k, "swap"))
        return out

    def _region(self, st):
        a, b = self.X.faces[st.face]
        fout = b if st.sign == 1 else a
        return len(st.prefix), len(st.prefix) + len(fout)

    def _position(self, st):
        return len(st.prefix)

    def _literal(self, word, st, side):
        a, b = self.X.faces[st.face]
        w = (b if st.sign == 1 else a) if side == "out" else (a if st.sign == 1 else b)
        return st.prefix + w + st.suffix == word

    def _independent(self, mid, s1, s2):
        if not (self._literal(mid, s1, "out") and self._literal(mid, s2, "in")):
            return False
        a1, b1 = self._region(s1)
        a, b = self.X.faces[s2.face]
        fin2 = a if s2.sign == 1 else b
        a2, b2 = len(s2.prefix), len(s2.prefix) + len(fin2)
        return b2 <= a1 or b1 <= a2

    def _swap(self, src, steps, k):
        s1, s2 = steps[k], steps[k + 1]
        X = self.X
        a, b = X.faces[s1.face]
        in1, out1 = (a, b) if s1.sign == 1 else (b, a)
        a, b = X.faces[s2.face]
        in2, out2 = (a, b) if s2.sign == 1 else (b, a)
        # s2 lies left of s1 in the middle word: s2.prefix + in2 + mid + out1 + s1.suffix
        mid = s2.suffix[:len(s2.suffix) - len(out1) - len(s1.suffix)]
        t1 = Step(s2.prefix, s2.face, s2.sign, mid + in1 + s1.suffix)
        t2 = Step(s2.prefix + out2 + mid, s1.face, s1.sign, s1.suffix)
        return [t1, t2]


def free_path_2groupoid(X, max_word=1, whiskered=False):
    return PathGroupoid(X, max_word=max_word, whiskered=whiskered)


# ---------------------------------------------------------------------------
# covers and fibre products

class CoverSpec:
    """Patches U_i of a computad, each closed under boundaries."""

    def __init__(self, base, patches, name="cover"):
        self.base = base
        self.patches = [frozenset(p) for p in patches]
        self.name = name
        self._validate()

    def _validate(self):
        X = self.base
        allc = X.cells()
        for i, U in enumerate(self.patches):
            extra = U - allc
            if extra:
                raise ConstructionError(f"{self.name}: patch {i} names unknown cell {sorted(extra, key=str)[0]!r}")
            for c in U:
                for b in self._boundary(c):
                    if b not in U:
                        raise ConstructionError(
                            f"{self.name}: patch {i} contains {c!r} but not its boundary cell {b!r}")
        for c in list(X.vertices) + list(X.edges) + list(X.faces):
            if not any(c in U for U in self.patches):
                raise ConstructionError(f"{self.name}: cell {c!r} lies in no patch")

    def _boundary(self, c):
        X = self.base
        if c in X.edges:
            return set(X.edges[c])
        if c in X.faces:
            a, b = X.faces[c]
            out = {e for e, _ in a + b}
            for e in out.copy():
                out |= set(X.edges[e])
            return out
        return set()

    def __len__(self):
        return len(self.patches)

    def containing(self, c):
        return [i for i, U in enumerate(self.patches) if c in U]

    def hub(self, c):
        """Smallest patch index containing c."""
        return self.containing(c)[0]

    @cached_property
    def spaces(self):
        return {}

    def space(self, k):
        """Y^[k] (k = 0 is the base itself)."""
        if k == 0:
            return self.base
        if k not in self.spaces:
            self.spaces[k] = build_fiber_space(self, k)
        return self.spaces[k]

    def groupoid(self, k, **kw):
        return PathGroupoid(self.space(k), **kw)


def build_fiber_space(cover, k):
    if not 1 <= k <= 4:
        raise ValueError("fibre products are built for 1 <= k <= 4")
    X = cover.base

    def tuples(c):
        inside = cover.containing(c)
        return itertools.product(inside, repeat=k)

    verts, edges, faces = [], {}, {}
    for v in X.vertices:
        verts.extend(I + (v,) for I in tuples(v))
    for e, (s, t) in X.edges.items():
        for I in tuples(e):
            edges[I + (e,)] = (I + (s,), I + (t,))
    for F, (a, b) in X.faces.items():
        for I in tuples(F):
            lift = lambda w: tuple((I + (e,), s) for e, s in w)
            faces[I + (F,)] = (lift(a), lift(b))
    Y = Computad(verts, edges, faces, name=f"{cover.name}^[{k}]")
    Y.k, Y.cover = k, cover
    return Y


def build_fiber_spaces(X, cover, k=4):
    """{1: Y, ..., k: Y^[k]} for a cover of X."""
    if cover.base is not X:
        raise ValueError("cover belongs to a different computad")
    return {j: cover.space(j) for j in range(1, k + 1)}


class CellMap:
    """A cellular map between fibre spaces of one cover (or to the base):
    (i_1..i_k, c) -> (i_{p_1}..i_{p_m}, c).  ``positions`` None maps to the
    base, dropping all indices; ``patch_map`` relabels indices (refinements)."""

    def __init__(self, source, target, positions, patch_map=None, name=None):
        self.source, self.target = source, target
        self.positions = None if positions is None else tuple(positions)
        self.patch_map = patch_map
        self.name = name or (f"pi{''.join(str(p + 1) for p in positions)}"
                             if positions is not None else "pi")

    def cell(self, c):
        if self.positions is None:
            return c[-1] if isinstance(c, tuple) else c
        if not isinstance(c, tuple):
            I, base = (), c
        else:
            I, base = c[:-1], c[-1]
        J = tuple(I[p] for p in self.positions)
        if self.patch_map is not None:
            J = tuple(self.patch_map[j] for j in J)
        return J + (base,)

    def word(self, w):
        return reduce_word(tuple((self.cell(e), s) for e, s in w))

    def path(self, p):
        return Path(self.cell(p.src), self.cell(p.tgt), self.word(p.word))

    def bigon(self, a):
        steps = tuple(Step(self.word(st.prefix), self.cell(st.face), st.sign, self.word(st.suffix))
                      for st in a.steps)
        return Bigon(self.path(a.src), steps, self.path(a.tgt))

    def then(self, other):
        """other ∘ self."""
        return _ComposedMap(self, other)

    def check(self):
        """Every generator lands on a generator with matching boundary."""
        S, T = self.source, self.target
        for v in S.vertices:
            if self.cell(v) not in T.vertices:
                raise TypingError(f"{self.name}: vertex {v!r} has no image")
        for e, (s, t) in S.edges.items():
            if T.edges.get(self.cell(e)) != (self.cell(s), self.cell(t)):
                raise TypingError(f"{self.name}: edge {e!r} is not mapped cellularly")
        for F, (a, b) in S.faces.items():
            if T.faces.get(self.cell(F)) != (self.word(a), self.word(b)):
                raise TypingError(f"{self.name}: face {F!r} is not mapped cellularly")
        return True


class _ComposedMap(CellMap):
    def __init__(self, first, second):
        self.first, self.second = first, second
        self.source, self.target = first.source, second.target
        self.name = f"{second.name}∘{first.name}"

    def cell(self, c):
        return self.second.cell(self.first.cell(c))


def projection(cover, k, positions):
    """π_{positions}: Y^[k] -> Y^[len(positions)] (positions are 0-based)."""
    return CellMap(cover.space(k), cover.space(len(positions)), positions)


def to_base(cover, k):
    return CellMap(cover.space(k), cover.base, None)


def diagonal(cover, pattern):
    """Δ-family maps from a pattern like (0, 0) for Δ: Y -> Y^[2] or
    (0, 1, 0) for Δ121: Y^[2] -> Y^[3]."""
    k = max(pattern) + 1
    return CellMap(cover.space(k), cover.space(len(pattern)), pattern,
                   name="Delta" + "".join(str(p + 1) for p in pattern))


def induced_functor(f, S=None, T=None):
    """The strict 2-functor f_* between free path 2-groupoids."""
    S = S or PathGroupoid(f.source)
    T = T or PathGroupoid(f.target)
    return TwoFunctor(S, T, f.cell, functools.lru_cache(maxsize=None)(f.path),
                      functools.lru_cache(maxsize=None)(f.bigon), name=f"{f.name}_*")


# ---------------------------------------------------------------------------
# bundled bases

def close_cells(X, seeds):
    """Smallest boundary-closed set of cells containing seeds."""
    out = set(seeds)
    for c in list(out):
        if c in X.faces:
            a, b = X.faces[c]
            out |= {e for e, _ in a + b}
    for c in list(out):
        if c in X.edges:
            out |= set(X.edges[c])
    return out


def point_base():
    X = Computad(["pt"], {}, {}, name="point")
    return X, CoverSpec(X, [{"pt"}], name="point")


def cycle_base(n=6, patches=2):
    """Cycle C_n (no faces).  Two patches overlap in two arcs; with three
    patches each patch is an arc of about n/3 + 1 edges."""
    vs = [f"v{k}" for k in range(n)]
    es = {f"e{k}": (f"v{k}", f"v{(k + 1) % n}") for k in range(n)}
    X = Computad(vs, es, name=f"C{n}")
    if patches == 2:
        h = n // 2 + 1
        cov = [close_cells(X, [f"e{k}" for k in range(h)]),
               close_cells(X, [f"e{k % n}" for k in range(h - 1, n + 1)])]
    else:
        step = n // patches
        cov = [close_cells(X, [f"e{k % n}" for k in range(p * step, p * step + step + 1)])
               for p in range(patches)]
    return X, CoverSpec(X, cov, name=f"C{n}/{patches}")


def grid_base(n=2):
    """n×n square grid (a disk); patches are the left and right columns
    of squares, overlapping along the middle."""
    vs = [f"p{a}{b}" for a in range(n + 1) for b in range(n + 1)]
    es, fs = {}, {}
    for a in range(n + 1):
        for b in range(n + 1):
            if a < n:
                es[f"h{a}{b}"] = (f"p{a}{b}", f"p{a + 1}{b}")
            if b < n:
                es[f"v{a}{b}"] = (f"p{a}{b}", f"p{a}{b + 1}")
    for a in range(n):
        for b in range(n):
            fs[f"sq{a}{b}"] = (((f"h{a}{b}", 1), (f"v{a + 1}{b}", 1)),
                               ((f"v{a}{b}", 1), (f"h{a}{b + 1}", 1)))
    X = Computad(vs, es, fs, name=f"grid{n}")
    half = (n + 1) // 2
    cov = [close_cells(X, [f"sq{a}{b}" for a in range(half) for b in range(n)]),
           close_cells(X, [f"sq{a}{b}" for a in range(half - 1 if n > 1 else 0, n) for b in range(n)])]
    return X, CoverSpec(X, cov, name=f"grid{n}/2")


def torus_base(n=3):
    """n×n torus: h(a,b): (a,b) -> (a+1,b), v(a,b): (a,b) -> (a,b+1), square
    [h(a,b), v(a+1,b)] => [v(a,b), h(a,b+1)].  Four patches, each the
    closure of a 2×2 block of squares."""
    vs = [f"p{a}{b}" for a in range(n) for b in range(n)]
    es, fs = {}, {}
    for a in range(n):
        for b in range(n):
            es[f"h{a}{b}"] = (f"p{a}{b}", f"p{(a + 1) % n}{b}")
            es[f"v{a}{b}"] = (f"p{a}{b}", f"p{a}{(b + 1) % n}")
    for a in range(n):
        for b in range(n):
            fs[f"sq{a}{b}"] = (((f"h{a}{b}", 1), (f"v{(a + 1) % n}{b}", 1)),
                               ((f"v{a}{b}", 1), (f"h{a}{(b + 1) % n}", 1)))
    X = Computad(vs, es, fs, name=f"torus{n}")
    blocks = [(0, 1), (n - 1, 0)]
    cov = [close_cells(X, [f"sq{a}{b}" for a in A for b in B]) for A in blocks for B in blocks]
    return X, CoverSpec(X, cov, name=f"torus{n}/4")


def octahedron_base():
    """Octahedron (a 2-sphere) with poles n, s and equator a, b, c, d."""
    eq = ["a", "b", "c", "d"]
    es = {}
    for x in eq:
        es[f"n{x}"] = ("n", x)
        es[f"{x}s"] = (x, "s")
    for x, y in zip(eq, eq[1:] + eq[:1]):
        es[f"{x}{y}"] = (x, y)
    fs = {}
    for x, y in zip(eq, eq[1:] + eq[:1]):
        fs[f"n{x}{y}"] = (((f"n{x}", 1), (f"{x}{y}", 1)), ((f"n{y}", 1),))
        fs[f"{x}{y}s"] = (((f"{x}{y}", 1), (f"{y}s", 1)), ((f"{x}s", 1),))
    X = Computad(["n", "s"] + eq, es, fs, name="octahedron")
    seeds = [["nab", "nbc", "nda"], ["nbc", "ncd", "bcs"], ["abs", "bcs", "das"], ["cds", "das", "nda"]]
    return X, CoverSpec(X, [close_cells(X, s) for s in seeds], name="octahedron/4")


BASES = {
    "point": point_base,
    "C6": lambda: cycle_base(6, 2),
    "C6x3": lambda: cycle_base(6, 3),
    "grid2": lambda: grid_base(2),
    "torus3": lambda: torus_base(3),
    "octahedron": octahedron_base,
}


def bundled_base(name):
    return BASES[name]()

"""Command-line front end.

Exit codes: 0 ok, 1 check violations, 2 parse or typing errors.
"""
import argparse
import sys

from .base import parse_word
from .codescent import SectionChoice, relation_instances
from .descent import check_descent_object, check_descent_1mor, is_normalized, restrict
from .textio import (
    ParseError, Document, SectionDoc, parse, load, key_str, dump_descent, attach,
)
from .transport import (
    TrivializedFunctor, TransportQuery, check_trivialized, extract, reconstruct, rho, eta,
    holonomy, pairing_R,
)
from .twocat import (
    Report, TypingError, ConstructionError, CapabilityError, check_two_category,
    check_normalized_two_functor, check_pseudonatural, check_two_functor, check_modification,
    identity_transformation, weak_inverse1, fmt,
)
from .instances import two_group_from_crossed_module, delooping


class Outcome:
    def __init__(self):
        self.doc = Document()
        self.lines = []
        self.failed = False

    def report(self, title, rep):
        self.lines.append(f"# {title}: " + ("ok" if not rep else f"{len(rep)} violation(s)"))
        self.lines.extend(str(v) for v in rep)
        if rep:
            self.failed = True


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _select(ws, kind, name):
    items = ws.of_kind(kind)
    if name is not None:
        items = [(n, x) for n, x in items if n == name]
        if not items:
            raise TypingError(f"no {kind} named {name!r}")
    return items


def _choices(ws, obj, name):
    """Section choices for obj's cover: the named one, all in the document
    for that cover, or the hub choice."""
    cover = obj.ctx.cover
    if name is not None:
        ch = ws.get(name, "choice")
        if ws.get(ch.cover_name, "cover") is not cover:
            raise TypingError(f"choice {name!r} belongs to another cover")
        return [ch]
    found = [c for _, c in ws.of_kind("choice") if ws.get(c.cover_name, "cover") is cover]
    return found or [SectionChoice.hub(cover)]


# ---------------------------------------------------------------------------
# commands

def _table_checks(ws, out):
    for name, C in ws.of_kind("2-category"):
        out.report(f"2-category {name}", check_two_category(C))
    for name, F in ws.of_kind("2-functor"):
        out.report(f"2-functor {name}", check_two_functor(F))
    for name, r in ws.of_kind("pseudonat"):
        out.report(f"pseudonat {name}", check_pseudonatural(r))
    for name, A in ws.of_kind("modification"):
        out.report(f"modification {name}", check_modification(A))


def cmd_validate(ws, args, out):
    _table_checks(ws, out)
    for name, D in _select(ws, "descent", None):
        out.report(f"descent {name}", check_descent_object(D))
    for name, tf in _select(ws, "trivialized", None):
        out.report(f"trivialized {name}", check_trivialized(tf))
    for kind in ("computad", "cover", "group", "crossed-module", "monoidal", "choice", "refinement"):
        for name, _ in ws.of_kind(kind):
            out.lines.append(f"# {kind} {name}: ok")


def cmd_extract(ws, args, out):
    for name, tf in _select(ws, "trivialized", args.name):
        D = extract(tf)
        out.doc.sections.append(dump_descent(D, name=f"Ex-{name}"))
        out.report(f"descent Ex-{name}", check_descent_object(D))


def cmd_reconstruct(ws, args, out):
    for name, D in _select(ws, "descent", args.name):
        for ch in _choices(ws, D, args.choice):
            tf = reconstruct(D, ch, validate=True)
            out.doc.sections.append(_dump_reconstruction(tf, name, ch))
            out.report(f"reconstruction {name}/{ch.name}", check_trivialized(tf))


def _dump_reconstruction(tf, name, ch):
    sec = SectionDoc("reconstruction", f"{name}/{ch.name}")
    sec.add("descent", value=name)
    sec.add("choice", value=ch.name)
    sec.add("normalized-descent", value=str(is_normalized(tf.R.D)).lower())
    sec.add("normalized-functor", value=str(check_normalized_two_functor(tf.F)).lower())
    X = tf.ctx.cover.base
    P0 = tf.ctx.groupoid(0)
    for e in X.edges:
        sec.add("F1", e, value=tf.F.one(X.path(((e, 1),))))
    for F in X.faces:
        sec.add("F2", F, value=tf.F.two(P0.face(F)))
    for e in X.edges:
        p = X.path(((e, 1),))
        sec.add("comp", e, "inv", value=tf.F.comp(p, p.inverse()))
    for v in X.vertices:
        sec.add("unit", v, value=tf.F.unit(v))
    for a in tf.ctx.points(1):
        sec.add("t0", key_str(a), value=tf.t_bundle.forward.at0(a))
    return sec


def cmd_roundtrip(ws, args, out):
    if args.direction == "ex-rec":
        for name, D in _select(ws, "descent", args.name):
            rep = check_descent_object(D)
            if rep:
                out.report(f"descent {name} (input)", rep)
                continue
            for ch in _choices(ws, D, args.choice):
                m = rho(D, ch)
                rep = check_descent_1mor(m)
                T = D.ctx.T
                ident = identity_transformation(D.triv_i)
                for a in D.ctx.points(1):
                    if not T.eq1(m.h.at0(a), ident.at0(a)):
                        rep.add("V(rho)=id", f"a={fmt(a)}", m.h.at0(a), ident.at0(a))
                    if weak_inverse1(T, m.h.at0(a)) is None:
                        rep.add("h:invertible", f"a={fmt(a)}", m.h.at0(a))
                sec = SectionDoc("rho", f"{name}/{ch.name}")
                for a in D.ctx.points(2):
                    sec.add("eps", key_str(a), value=m.eps.at(a))
                out.doc.sections.append(sec)
                out.report(f"rho {name}/{ch.name}", rep)
    else:
        for name, tf in _select(ws, "trivialized", args.name):
            rep = check_trivialized(tf)
            if rep:
                out.report(f"trivialized {name} (input)", rep)
                continue
            for ch in _choices(ws, tf, args.choice):
                e = eta(tf, ch)
                rep = check_pseudonatural(e)
                X = tf.ctx.cover.base
                sec = SectionDoc("eta", f"{name}/{ch.name}")
                for v in X.vertices:
                    sec.add("at0", v, value=e.at0(v))
                for ed in X.edges:
                    sec.add("at1", ed, value=e.at1(X.path(((ed, 1),))))
                out.doc.sections.append(sec)
                out.report(f"eta {name}/{ch.name}", rep)


def cmd_holonomy(ws, args, out):
    items = [(n, x) for kind in ("descent", "trivialized") for n, x in ws.of_kind(kind)
             if args.name is None or n == args.name]
    if not items:
        raise TypingError(f"no descent object or trivialized functor named {args.name!r}")
    if len(items) != 1:
        raise TypingError("holonomy needs --name when the document holds several functors")
    name, src = items[0]
    X = src.ctx.cover.base
    if args.face is not None:
        if args.face not in X.faces:
            raise TypingError(f"unknown face {args.face!r}")
        cell = src.ctx.groupoid(0).face(args.face)
    else:
        word = parse_word(args.path or "")
        start = args.start
        if start is None:
            if not word:
                raise TypingError("an empty path needs --start")
            start = X.letter_ends(word[0])[0]
        cell = X.path(word, start)
    q = TransportQuery(cell)
    choice = _choices(ws, src, args.choice)[0] if not isinstance(src, TrivializedFunctor) else None
    val = holonomy(src, q, choice)
    sec = SectionDoc("holonomy", name)
    sec.add("query", value=f"face {args.face}" if args.face else f"path {args.path or '1'} @ {cell.src}")
    sec.add("value", value=fmt(val))
    out.doc.sections.append(sec)


def cmd_refine(ws, args, out):
    xi = ws.get(args.refinement, "refinement")
    for name, D in _select(ws, "descent", args.name):
        if D.ctx.cover is not xi.target:
            continue
        R = restrict(xi, D)
        attach(R.ctx, xi.source_name, D.ctx.structure)
        out.doc.sections.append(dump_descent(R, name=f"{name}@{xi.source_name}"))
        out.report(f"descent {name}@{xi.source_name}", check_descent_object(R))


def cmd_axioms(ws, args, out):
    for name, C in ws.of_kind("2-category"):
        out.report(f"2-category {name}", check_two_category(C))
    for name, cm in ws.of_kind("crossed-module"):
        out.report(f"2-group {name}", check_two_category(two_group_from_crossed_module(cm)))
    for name, m in ws.of_kind("monoidal"):
        rep = Report()
        try:
            delooping(m)
        except ConstructionError as exc:
            rep.add("monoidal:coherence", name, str(exc))
        out.report(f"delooping {name}", rep)
    for name, D in ws.of_kind("descent"):
        rep = check_descent_object(D)
        if not rep:
            R = pairing_R(D, validate=False)
            for label, pt, lhs, rhs in relation_instances(D.ctx.cover):
                l, r = R.two(lhs), R.two(rhs)
                if not D.ctx.T.eq2(l, r):
                    rep.add(label, ("Ψ=" if label == "V1" else "α=") + fmt(pt), l, r)
        out.report(f"codescent relations {name}", rep)


def cmd_print(ws, args, out):
    out.doc = ws.doc


COMMANDS = {
    "validate": cmd_validate, "extract": cmd_extract, "reconstruct": cmd_reconstruct,
    "roundtrip": cmd_roundtrip, "holonomy": cmd_holonomy, "refine": cmd_refine,
    "axioms": cmd_axioms, "print": cmd_print,
}


def build_parser():
    p = argparse.ArgumentParser(prog="twodescent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--in", dest="input", required=True, help="input document ('-' for stdin)")
        sp.add_argument("--out", help="output document (default stdout)")
        sp.add_argument("--report", help="report file (default stdout)")
        return sp

    common(sub.add_parser("validate", help="run every checker on the document"))
    sp = common(sub.add_parser("extract", help="descent objects of trivialized functors"))
    sp.add_argument("--name")
    sp = common(sub.add_parser("reconstruct", help="functors reconstructed from descent objects"))
    sp.add_argument("--name")
    sp.add_argument("--choice")
    sp = common(sub.add_parser("roundtrip", help="build and check rho (ex-rec) or eta (rec-ex)"))
    sp.add_argument("direction", choices=["ex-rec", "rec-ex"])
    sp.add_argument("--name")
    sp.add_argument("--choice")
    sp = common(sub.add_parser("holonomy", help="evaluate the functor on a path or a face"))
    sp.add_argument("--name")
    sp.add_argument("--path", help="word such as 'e0 e1^-1'")
    sp.add_argument("--start", help="start vertex (needed for the empty path)")
    sp.add_argument("--face")
    sp.add_argument("--choice")
    sp = common(sub.add_parser("refine", help="restrict descent objects along a refinement"))
    sp.add_argument("--refinement", required=True)
    sp.add_argument("--name")
    common(sub.add_parser("axioms", help="2-category axioms and codescent relations"))
    common(sub.add_parser("print", help="parse and print the document"))
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = Outcome()
    try:
        ws = load(parse(_read(args.input)))
        COMMANDS[args.command](ws, args, out)
    except (ParseError, TypingError, ConstructionError, CapabilityError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if out.doc.sections or args.command == "print":
        _write(args.out, out.doc.render())
    if out.lines:
        text = "\n".join(out.lines) + "\n"
        if args.report:
            _write(args.report, text)
        elif args.out is None and out.doc.sections:
            sys.stdout.write("\n" + text)
        else:
            sys.stdout.write(text)
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())

"""Regenerate the bundled documents in src/twodescent/data and the mutated
copies in tests/fixtures.  Output is deterministic for a fixed seed."""
import argparse
import random
from pathlib import Path

from twodescent.base import BASES, bundled_base, CoverSpec
from twodescent.codescent import SectionChoice
from twodescent.descent import DescentContext, DescentObject, Refinement
from twodescent.instances import (
    graded_monoid_table, matrix_table, delooping, trivial_2groupoid, unit_functor,
    brute_force_algebras,
)
from twodescent.textio import (
    Document, SectionDoc, dump_choice, dump_computad, dump_cover, dump_descent,
    dump_trivialized, attach, Structure, load_text,
)
from twodescent.transport import extract, random_trivialized_functor, two_group_context

ROOT = Path(__file__).resolve().parent.parent
CM = "S3xZ2->S3"


def _cm_section():
    sec = SectionDoc("crossed-module", CM)
    sec.add("builtin", value=CM)
    return sec


def base_document(base, seed):
    X, cover = bundled_base(base)
    ctx = two_group_context(cover)
    st = Structure("structure", CM, ctx.T, ctx.T, ctx.i)
    attach(ctx, base, st)
    rng = random.Random(f"{seed}:{base}")
    tf = random_trivialized_functor(ctx, rng, name=f"{base}-tf")
    tfn = random_trivialized_functor(ctx, rng, normalized=True, name=f"{base}-tf-normalized")
    doc = Document([dump_cover(cover, base, builtin=base), _cm_section()])
    for ch in (SectionChoice.hub(cover), SectionChoice.last(cover),
               SectionChoice.random(cover, rng, name="random")):
        if ch.name in ("hub", "last"):
            sec = SectionDoc("choice", f"{base}-{ch.name}")
            sec.add("cover", value=base)
            sec.add("builtin", value=ch.name)
        else:
            ch.name = f"{base}-random"
            sec = dump_choice(ch, base)
        doc.sections.append(sec)
    doc.sections += [dump_trivialized(tf), dump_trivialized(tfn),
                     dump_descent(extract(tf), name=f"{base}-cocycle"),
                     dump_descent(extract(tfn), name=f"{base}-normalized")]
    return doc


def monoidal_document():
    """Algebra objects over the point for the strict monoidal tables."""
    X, cover = bundled_base("point")
    doc = Document([dump_cover(cover, "point", builtin="point")])
    for m in (graded_monoid_table(), matrix_table()):
        sec = SectionDoc("monoidal", m.name)
        sec.add("builtin", value=m.name)
        doc.sections.append(sec)
        T, Gr = delooping(m), trivial_2groupoid()
        ctx = attach(DescentContext(cover, Gr, T, unit_functor(Gr, T)), "point",
                     Structure("monoidal", m.name, Gr, T, unit_functor(Gr, T)))
        for n, (A, mu, unit) in enumerate(sorted(brute_force_algebras(m))):
            D = DescentObject.from_tables(ctx, {
                "triv0": {(0, "pt"): Gr.objects[0]}, "triv1": {}, "triv2": {},
                "g0": {(0, 0, "pt"): A}, "g1": {}, "psi": {(0, "pt"): unit},
                "f": {(0, 0, 0, "pt"): mu}}, name=f"{m.name}-alg{n}")
            doc.sections.append(dump_descent(D))
    return doc


def refinement_document(seed):
    """C6 with three patches refining the one-patch cover."""
    X, c3 = bundled_base("C6x3")
    c1 = CoverSpec(X, [set(X.vertices) | set(X.edges)], name="C6-whole")
    c3 = CoverSpec(X, c3.patches, name="C6-three")
    xi = Refinement(c3, c1, [0, 0, 0], name="collapse")
    ctx = two_group_context(c1)
    attach(ctx, "C6-whole", Structure("structure", CM, ctx.T, ctx.T, ctx.i))
    tf = random_trivialized_functor(ctx, random.Random(f"{seed}:refine"), name="whole-tf")
    ref = SectionDoc("refinement", "collapse")
    ref.add("source", value="C6-three")
    ref.add("target", value="C6-whole")
    ref.add("map", value=" ".join(map(str, xi.patch_map)))
    return Document([dump_computad(X, "C6"), dump_cover(c1, "C6-whole", "C6"),
                     dump_cover(c3, "C6-three", "C6"), _cm_section(), ref,
                     dump_descent(extract(tf), name="whole-cocycle")])


def corrupt_f(text, rng):
    """Replace one f entry of the first descent section by another 2-cell
    with the same boundary, so only the cocycle conditions can notice."""
    ws = load_text(text)
    name, D = ws.of_kind("descent")[0]
    T = D.ctx.T
    lines = text.split("\n")
    rows = [n for n, l in enumerate(lines) if l.startswith("f ")
            and _section_of(lines, n) == f"[descent {name}]"]
    rng.shuffle(rows)
    for n in rows:
        key, _, val = lines[n].partition(" = ")
        alts = [c for c in T.hom2(T.src2(val), T.tgt2(val)) if c != val]
        if alts:
            lines[n] = f"{key} = {rng.choice(alts)}"
            return "\n".join(lines)
    raise RuntimeError("no f entry admits a different 2-cell")


def _section_of(lines, n):
    while not lines[n].startswith("["):
        n -= 1
    return lines[n]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    data, fixtures = ROOT / "src/twodescent/data", ROOT / "tests/fixtures"
    docs = {b: base_document(b, args.seed) for b in sorted(BASES)}
    docs["point-monoidal"] = monoidal_document()
    docs["C6-refinement"] = refinement_document(args.seed)
    for name, doc in docs.items():
        (data / f"{name}.2d").write_text(doc.render(), encoding="utf-8")
    rng = random.Random(args.seed)
    for b in ("C6", "torus3", "octahedron"):
        bad = corrupt_f(docs[b].render(), rng)
        (fixtures / f"{b}-bad-f.2d").write_text(bad, encoding="utf-8")


if __name__ == "__main__":
    main()

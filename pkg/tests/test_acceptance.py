"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line; conftest prints them after the run.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import io
import random
import re
import time
from contextlib import redirect_stdout, redirect_stderr

from twodescent import cli
from twodescent.base import BASES, PathGroupoid, bundled_base
from twodescent.codescent import Codescent, Section, SectionChoice, relation_instances
from twodescent.descent import (
    DescentContext, DescentObject, check_descent_object, check_descent_1mor, is_normalized,
)
from twodescent.instances import (
    brute_force_algebras, crossed_module_monoidal, crossed_module_sweep, delooping,
    graded_monoid_table, matrix_table, trivial_2groupoid, two_group_from_crossed_module,
    unit_functor,
)
from twodescent.textio import parse
from twodescent.transport import (
    comparison, eta, extract, pairing_R, random_trivialized_functor, reconstruct, rho,
    two_group_context,
)
from twodescent.twocat import check_pseudonatural, check_two_category, mutation_sweep, weak_inverse1

from conftest import ACCEPTANCE, FIXTURES, data_files, workspace

MULTI_PATCH = sorted(b for b in BASES if len(bundled_base(b)[1].patches) > 1)


def record(n, ok, detail):
    ACCEPTANCE[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE[n])


def three_choices(cover, seed):
    rng = random.Random(seed)
    return [SectionChoice.hub(cover), SectionChoice.last(cover),
            SectionChoice.random(cover, rng)]


def bundled_descent():
    out = []
    for path in data_files():
        ws = workspace(path.stem)
        out += [(path.stem, n, D) for n, D in ws.of_kind("descent")]
    return out


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------

def test_c01_axiom_kernel():
    t0 = time.perf_counter()
    cms = [cm for cm in crossed_module_sweep() if len(cm.G.elements) <= 8 and len(cm.H.elements) <= 8]
    axiom_fail, undetected, total = [], [], 0
    for cm in cms:
        C = two_group_from_crossed_module(cm)
        if check_two_category(C):
            axiom_fail.append(cm.name)
        cells = list(C.two_cells)
        for table in ("hcomp", "vcomp"):
            muts = [(k, c) for k, v in getattr(C, table).items() for c in cells if c != v]
            sweep = mutation_sweep(C, table, muts)
            total += len(muts)
            undetected += [(cm.name, table, muts[i]) for i, d in enumerate(sweep.detected()) if not d]
    dt = time.perf_counter() - t0
    ok = not axiom_fail and not undetected and dt < 30
    record(1, ok, f"{len(cms)} crossed modules, {total} mutations, "
                  f"{len(undetected)} undetected, {dt:.1f}s (< 30s)")
    assert not axiom_fail, axiom_fail
    assert not undetected, undetected[:5]
    assert dt < 30


def test_c02_codescent_relations_octahedron():
    t0 = time.perf_counter()
    ws = workspace("octahedron")
    D = ws.get("octahedron-cocycle", "descent")
    T, cover = D.ctx.T, D.ctx.cover
    assert len(cover.patches) == 4
    # the cocycle is nonabelian: two transition values that do not commute
    vals = {D.g.at0(a) for a in D.ctx.points(2)}
    assert any(T.comp(x, y) != T.comp(y, x) for x in vals for y in vals)
    R = pairing_R(D)
    counts, bad = {"V1": 0, "V2": 0}, []
    for label, pt, lhs, rhs in relation_instances(cover):
        counts[label] += 1
        if not T.eq2(R.two(lhs), R.two(rhs)):
            bad.append((label, pt))
    dt = time.perf_counter() - t0
    assert counts["V1"] == len(cover.space(4).vertices)
    assert counts["V2"] == 2 * len(cover.space(2).vertices)
    ok = not bad and dt < 60
    record(2, ok, f"{counts['V1']} V1 + {counts['V2']} V2 instances, {len(bad)} mismatches, "
                  f"{dt:.2f}s (< 60s)")
    assert not bad, bad[:5]
    assert dt < 60


def _projection_failures(cover, choice):
    cd = Codescent(cover)
    M, pi = cd.M, cd.to_base
    Y = cover.space(1)
    PY = PathGroupoid(Y)
    fails = []
    # p̄∘ι = π_* on generators of P2(Y)
    for a in Y.vertices:
        if cd.project(cd.include(a)) != M.unit1(a[1]):
            fails.append(("iota", a))
    for e in Y.edges:
        for sgn in (1, -1):
            p = Y.path(((e, sgn),))
            if cd.project(cd.include(p)) != pi.path(p):
                fails.append(("iota", e, sgn))
    for F in Y.faces:
        for sgn in (1, -1):
            b = PY.face(F, sgn)
            if not M.eq2(cd.project(cd.include(b)), pi.bigon(b)):
                fails.append(("iota", F, sgn))
    # p̄∘s = id on generators of P2(M), with identity compositor and unitor
    s = Section(cd, choice)
    X = cover.base
    for x in X.vertices:
        if s.obj(x)[1] != x or not M.is_identity2(cd.project(s.unit(x))):
            fails.append(("s", x))
    for e in X.edges:
        for sgn in (1, -1):
            p = X.path(((e, sgn),))
            if cd.project(s.one(p)) != p:
                fails.append(("s", e, sgn))
            if not M.is_identity2(cd.project(s.comp(p, p.inverse()))):
                fails.append(("s:comp", e, sgn))
    for F in X.faces:
        for sgn in (1, -1):
            b = M.face(F, sgn)
            if not M.eq2(cd.project(s.two(b)), b):
                fails.append(("s", F, sgn))
    return fails


def test_c03_projection_identities():
    fails, runs = [], 0
    for name in ("C6", "torus3", "octahedron"):
        X, cover = bundled_base(name)
        choices = three_choices(cover, name)
        assert len({tuple(sorted(c.chi0.items())) + tuple(sorted(c.chi1.items())) for c in choices}) == 3
        for ch in choices:
            runs += 1
            fails += [(name, ch.name) + f for f in _projection_failures(cover, ch)]
    record(3, not fails, f"{runs} (base, choice) pairs, {len(fails)} failing generators")
    assert not fails, fails[:5]


def test_c04_extraction_soundness():
    t0 = time.perf_counter()
    bad, n = [], 0
    for name in sorted(BASES):
        ctx = two_group_context(bundled_base(name)[1])
        rng = random.Random(f"c4:{name}")
        for k in range(100):
            D = extract(random_trivialized_functor(ctx, rng, normalized=k % 5 == 0))
            n += 1
            rep = check_descent_object(D)
            if rep:
                bad.append((name, k, str(rep[0])))
    record(4, not bad, f"{n} random trivialized functors on {len(BASES)} bases, "
                       f"{len(bad)} invalid extractions, {time.perf_counter() - t0:.1f}s")
    assert not bad, bad[:5]


def test_c05_round_trip_ex_rec():
    bad, n = [], 0
    for doc, name, D in bundled_descent():
        assert not check_descent_object(D), name
        T = D.ctx.T
        for ch in three_choices(D.ctx.cover, name):
            m = rho(D, ch)
            n += 1
            rep = check_descent_1mor(m)
            for a in D.ctx.points(1):
                if not T.eq1(m.h.at0(a), T.unit1(D.triv_i.obj(a))) \
                        or weak_inverse1(T, m.h.at0(a)) is None:
                    rep.add("V(rho)", a)
            for a in D.ctx.points(2):
                if T.inv2(m.eps.at(a)) is None:
                    rep.add("eps:invertible", a)
            if rep:
                bad.append((doc, name, ch.name, str(rep[0])))
    record(5, not bad, f"{n} rho witnesses over {len(bundled_descent())} bundled descent objects, "
                       f"{len(bad)} failing")
    assert not bad, bad[:5]


def test_c06_round_trip_rec_ex():
    bad, n = [], 0
    for name in sorted(BASES):
        cover = bundled_base(name)[1]
        ctx = two_group_context(cover)
        rng = random.Random(f"c6:{name}")
        for k in range(50):
            tf = random_trivialized_functor(ctx, rng, normalized=k % 5 == 0)
            ch = three_choices(cover, f"{name}:{k}")[k % 3]
            e = eta(tf, ch)
            n += 1
            rep = check_pseudonatural(e)
            T = ctx.T
            for x in cover.base.vertices:
                if weak_inverse1(T, e.at0(x)) is None:
                    rep.add("eta:invertible", x)
            if rep:
                bad.append((name, k, str(rep[0])))
    record(6, not bad, f"{n} eta witnesses on {len(BASES)} bases, {len(bad)} failing")
    assert not bad, bad[:5]


def test_c07_normalized_reconstruction():
    objs = [(n, D) for _, n, D in bundled_descent()]
    for name in sorted(BASES):
        ctx = two_group_context(bundled_base(name)[1])
        rng = random.Random(f"c7:{name}")
        objs += [(f"{name}-random{k}", extract(random_trivialized_functor(ctx, rng, normalized=True)))
                 for k in range(5)]
    normalized = [(n, D) for n, D in objs if D.ctx.T.strict and is_normalized(D)]
    bad, n_checked = [], 0
    for name, D in normalized:
        T, X = D.ctx.T, D.ctx.cover.base
        for ch in three_choices(D.ctx.cover, name):
            F = reconstruct(D, ch).F
            n_checked += 1
            for x in X.vertices:
                if not T.is_identity2(F.unit(x)):
                    bad.append((name, ch.name, "unit", x))
            for e in X.edges:
                for sgn in (1, -1):
                    p = X.path(((e, sgn),))
                    if not T.is_identity2(F.comp(p, p.inverse())):
                        bad.append((name, ch.name, "comp", e, sgn))
    assert len(normalized) >= 2 * len(BASES)
    record(7, not bad, f"{len(normalized)} normalized descent objects x 3 choices, "
                       f"{len(bad)} non-identity unitors or compositors")
    assert not bad, bad[:5]


def _criterion8_tables():
    tables = [graded_monoid_table(), matrix_table()]
    for cm in crossed_module_sweep():
        if len(cm.G.elements) <= 4 and len(cm.G.elements) * len(cm.H.elements) <= 16:
            tables.append(crossed_module_monoidal(cm))
    return tables


def _descent_pass_set(m):
    T, Gr = delooping(m), trivial_2groupoid()
    cover = bundled_base("point")[1]
    ctx = DescentContext(cover, Gr, T, unit_functor(Gr, T))
    star = Gr.objects[0]
    passed = set()
    for A in m.objects:
        for mu in T.two_cells:
            for unit in T.two_cells:
                try:
                    D = DescentObject.from_tables(ctx, {
                        "triv0": {(0, "pt"): star}, "triv1": {}, "triv2": {},
                        "g0": {(0, 0, "pt"): A}, "g1": {}, "psi": {(0, "pt"): unit},
                        "f": {(0, 0, 0, "pt"): mu}})
                    rep = check_descent_object(D)
                except Exception:
                    continue        # ill-typed components are not descent objects
                if not rep:
                    passed.add((A, mu, unit))
    return passed


def test_c08_frobenius_oracle():
    tables = [m for m in _criterion8_tables() if m.strict
              and len(m.objects) <= 4 and len(m.morphisms) <= 16]
    mismatches, sizes = [], []
    for m in tables:
        got, want = _descent_pass_set(m), brute_force_algebras(m)
        sizes.append(len(want))
        if got != want:
            mismatches.append((m.name, sorted(got ^ want)[:3]))
    record(8, not mismatches, f"{len(tables)} strict monoidal tables, {sum(sizes)} algebra objects, "
                              f"{len(mismatches)} set mismatches")
    assert len(tables) >= 3
    assert not mismatches, mismatches


def test_c09_choice_independence():
    bad, n = [], 0
    for name in MULTI_PATCH:
        D = workspace(name).get(f"{name}-cocycle", "descent")
        T = D.ctx.T
        hub, last, other = three_choices(D.ctx.cover, name)
        assert hub.chi0 != last.chi0 or hub.chi1 != last.chi1
        for c1, c2 in ((hub, last), (last, other), (other, hub)):
            kappa = comparison(D, c1, c2)
            n += 1
            rep = check_pseudonatural(kappa)
            for x in D.ctx.cover.base.vertices:
                if weak_inverse1(T, kappa.at0(x)) is None:
                    rep.add("kappa:invertible", x)
            if rep:
                bad.append((name, c1.name, c2.name, str(rep[0])))
    record(9, not bad, f"{n} comparison transformations on {len(MULTI_PATCH)} multi-patch bases, "
                       f"{len(bad)} failing")
    assert not bad, bad[:5]


VIOLATION = re.compile(r"^\(3\)@Ψ=\((\d+,){4}[^,()]+\): lhs=\S+ rhs=\S+$")


def test_c10_cli(tmp_path):
    problems = []
    files = data_files()
    for path in files:
        text = path.read_text(encoding="utf-8")
        if parse(text).render() != text:
            problems.append(("parse/print", path.name))
        code, out, _ = run_cli("print", "--in", path)
        if code != 0 or out != text:
            problems.append(("print", path.name))
        ws = workspace(path.stem)
        for direction, kind in (("ex-rec", "descent"), ("rec-ex", "trivialized")):
            if not ws.of_kind(kind):
                continue
            out_doc = tmp_path / f"{path.stem}-{direction}.2d"
            code, report, err = run_cli("roundtrip", direction, "--in", path, "--out", out_doc)
            if code != 0:
                problems.append(("roundtrip", direction, path.name, code, err or report[:200]))
            printed = out_doc.read_text(encoding="utf-8")
            if parse(printed).render() != printed:
                problems.append(("output parse/print", direction, path.name))
    fixtures = sorted(FIXTURES.glob("*-bad-f.2d"))
    for path in fixtures:
        code, out, _ = run_cli("validate", "--in", path)
        lines = [l for l in out.splitlines() if l.startswith("(3)@")]
        if code != 1 or not lines or not all(VIOLATION.match(l) for l in lines):
            problems.append(("fixture", path.name, code, lines[:2]))
    record(10, not problems, f"{len(files)} bundled documents, {len(fixtures)} mutation fixtures, "
                             f"{len(problems)} problems")
    assert len(fixtures) >= 3
    assert not problems, problems[:5]

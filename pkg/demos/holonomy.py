"""Parallel transport around loops and across faces of a 3x3 torus,
then around a hexagon.

The structure 2-group comes from the crossed module S3xZ2 -> S3.  Loop
holonomy lives in S3 and a face gives a pair (g, h).  Here t is onto, so
loop values are only meaningful as labels of this particular functor.

The second half uses the flat crossed module 1 -> S3 on a hexagon, where
the loop holonomy survives gluing up to conjugation.

Run with ``python3 demos/holonomy_on_the_torus.py``.
"""
import random
from pathlib import Path

import twodescent
from twodescent.codescent import SectionChoice
from twodescent.base import bundled_base
from twodescent.instances import CrossedModule, symmetric_group3, trivial_group
from twodescent.textio import load_text
from twodescent.transport import (
    TransportQuery, holonomy, random_trivialized_functor, two_group_context,
)

DATA = Path(twodescent.__file__).parent / "data"

ws = load_text((DATA / "torus3.2d").read_text(encoding="utf-8"))
tf = ws.get("torus3-tf", "trivialized")
X = tf.ctx.cover.base
cm = tf.ctx.T.crossed_module
G = cm.G

loops = {"horizontal": "h00 h10 h20", "vertical": "v00 v01 v02",
         "commutator": "h00 v10 h01^-1 v00^-1"}
for label, word in loops.items():
    print(f"{label:>11}: {holonomy(tf, TransportQuery(X.path(word)))}")

for F in sorted(X.faces)[:3]:
    q = TransportQuery(tf.ctx.groupoid(0).face(F))
    print(f"face {F}: {holonomy(tf, q)}")

# %% a flat structure group: glue and compare loop holonomy
S3, one = symmetric_group3(), trivial_group()
flat = CrossedModule(S3, one, {"e": S3.e}, {(g, "e"): "e" for g in S3.elements}, name="1->S3")
C, cover = bundled_base("C6")
ctx = two_group_context(cover, flat)
rng = random.Random(3)
tf = random_trivialized_functor(ctx, rng)
D = twodescent.extract(tf)
choice = SectionChoice.random(cover, rng)
q = TransportQuery(C.path("e0 e1 e2 e3 e4 e5"))
a, b = holonomy(tf, q), holonomy(D, q, choice)
ok = any(S3.conj(c, a) == b for c in S3.elements)
print(f"hexagon loop: global {a}, glued {b}, conjugate: {ok}")

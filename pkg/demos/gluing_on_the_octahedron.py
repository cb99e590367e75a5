"""Gluing local transport data on the octahedron.

Load a descent object from the bundled document, check it, rebuild a
functor on the whole base from it, and compare the functors produced by
two different section choices.  Then break one component and watch the
checker point at it.

Run with ``python3 demos/gluing_on_the_octahedron.py``.
"""
import random
from pathlib import Path

import twodescent
from twodescent.codescent import SectionChoice
from twodescent.textio import load_text
from twodescent.transport import check_trivialized
from twodescent.twocat import check_pseudonatural

DATA = Path(twodescent.__file__).parent / "data"

ws = load_text((DATA / "octahedron.2d").read_text(encoding="utf-8"))
D = ws.get("octahedron-cocycle", "descent")
cover = D.ctx.cover
print(f"{len(cover.patches)} patches over {len(cover.base.vertices)} vertices")

# %% the local data satisfies every descent condition
rep = twodescent.check_descent_object(D)
print("descent object ok:", not rep)

# %% glue with two section choices and compare
hub = SectionChoice.hub(cover)
other = SectionChoice.random(cover, random.Random(7))
F1 = twodescent.reconstruct(D, hub)
F2 = twodescent.reconstruct(D, other)
print("reconstructions ok:", not check_trivialized(F1), not check_trivialized(F2))
kappa = twodescent.comparison(D, hub, other)
print("comparison is pseudonatural:", not check_pseudonatural(kappa))

# %% extracting again gives back an equivalent descent object
m = twodescent.rho(D, hub)
print("rho is a descent 1-morphism:", not twodescent.check_descent_1mor(m))

# %% corrupt one component of f and look at the report
T = D.ctx.T
tabs = D.tables()
key, cell = next(iter(tabs["f"].items()))
alt = next(b for b in T.hom2(T.src2(cell), T.tgt2(cell)) if b != cell)
tabs["f"] = {**tabs["f"], key: alt}
bad = twodescent.DescentObject.from_tables(D.ctx, tabs, name="corrupted")
rep = twodescent.check_descent_object(bad)
print(f"corrupted object: {len(rep)} violation(s), first:")
print("  ", next(iter(rep)))

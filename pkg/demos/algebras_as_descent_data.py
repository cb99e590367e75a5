"""Descent data over a single point, valued in the delooping of a monoidal
category, are exactly the algebra objects with invertible structure maps.

This script enumerates both sides for the two bundled strict tables and
prints them next to each other.

Run with ``python3 demos/algebras_as_descent_data.py``.
"""
from twodescent.base import bundled_base
from twodescent.descent import DescentContext, DescentObject, check_descent_object
from twodescent.instances import (
    brute_force_algebras, delooping, graded_monoid_table, matrix_table, trivial_2groupoid,
    unit_functor,
)
from twodescent.twocat import TypingError

point = bundled_base("point")[1]


def descent_side(m):
    T, Gr = delooping(m), trivial_2groupoid()
    ctx = DescentContext(point, Gr, T, unit_functor(Gr, T))
    star = Gr.objects[0]
    found = set()
    for A in m.objects:
        for mu in T.two_cells:
            for unit in T.two_cells:
                try:
                    D = DescentObject.from_tables(ctx, {
                        "triv0": {(0, "pt"): star}, "triv1": {}, "triv2": {},
                        "g0": {(0, 0, "pt"): A}, "g1": {}, "psi": {(0, "pt"): unit},
                        "f": {(0, 0, 0, "pt"): mu}})
                    if not check_descent_object(D):
                        found.add((A, mu, unit))
                except TypingError:
                    continue    # mu or unit has the wrong shape for A
    return found


for m in (graded_monoid_table(), matrix_table()):
    algebras, descent = brute_force_algebras(m), descent_side(m)
    print(f"{m.name}: {len(algebras)} algebra(s), {len(descent)} descent object(s)")
    for A, mu, unit in sorted(descent):
        print(f"    A={A}  mu={mu}  unit={unit}")
    print("    same set:", algebras == descent)

"""
Exchanges and normal forms
==========================

A diagram is a list of vertices read top to bottom. Each vertex has an
offset ``h``, ``i`` inputs and ``o`` outputs. Two neighbouring vertices
that do not touch can slide past each other. Repeatedly sliding every
vertex as far right as it goes reaches a unique normal form.
"""

# %%
# A cup, one vertex on each of its wires, then a cap.
from sdnorm import Diagram, admits_left, admits_right, apply_right, normalize_fast, normalize_naive, serialize
from sdnorm.render import to_ascii

d = Diagram.from_slices(0, [(0, 0, 2), (0, 1, 1), (1, 1, 1), (0, 2, 0)])
print(to_ascii(d))

# %%
# Which exchanges apply at each pair of neighbouring vertices?
for n in range(d.height - 1):
    print(n, "right" if admits_right(d, n) else "-", "left" if admits_left(d, n) else "-")

# %%
# A single right exchange swaps two vertices and shifts the offsets.
print(apply_right(d, 1).slices())

# %%
# The naive normaliser records every exchange it makes.
red = normalize_naive(d)
print("steps:", red.steps, red.trace)
print(serialize(red.result))

# %%
# The fast normaliser gets the same answer without exchanging one at a time.
assert normalize_fast(d) == red.result

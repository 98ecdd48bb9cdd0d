"""
Deciding equivalence three ways
===============================

Two diagrams are equivalent when exchanges turn one into the other. The
library can decide this by comparing normal forms, by comparing canonical
codes of a combinatorial map, or by comparing codes of a structural tree
of nested components and faces.
"""

# %%
import random

from sdnorm import apply_left, apply_right, admits_left, admits_right
from sdnorm.equivalence import decide_equiv, witness
from sdnorm.maps import map_code
from sdnorm.oracle import random_connected_diagram
from sdnorm.topology import tree_code

rng = random.Random(0)
d = random_connected_diagram(rng, 8, labels=["f", "g"])


def shuffle(d, moves):
    for _ in range(moves):
        options = [(apply_right, n) for n in range(d.height - 1) if admits_right(d, n)]
        options += [(apply_left, n) for n in range(d.height - 1) if admits_left(d, n)]
        if not options:
            break
        move, n = rng.choice(options)
        d = move(d, n)
    return d


e = shuffle(d, 20)
print(d.slices())
print(e.slices())

# %%
# Every method gives the same verdict.
for method in ("naive", "map", "tree", "auto"):
    print(method, decide_equiv(d, e, method))

# %%
# The codes themselves are plain bytes, so they can be hashed or stored.
assert map_code(d) == map_code(e)
assert tree_code(d) == tree_code(e)
print(len(map_code(d)), "byte map code")

# %%
# A witness is a list of exchanges that turns the first diagram into the second.
steps = witness(d, e)
print(len(steps), "exchanges:", steps[:6], "...")

"""
From terms to diagrams and back
===============================

Morphisms of a monoidal category are written with ``.`` for composition
(right to left) and ``*`` for the tensor product. Equal terms up to the
interchange law give equivalent diagrams.
"""

# %%
from sdnorm.equivalence import decide_equiv
from sdnorm.terms import from_diagram, parse_expr, parse_signature, pretty, to_diagram

sig = parse_signature("G f 1 1\nG g 1 1\n")
left = to_diagram(parse_expr("(f * id(1)) . (id(1) * g)"), sig)
right = to_diagram(parse_expr("(id(1) * g) . (f * id(1))"), sig)
print(left.slices(), right.slices())

# %%
# Interchange holds, so the two terms are equivalent.
print(decide_equiv(left, right))

# %%
# Reading a diagram back gives one term per vertex, composed in order.
print(pretty(from_diagram(left)))

"""
Spirals need cubically many exchanges
=====================================

The spiral with ``n`` vertices winds a single wire around itself. Its
normal form is reached only after ``n choose 3`` exchanges, whatever the
order in which exchanges are chosen.
"""

# %%
from math import comb

from sdnorm import normalize_fast, normalize_naive, spiral
from sdnorm.render import to_ascii

print(to_ascii(spiral(4)))

# %%
# Count the exchanges under three strategies.
for n in range(2, 9):
    counts = {s: normalize_naive(spiral(n), strategy=s, seed=0).steps for s in ("topmost", "bottommost", "random")}
    print(n, comb(n, 3), counts)

# %%
# The fast engine skips the exchanges but lands on the same diagram.
for n in range(2, 30):
    assert normalize_fast(spiral(n)) == normalize_naive(spiral(n)).result
print("fast and naive agree up to n = 29")

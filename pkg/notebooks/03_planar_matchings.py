# %% [markdown]
# # Planar graphs: Holant through perfect matchings
#
# Under the Hadamard basis, [3a+b, -a-b, -a+b, 3a-b] becomes 8[0, 0, a, b] and
# =3 becomes [1, 0, 1, 0] with scale 1/4.  On a planar grid the value is then
# a perfect-matching count, which FKT computes as the square root of a
# Kasteleyn determinant.

# %%
from fractions import Fraction

from holant3.holant import eval_brute
from holant3.planar import count_pm, family_signature, planar_family_eval, planar_fixtures

for pg in planar_fixtures():
    ev = planar_family_eval(Fraction(1, 2), Fraction(-1, 2), pg)
    print(f"{pg.name:12s} matchings={ev.matchings:4d} value={ev.value}")

# %%
q3 = planar_fixtures()[5]
for a, b in [(1, 0), (1, 1), (-2, 3)]:
    fast = planar_family_eval(a, b, q3).value
    slow = eval_brute(q3.to_grid(family_signature(a, b)))
    print((a, b), fast, slow)
print("PM(Q3) =", count_pm(q3.graph))

# %% [markdown]
# # Signed leafless covers as a Holant value
#
# Pick a subfamily of a 3-uniform, 3-regular set system.  When every covered
# element is covered at least twice, count -1 for each element covered
# exactly twice and 2 for each element covered three times.  Summing these
# weights over all such subfamilies gives Holant([1, 0, -1, 2] | =3) on the
# incidence graph.

# %%
import random

from holant3.holant import LEAFLESS, SetSystem, cover_value, eval_brute, from_set_system, random_set_system

triple = SetSystem((0, 1, 2), ((0, 1, 2),) * 3)
print("cover sum:", cover_value(triple))
print("Holant on the incidence grid:", eval_brute(from_set_system(triple)))

# %% [markdown]
# The empty subfamily contributes 1.  The three pairs each cover every
# element twice and contribute -1.  The full family covers each element
# three times and contributes 8.  Total: 1 - 3 + 8 = 6.

# %%
rng = random.Random(0)
for n in range(2, 8):
    s = random_set_system(n, rng)
    print(n, cover_value(s), eval_brute(from_set_system(s, LEAFLESS)))

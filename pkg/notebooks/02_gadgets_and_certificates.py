# %% [markdown]
# # Gadgets and hardness certificates
#
# Gadgets are contracted generically, then compared with their closed forms.
# A certificate records each step the hardness argument takes for one
# signature, and `certificate_check` replays the steps.

# %%
from holant3.classifier import certificate_check, certificate_lines, dichotomy
from holant3.gadgets import contract, g3_matrix, gadget
from holant3.signatures import SymSig3

print(contract(gadget("G1"), SymSig3(1, 2, 3, 5)).matrix())
print(g3_matrix(SymSig3(1, -1, 0, 2)))
print(contract(gadget("Gaux"), SymSig3(1, 2, 3, 4)).symmetric())

# %%
for f in [(1, 2, 4, 8), (1, 1, -1, -1), (3, -1, -1, 3), (1, 0, -1, 2), (1, 1, -1, 1)]:
    v = dichotomy(SymSig3(*f))
    print(f, "->", v, "| replays:", certificate_check(v.certificate))

# %% [markdown]
# The chain for [1, 1, -1, 1] passes through two G4 contractions before the
# pinned binaries become hard.

# %%
print("\n".join(certificate_lines(dichotomy(SymSig3(1, 1, -1, 1)).certificate)))

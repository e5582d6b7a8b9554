"""The nine-letter recursion behind Case A over GF(4).

Run with `python demos/02_case_a_pattern.py`.
"""
# %% [markdown]
# Over GF(4) the root of Case A with leading term t uses only nine partial
# quotients.  Naming them a..i turns the expansion into a word, and that word
# follows an explicit block recursion.

# %%
from cubiccf.patterns import (CASE_A_LETTERS, case_a_engine, case_a_generate, case_a_letter_stream,
                              fold_to_gf2, letters_of)
from cubiccf import CASE_A, GF2, run_expansion

print({k: v for k, v in CASE_A_LETTERS.items()})
rep = case_a_engine(2000)
print("engine letters:   ", letters_of(rep.pqs)[:60])
print("recursion letters:", case_a_letter_stream(60))

# %% [markdown]
# The recursion and the engine agree as far as we care to look.

# %%
n = 10**5
rep = case_a_engine(n)
assert case_a_generate(n) == rep.pqs[:n]
print(f"recursion = engine for {n} quotients")

# %% [markdown]
# Folding replaces every nonzero coefficient by 1.  The folded GF(4) stream
# is exactly the expansion of the GF(2) root of the same cubic.

# %%
m = 10**4
gf2 = run_expansion(CASE_A, 0, m, GF2, detect=False)
assert fold_to_gf2(rep.pqs[:m]) == gf2.pqs[:m]
print(f"folding holds for {m} quotients; GF2 pairs {gf2.pair_count}, GF4 pairs {rep.pair_count}")

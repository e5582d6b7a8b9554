"""Case C: bounded quotients without an obvious pattern.

Run with `python demos/04_case_c_stats.py`.
"""
# %% [markdown]
# Case C looks bounded, yet its automaton keeps discovering new pairs.  We
# compare against the bundled first 1000 quotients and collect statistics.

# %%
from cubiccf.patterns import case_c_engine, case_c_stats, load_case_c_table

rep = case_c_engine(10**4, detect=False)
table = load_case_c_table()
print("first 1000 match the bundled table:", rep.digits()[:1000] == table)

stats = case_c_stats(10**4, rep)
print("alphabet size:", len(stats.alphabet), "of", len(stats.expected_alphabet), "expected")
print("longest alternating run:", stats.longest_alternating)
print("longest palindrome:", stats.longest_palindrome)
print("pairs:", stats.pair_count)

# %% [markdown]
# Pair growth as (quotients consumed, distinct pairs) checkpoints.  The count
# is still climbing at 10^4, unlike Cases A and B.

# %%
for point in stats.pair_growth[-8:]:
    print("  ", point)

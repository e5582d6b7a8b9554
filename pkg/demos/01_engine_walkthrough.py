"""Expanding one cubic root, step by step.

Run with `python demos/01_engine_walkthrough.py`.
"""
# %% [markdown]
# A cubic a0 + a1 u + a2 u^2 + a3 u^3 = 0 over GF(2^k)[x] is written as four
# digit strings, one per coefficient, each in ascending powers of x.  Digits
# 0-7 name field elements by their binary expansion, so over GF(4) "t" is 2.

# %%
from cubiccf import GF2, GF4, Cubic, classical_cf, newton_polygon_roots, run_expansion
from cubiccf.engine import transition_table

cubic = Cubic.parse("01,1,0,01")  # x + u + x u^3 = 0, called Case A below
print("cubic:", cubic)

# %% [markdown]
# Newton-polygon refinement gives the Laurent roots.  Over GF(2) there is a
# single root; GF(4) adds a conjugate pair.

# %%
for field in (GF2, GF4):
    roots = newton_polygon_roots(cubic, field, precision=64)
    print(field.name, [str(r)[:40] for r in roots])

# %% [markdown]
# The classical algorithm (take the integral part, invert the rest) only
# trusts quotients that a finite precision can certify.  The fast engine
# feeds the root's own quotients back through the fractional linear map
# u = (Q u^2 + R)/(S u^2 + T), so it never runs out of precision.

# %%
root = newton_polygon_roots(cubic, GF2, precision=256)[0]
pqs, certified = classical_cf(root, 20)
classical = [p.digits() for p in pqs[:certified]]
rep = run_expansion(cubic, 0, 20, GF2)
print("classical:", classical)
print("engine:   ", rep.digits())
assert classical == rep.digits()[: len(classical)]

# %% [markdown]
# After n quotients the engine reports a status.  "probable_bounded" means the
# unboundedness detector stayed quiet up to the threshold; below the
# threshold the status is "inconclusive".  Height is the degree of the
# determinant QT - RS.  Pairs counts the distinct (state, input) pairs seen
# when a quotient is consumed.

# %%
rep = run_expansion(cubic, 0, 10**5, GF2, probable_threshold=10**5)
print(f"status={rep.status} ht={rep.ht} pairs={rep.pair_count} consumed={rep.consumed_count}")

# %% [markdown]
# With few pairs the engine acts like a finite transducer.  Building the
# transition table after the run and replaying it from the initial state
# reproduces the stream.

# %%
table = transition_table(rep)
replayed = table.replay(10**4)
print("replay matches:", replayed == rep.values[: len(replayed)], "cycles in table:", len(table.table))

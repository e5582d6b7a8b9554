"""Surveying every cubic with coefficients of degree at most one.

Run with `python demos/05_survey_funnel.py`; takes a few seconds.
"""
# %% [markdown]
# There are 256 coefficient tuples.  Dropping those with a factor over the
# algebraic closure leaves 96.  Each root of each survivor is expanded to
# 10^4 quotients and the detector sorts out the unbounded ones.

# %%
from cubiccf import survey
from cubiccf.survey import orbit_representatives, substitution_group

report = survey(max_deg=1, threshold=10**4)
print(report.footer())
print("orbit sizes:", report.orbit_sizes())

# %% [markdown]
# The winners fall into orbits under the 12-element group generated by
# u -> 1/u, u -> u + 1 and x -> x + 1.  One representative per orbit:

# %%
print("group order:", len(substitution_group()))
reps = orbit_representatives({r.cubic: r.orbit_id for r in report.winners})
for oid, c in sorted(reps.items()):
    print(f"  orbit {oid}: {c}")

# %% [markdown]
# Among cubics with three GF(2) roots, how many of those roots look bounded?

# %%
print(dict(report.three_gf2_root_counts()))

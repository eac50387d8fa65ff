"""Run the theorem suite over a family grid and over random instances and
tally which entries are consistent.

Run: python demos/03_theorem_sweep.py
"""
# %%
from collections import Counter

from apapr import analyze, theorem_suite
from apapr.generators import random_instance
from apapr.report import parse_grid, sweep

rep = sweep(1, parse_grid("-1,0,1/2", 1))
for row in rep["rows"]:
    print(row["a"], row["class_g"], "|", row["class_g~"], "consistent" if row["consistent"] else row["inconsistent"])

# %% random instances: structured bases and rotated ones
tally = Counter()
for seed in range(12):
    an = analyze(random_instance(seed, n=1))
    for name in theorem_suite(an).inconsistent:
        tally[name] += 1
print("inconsistent entries over 12 random instances:")
for name, count in tally.most_common():
    print(f"  {count:2d}  {name}")

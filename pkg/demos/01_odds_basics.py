"""How the odds of unithood react to counts.

Run: python3 demos/01_odds_basics.py
"""
import math

from unithood import CountSnapshot, OuConfig, odds_global, odds_local, odds_of_unithood

# 4 documents mention both parts, 3 of them as the joined phrase, 10 documents in total
s = CountSnapshot(n_x=4, n_y=4, n_s=3, n_xy=4, N=10)
print(f"local odds  {odds_local(s):.4f}")
print(f"global odds {odds_global(s):.4f}")
print(f"OU (base 10) {odds_of_unithood(s):.5f}")
print(f"OU (base e)  {odds_of_unithood(s, OuConfig(log_base=math.e)):.5f}")

print("\nraising n_s with n_xy = 10, N = 100:")
for n_s in range(0, 11):
    ou = odds_of_unithood(CountSnapshot(10, 10, n_s, 10, 100))
    print(f"  n_s={n_s:2d}  OU={ou:8.4f}")
# the last row drops: once every co-occurrence is the phrase itself the
# local odds are pinned to 1 rather than growing without bound

"""Counting how many observers can learn the same thing independently.

Redundancy asks: into how many disjoint parts can the environment be cut
so that each part alone recovers (1-delta) of the available information?
Two answers are reported: an idealized ratio d_E/d_r - 1 that treats the
environment as infinitely divisible, and a concrete greedy partition
whose parts are listed, so the count is a checkable witness.

Run:  python3 demos/04_redundancy.py
"""

import math

from qdarwin import DecoherenceProfile, critical_d, redundancy_partition

INF = math.inf


def show(label, profile, delta):
    rep = redundancy_partition(profile, delta)
    print(f"{label} (delta = {delta}):")
    print(f"  d_r = {rep.d_r:.4f}" if rep.d_r is not None else "  d_r = n/a")
    print(f"  idealized count = {rep.r_infdiv:.3f}")
    print(f"  witness parts   = {rep.r_partition}: "
          + " ".join("{" + ",".join(map(str, p)) + "}" for p in rep.parts))
    print()


print("Threshold factor for perfect total records, delta = 1/2:",
      f"{critical_d(0.5, INF, 0.5):.6f}", "\n")

# eight perfect records: everyone can know, eight times over
show("8 perfect records",
     DecoherenceProfile(0.5, (INF,) * 8), 0.5)

# the same eight drowned in 24 useless environments: still eight-fold
show("8 perfect records + 24 empty environments",
     DecoherenceProfile(0.5, (INF,) * 8 + (0.0,) * 24), 0.5)

# uniform mediocre records: parts must pool a few environments each
show("12 equal records of d = 0.6",
     DecoherenceProfile(0.5, (0.6,) * 12), 0.5)

# a strict observer (small delta) needs bigger parts than a lax one
show("12 equal records, strict observer",
     DecoherenceProfile(0.5, (0.6,) * 12), 0.1)

# mixed bag: strong records anchor parts, stragglers ride along
show("mixed strengths",
     DecoherenceProfile(0.5, (INF, 2.0, 1.5, 0.7, 0.3, 0.2, 0.0)), 0.5)

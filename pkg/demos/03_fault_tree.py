#!/usr/bin/env python3
"""Fault-tree composition: closed forms, explicit trees, and k-of-n gates.

Element unavailabilities combine into the system-level number in two
equivalent ways: the closed-form expressions and an explicit gate tree.  This
script demonstrates both, shows the k-of-n gate against brute-force
enumeration, and sweeps the redundancy counts to show diminishing returns.
"""

import itertools

from edgeavail import (BasicEvent, KofN, RedundancyConfig, build_5gmec_ft,
                       default_table, element_unavailability, eval_ft,
                       system_unavailability, u_ran, u_sys)
from edgeavail.models import ElementKind

table = default_table()
us = {kind.value: element_unavailability(kind, table) for kind in ElementKind}
print("element unavailabilities:")
for name, u in us.items():
    print(f"  {name:5s} {u:.6e}")

# Closed form vs the explicit gate tree: identical by construction.
for cfg in (RedundancyConfig(1, 1, 1, 1), RedundancyConfig(2, 2, 2, 2)):
    closed = system_unavailability(us, cfg)
    tree = eval_ft(build_5gmec_ft(cfg, us))
    print(f"\n{cfg}: closed form {closed:.6e}, tree {tree:.6e}, "
          f"gap {abs(closed - tree):.1e}")

# A k-of-n gate against brute-force enumeration of all outcomes.
u, n, k = 0.1, 10, 9
gate = eval_ft(KofN(k, tuple(BasicEvent(f"i{i}", u) for i in range(n))))
brute = sum(
    (u ** sum(o)) * ((1 - u) ** (n - sum(o)))
    for o in itertools.product((0, 1), repeat=n) if n - sum(o) < k)
print(f"\n9-of-10 at U=0.1: gate {gate:.6f}, enumeration {brute:.6f}")

# Diminishing returns: one redundant element does nearly all the work.
print("\nredundancy sweep (closed form):")
for n in range(1, 5):
    cfg = RedundancyConfig(n, n, n, n)
    print(f"  N_C=N_D=N_R=N_H={n}: U_sys = {system_unavailability(us, cfg):.6e}")

# The access-network formula in isolation.
print("\naccess network alone:")
for n_r in (1, 2, 3):
    cfg = RedundancyConfig(1, 1, n_r, 1)
    print(f"  N_R={n_r}: U_RAN = {u_ran(us['ru'], us['du'], us['cu'], cfg):.6e}")
print(f"sanity: u_sys with everything at 0.5 and no redundancy -> "
      f"{u_sys(0.875, 0.5, 0.5, 0.5, 1):.6f} (hand value 0.984375)")

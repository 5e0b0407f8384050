"""Checking rows of the flag classification table and running a grid search."""

import random

from rbhom import enumerate_flags, verify_table2_row
from rbhom.catalog import idempotent_line
from rbhom.flag import table2_rows

rng = random.Random(0)
for spec in table2_rows()[:6]:
    inst = spec.random_instance(rng)
    rep = verify_table2_row(spec, inst)
    shown = ", ".join(f"{k}={v}" for k, v in inst.items())
    print(f"row {spec.row_id:>3} [{shown}]: {'ok' if rep.ok else rep.lines()[0]}")

grid = {"l": (0, 1), "r": (0, 1), "k2": (0, 1, 2)}
hits = enumerate_flags(idempotent_line(), grid)
print(f"\n{len(hits)} of 12 grid points pass:")
for F in hits:
    print("  ", F)

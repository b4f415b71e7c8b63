#!/usr/bin/env python3
"""Walk through the bundled septic example from raw data to verdict.

The dataset describes a rank-one curve over the rationals inside a dihedral
tower of degree 14 whose quadratic layer is real. One prime ramifies in the
rotation part, and the interesting arithmetic all happens at p = 7.
"""
from twistcong.dataset import check_hypotheses, load_bundled_dataset
from twistcong.engine import gz_constant, verify
from twistcong.report import format_algebraic, render_text

ds = load_bundled_dataset("37a1-septic-577")

print("curve label:", ds.label)
print("group: rotation part of order", ds.group.p_order, "and p =", ds.group.p)
print("ramified places in the rotation layer:", ", ".join(ds.tower.S_r))
print()

# every hypothesis is re-derived from the dataset, nothing is taken on faith
print("hypotheses:")
for h in check_hypotheses(ds):
    print(f"  ({h.key}) {h.status:<12} {h.description}")
print()

# the verification assembles sqrt(d) * L-term / (period * height) per
# character, recognizes the numbers as exact rationals, and applies the
# local corrections at the ramified place
result = verify(ds)
print("normalized leading terms after recognition:")
for label, cr in result.characters.items():
    print(f"  Q({label}) = {format_algebraic(cr.q_value)}"
          f"   (u = {format_algebraic(cr.correction.u)}, t = {cr.correction.t})")
print()

print("congruence sums over the rotation subgroup:")
for line in result.congruences:
    print(f"  S({line.element}) = {line.value}   v_7 = {line.valuation_str()}")
print()
print("verdict:", result.verdict)
print()

# the quadratic layer is real here, so the height-point route cannot derive
# its constant and the dataset pins it; both routes must agree on the verdict
print("height-point route with pinned constant C =", gz_constant(ds))
alt = verify(ds, route="gz")
print("height-point verdict:", alt.verdict)
print()

# the full text report is deterministic and grep-friendly
print("------------------------------------------------------------")
print(render_text(result), end="")

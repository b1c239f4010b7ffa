"""Two sensors in flat disagreement: Dempster fails, the other rules do not."""
from dsmt.belief import MassVector, bel_from_m
from dsmt.combination import FullContradictionError, dempster_combine, dsm_combine, weighted_redistribution
from dsmt.lattice import generate_isotone, generate_powerset_bibe


def show(title, m):
    lat = m.lattice
    print(title)
    for mask, x in m.focal():
        print(f"   {lat.pretty(lat.index_of(mask)):<12} {x:.4f}")


shafer = generate_powerset_bibe(2)
a = MassVector.from_masks(shafer, {0b01: 0.9, 0b11: 0.1})
b = MassVector.from_masks(shafer, {0b10: 0.9, 0b11: 0.1})
show("Dempster", dempster_combine(a, b))
for rule in ("yager", "smets"):
    show(rule, weighted_redistribution(a, b, rule))
try:
    dempster_combine(MassVector.from_masks(shafer, {1: 1.0}), MassVector.from_masks(shafer, {2: 1.0}))
except FullContradictionError as exc:
    print(f"Dempster on certain, opposite sources: {exc}")

free = generate_isotone(2)
t1, t2 = free.masks[3], free.masks[2]
fused = dsm_combine(MassVector.from_masks(free, {t1: 0.9, free.top: 0.1}),
                    MassVector.from_masks(free, {t2: 0.9, free.top: 0.1}))
show("DSm rule (free model)", fused)
bel = bel_from_m(fused)
print("Bel:", {free.pretty(i): round(float(v), 4) for i, v in enumerate(bel.values)})

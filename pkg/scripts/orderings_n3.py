"""Print D_3 under each total order with cardinality and strength, plus BM_3 structure."""
from dsmt.belief import build_bm
from dsmt.lattice import generate_isotone
from dsmt.ordering import dsm_cardinality, strength_vector, total_order

lat = generate_isotone(3)
s = strength_vector(lat)
for kind in ("iso", "card", "strength"):
    order = total_order(lat, kind)
    print(f"-- {kind}")
    for rank, i in enumerate(order):
        m = lat.masks[i]
        print(f"{rank:>3} {lat.pretty(i):<24} C={dsm_cardinality(m)} s={s[i]}")
    bm = build_bm(lat, order)
    print(f"   unit lower-triangular: {bm.is_unit_lower_triangular()}, ones: {int(bm.entries.sum())}")

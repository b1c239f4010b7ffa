"""Check that BM^-1 only holds -1, 0, 1 across orderings, frameworks and n."""
import numpy as np

from dsmt.belief import build_bm, invert_bm
from dsmt.lattice import generate_isotone, generate_powerset_bibe
from dsmt.ordering import total_order


def row(label, bm):
    inv = invert_bm(bm)
    values = sorted(int(v) for v in np.unique(inv))
    nnz = np.count_nonzero(inv)
    print(f"{label:<22} size {len(inv):>4}  entries {values}  nonzero {nnz}")


for n in range(1, 11):
    row(f"DST bibe n={n}", build_bm(generate_powerset_bibe(n)))
for n in range(1, 5):
    lat = generate_isotone(n)
    for kind in ("iso", "card", "strength"):
        row(f"DSmT {kind} n={n}", build_bm(lat, total_order(lat, kind)))

"""Time hyper-powerset generation for n = 0..5 (and n = 6 with --large)."""
import argparse
import time

from dsmt.lattice import DEDEKIND_COUNTS, generate_isotone


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--large", action="store_true", help="include n = 6 (about 63 MB of uint64 masks)")
    args = ap.parse_args()
    top = 6 if args.large else 5
    print(f"{'n':>2} {'|D|':>9} {'expected':>9} {'seconds':>9}")
    for n in range(top + 1):
        t = time.perf_counter()
        size = len(generate_isotone(n, allow_large=n == 6))
        dt = time.perf_counter() - t
        print(f"{n:>2} {size:>9} {DEDEKIND_COUNTS[n]:>9} {dt:>9.3f}")


if __name__ == "__main__":
    main()

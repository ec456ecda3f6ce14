"""Print |Res(Phi_d, Phi_m)|, beta_{d,m} and the ring type for 1 <= d < m <= N."""

import argparse

from cyclomod.cyclotomic import ring_structure, verify_resultant_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=30)
    ap.add_argument("--nontrivial", action="store_true", help="only pairs with |Res| > 1")
    args = ap.parse_args()
    print(f"{'d':>3} {'m':>3} {'|Res|':>10} {'beta':>5}  type")
    for m in range(2, args.max + 1):
        for d in range(1, m):
            rc = verify_resultant_theorem(d, m)
            if args.nontrivial and abs(rc.computed_resultant) == 1:
                continue
            rs = ring_structure(d, m)
            flag = "" if rc.match else "  MISMATCH"
            print(f"{d:>3} {m:>3} {abs(rc.computed_resultant):>10} {rs.beta:>5}  {rs.classification}{flag}")


if __name__ == "__main__":
    main()

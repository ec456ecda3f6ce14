"""Count x-stable subgroups meeting no block, for every rank vector with entries <= R."""

import argparse
import itertools

from cyclomod.bdf import enumerate_subgroups
from cyclomod.crt import FiniteZxModule
from cyclomod.cyclotomic import divisors
from cyclomod.errors import BudgetExceeded


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 6])
    ap.add_argument("--max-rank", type=int, default=1)
    ap.add_argument("--budget", type=int, default=5000)
    args = ap.parse_args()
    for n in args.n:
        ds = divisors(n)
        for ranks in itertools.product(range(args.max_rank + 1), repeat=len(ds)):
            rk = dict(zip(ds, ranks))
            if not any(ranks):
                continue
            order = FiniteZxModule(n, rk).order
            try:
                count = len(enumerate_subgroups(n, rk, args.budget))
            except BudgetExceeded:
                count = "skipped"
            print(f"n={n:<3} ranks={','.join(map(str, ranks)):<12} ambient={order:<8} subgroups={count}")


if __name__ == "__main__":
    main()

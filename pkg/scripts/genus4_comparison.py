"""Computed intersection form of y^3 = x(x^4 - 1) next to the published relator and table."""

import json

from cyclomod.covering import BranchData
from cyclomod.intersection import genus4_comparison, intersection_report


def main():
    rep = intersection_report(BranchData(3, (1,) * 6))
    cmp = genus4_comparison()
    print("basis:", " ".join(f"d{i},{j}" for i, j in rep.form.basis))
    print("computed relator:", cmp["computed_word"])
    print("published relator:", cmp["published_word"])
    print(f"vertices after gluing: computed {cmp['computed_word_vertices']}, "
          f"published {cmp['published_word_vertices']}")
    print("intersection matrix:")
    for row in rep.form.matrix:
        print("  " + " ".join(f"{a:>2}" for a in row))
    print(f"det {rep.form.det()}, symplectic under x: {rep.symplectic()}")
    print(f"table entries differing from the computed form: {len(cmp['form_vs_table'])}")
    print(json.dumps(cmp["form_vs_table"], indent=None))


if __name__ == "__main__":
    main()

"""Tabulate homology dimensions and the (21)-eigenvalue of each fixture."""

from __future__ import annotations

import argparse

from operadmassey import FieldSpec, Permutation, act, build_sc_fragment, build_sc_homology, class_of, homology

SWAP = Permutation((2, 1))


def eigen(O, H) -> str:
    if H.dimension != 1 or H.profile.arity != 2 or H.profile.inputs[0] != H.profile.inputs[1]:
        return ""
    return str(class_of(O, act(O, H.representatives[0], SWAP)).coords[0])


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--field", default="q")
    p.add_argument("--homology-fixture", action="store_true", help="use the zero-differential fixture")
    args = p.parse_args()
    F = FieldSpec.parse(args.field)
    build = build_sc_homology if args.homology_fixture else build_sc_fragment
    print(f"{'d':>2}  {'profile':<8} {'deg':>3} {'dim':>3}  eigenvalue")
    for d in args.d:
        O = build(d, F)
        for prof in sorted(O.profiles):
            for k in O.degrees(prof):
                H = homology(O, prof, k)
                if H.dimension:
                    print(f"{d:>2}  {str(prof):<8} {k:>3} {H.dimension:>3}  {eigen(O, H)}")


if __name__ == "__main__":
    main()

"""Print the non-formality certificate of the Swiss-cheese fixtures."""

from __future__ import annotations

import argparse

from operadmassey import FieldSpec, build_sc_fragment, nonformality_certificate
from operadmassey.errors import UnsupportedCharacteristicError


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--field", default="q", help="'q' or 'fp:P'")
    args = p.parse_args()
    F = FieldSpec.parse(args.field)
    for d in args.d:
        print(f"== d = {d}, field {F}")
        try:
            C = nonformality_certificate(build_sc_fragment(d, F))
        except UnsupportedCharacteristicError as e:
            print(f"skipped: {e}")
            continue
        print(C)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Measured witness bounds for flattened truncations of the recursive
type-n family.

The schema is designed so the D-norm of the type-n function grows with n,
but the blockwise canonical witness bound on a *truncation* takes a
maximum over blocks and therefore stays bounded: it certifies an upper
bound for the truncation, not a lower bound for the limit.  This survey
records the actually derived numbers instead of claiming growth the
certificate cannot witness.

Usage: python scripts/structural_witness_survey.py [--max-n 3]
"""

import argparse

from bairelab import certs
from bairelab import structure as st


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--level", type=int, default=2)
    args = ap.parse_args()

    print(f"{'n':<3} {'m':<3} {'k':<3} {'sup':<8} {'trunc err':<10} "
          f"{'witness bound':<14} {'chain bound':<12}")
    print("-" * 58)
    for n in range(0, args.max_n + 1):
        m, k = 1, n + 2
        F = st.build_type(n, m, k)
        T = st.truncate(F, args.level)
        _, flat = st.flatten(T)
        wu = certs.witness_upper(flat)
        chain = st.struct_chain_bound(F) if n <= 1 else "-"
        print(f"{n:<3} {m:<3} {k:<3} {str(st.sup_value(F.root)):<8} "
              f"{str(st.truncation_error(F, args.level)):<10} "
              f"{str(wu.bound):<14} {str(chain):<12}")


if __name__ == "__main__":
    main()

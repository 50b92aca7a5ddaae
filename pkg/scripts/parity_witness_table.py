#!/usr/bin/env python3
"""Canonical-witness variation of the layer indicator under both parity
conventions.

The layer indicator takes value 1 on the even-subscript (or odd-subscript)
isolation layers; which convention is chosen changes the certified
variation bound, not just its sign.  This table records the derived
bounds so the asymmetry is on the record rather than asserted.

Usage: python scripts/parity_witness_table.py
"""

from bairelab import certs
from bairelab import functions as fn
from bairelab.ordinals import OMEGA, format_ordinal, nat, omega_pow


def main() -> None:
    tops = [OMEGA, omega_pow(nat(2)), omega_pow(nat(3)), omega_pow(nat(4))]
    print(f"{'space':<12} {'parity':<7} {'witness bound':<14} argmax")
    print("-" * 50)
    for top in tops:
        for parity in ("even", "odd"):
            f = fn.layer_indicator(top, parity=parity)
            c = certs.witness_upper(f)
            arg = "-" if c.argmax is None else format_ordinal(c.argmax)
            print(f"[0, {format_ordinal(top)}]".ljust(12)
                  + f" {parity:<7} {str(c.bound):<14} {arg}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Classify every gallery function and print a one-line verdict summary.

Usage: python scripts/gallery_report.py [--parity even|odd]
"""

import argparse
import time

from bairelab import engine as eng
from bairelab import functions as fn
from bairelab.ordinals import nat, omega_pow


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--parity", choices=("even", "odd"), default="even")
    args = ap.parse_args()

    instances = [
        ("fdelta(w^2)", fn.gallery("f_delta", omega_pow(nat(2)), parity=args.parity)),
        ("fdelta(w^3)", fn.gallery("f_delta", omega_pow(nat(3)), parity=args.parity)),
        ("type0(3)", fn.gallery("type0", 3, parity=args.parity)),
        ("prop53b(5)", fn.gallery("prop53b", 5, parity=args.parity)),
        ("prop53c", fn.gallery("prop53c", parity=args.parity)),
        ("prop53d", fn.gallery("prop53d", parity=args.parity)),
        ("prop53a(4)", fn.gallery("prop53a", 4, parity=args.parity)),
    ]
    header = f"{'function':<12} {'cont':<12} {'dbsc':<12} {'b14':<12} {'b12':<12} {'beta_sup':<10} {'|.|_I':<12} time"
    print(header)
    print("-" * len(header))
    for name, f in instances:
        t0 = time.perf_counter()
        rep = eng.classify(f)
        dt = time.perf_counter() - t0
        print(
            f"{name:<12} {rep.continuous.status:<12} {rep.dbsc.status:<12} "
            f"{rep.b14.status:<12} {rep.b12.status:<12} {rep.beta_sup:<10} "
            f"{str(rep.i_value):<12.12} {dt:5.1f}s"
        )


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Print the full invariant tables for the built-in example codes.

For each example this shows the Tutte polynomial, the shifted coefficient
table, the weight hierarchy, the per-a profile (height, degree, mu, minimal
primes) and the colon-conjecture cell matrix.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from starconfig.cli import EXAMPLES
from starconfig.codes import weight_hierarchy
from starconfig.hilbert import conjecture_report, render_conjecture_matrix
from starconfig.star import full_profile
from starconfig.tutte import tutte_subset_sum, whitney_shift


@dataclass
class TableConfig:
    examples: tuple = tuple(sorted(EXAMPLES))
    conjecture_t_max: int | None = None  # default: n + 2
    show_primes: bool = True


def print_tables(name: str, config: TableConfig):
    code = EXAMPLES[name]()
    print(f"=== {name}: [{code.n},{code.k}] over GF({code.spec.modulus}) ===")
    tutte = tutte_subset_sum(code.matroid)
    shifted = whitney_shift(tutte, code.k)
    hierarchy = weight_hierarchy(code)
    print(f"T(x, y) = {tutte}")
    print("shifted coefficients c_{r,j} (rows r, columns j):")
    max_j = max(j for _, j in shifted.c)
    header = "  r\\j " + "".join(f"{j:>6}" for j in range(max_j + 1))
    print(header)
    for r in range(code.k + 1):
        cells = "".join(f"{shifted.coeff(r, j):>6}" for j in range(max_j + 1))
        print(f"  {r:>3} {cells}")
    print(f"weight hierarchy d_0..d_k = {list(hierarchy.d)}")
    print()
    print("a   height  degree      mu          minimal primes (low height)")
    for p in full_profile(code, shifted, hierarchy):
        if p.irrelevant_power:
            primes = f"<x1..x{code.k}>^{p.a}"
        else:
            primes = f"{len(p.primes)} primes + K"
        print(f"{p.a:<3} {p.height:<7} {str(p.degree):<11} "
              f"{str(p.mu):<11} {primes}")
        if config.show_primes and not p.irrelevant_power:
            for q in p.primes:
                forms = ", ".join(code.labels[i] for i in q.flat.indices())
                print(f"      <{forms}>  exponent {q.exponent}")
    t_max = config.conjecture_t_max or code.n + 2
    print()
    print(f"colon-conjecture cells (t up to {t_max}):")
    print(render_conjecture_matrix(conjecture_report(code, t_max)))
    print()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("examples", nargs="*", default=sorted(EXAMPLES),
                        choices=sorted(EXAMPLES) + [[]],
                        help="which built-in examples to print")
    parser.add_argument("--t-max", type=int, default=None)
    parser.add_argument("--no-primes", action="store_true")
    args = parser.parse_args(argv)
    config = TableConfig(examples=tuple(args.examples or sorted(EXAMPLES)),
                         conjecture_t_max=args.t_max,
                         show_primes=not args.no_primes)
    for name in config.examples:
        print_tables(name, config)
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Randomized cross-check experiment.

Samples random linear codes, then verifies on every sample that all
independent computation routes agree:

  * subset-sum Tutte vs deletion-contraction Tutte,
  * the three generalized-Hamming-weight routes and Wei duality,
  * coefficient-sum degree vs prime-sum degree vs fitted Hilbert degree,
  * the mu coefficient formula vs the generator-span rank.

Exits nonzero on the first disagreement.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field

from starconfig.codes import (LinearCode, ghw_bruteforce, ghw_from_dual_rank,
                              ghw_from_tutte, weight_hierarchy,
                              wei_duality_check)
from starconfig.fields import GF, ExactMatrix
from starconfig.hilbert import fit_hilbert_polynomial, mu_oracle
from starconfig.star import full_profile
from starconfig.tutte import (tutte_deletion_contraction, tutte_subset_sum,
                              whitney_shift)


@dataclass
class ExperimentConfig:
    num_codes: int = 25
    max_k: int = 4
    max_n: int = 9
    primes: tuple = (2, 3, 5)
    seed: int = 0
    hilbert: bool = True
    fields: list = field(init=False)

    def __post_init__(self):
        self.fields = [GF(p) for p in self.primes]


def sample_code(rng: random.Random, config: ExperimentConfig) -> LinearCode:
    while True:
        k = rng.randint(1, config.max_k)
        n = rng.randint(k, config.max_n)
        spec = rng.choice(config.fields)
        rows = [[rng.randrange(spec.modulus) for _ in range(n)]
                for _ in range(k)]
        try:
            return LinearCode(ExactMatrix.from_rows(spec, rows))
        except Exception:
            continue


def check_code(code: LinearCode, config: ExperimentConfig) -> list:
    failures = []
    tutte = tutte_subset_sum(code.matroid)
    if tutte != tutte_deletion_contraction(code.matroid):
        failures.append("tutte engines disagree")
    shifted = whitney_shift(tutte, code.k)
    hierarchy = weight_hierarchy(code)
    for r in range(code.k + 1):
        routes = {ghw_bruteforce(code, r), ghw_from_tutte(shifted, code, r),
                  ghw_from_dual_rank(code, r)}
        if len(routes) != 1:
            failures.append(f"ghw routes disagree at r={r}: {routes}")
    holds, lhs, rhs, _ = wei_duality_check(code)
    if not holds:
        failures.append(f"Wei duality violated: {lhs} vs {rhs}")
    profiles = full_profile(code, shifted, hierarchy)  # cross-checks degrees
    if config.hilbert:
        for p in profiles:
            fit = fit_hilbert_polynomial(code, p.a)
            if fit.degree_invariant != p.degree:
                failures.append(
                    f"a={p.a}: Hilbert degree {fit.degree_invariant} "
                    f"!= Tutte degree {p.degree}")
            if fit.implied_height != p.height:
                failures.append(
                    f"a={p.a}: Hilbert height {fit.implied_height} "
                    f"!= interval height {p.height}")
            if mu_oracle(code, p.a) != p.mu:
                failures.append(f"a={p.a}: mu oracle disagrees")
    return failures


def run(config: ExperimentConfig) -> int:
    rng = random.Random(config.seed)
    t0 = time.monotonic()
    for i in range(config.num_codes):
        code = sample_code(rng, config)
        failures = check_code(code, config)
        tag = (f"[{i + 1:>3}/{config.num_codes}] "
               f"[{code.n},{code.k}] over GF({code.spec.modulus})")
        if failures:
            print(f"{tag}  FAIL")
            for f in failures:
                print(f"    {f}")
            print("generator matrix rows:")
            for row in code.matrix.entries:
                print("   ", " ".join(str(x) for x in row))
            return 1
        print(f"{tag}  ok")
    print(f"all {config.num_codes} codes consistent "
          f"({time.monotonic() - t0:.1f}s)")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--num-codes", type=int, default=25)
    parser.add_argument("--max-k", type=int, default=4)
    parser.add_argument("--max-n", type=int, default=9)
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-hilbert", action="store_true",
                        help="skip the Hilbert-oracle comparison")
    args = parser.parse_args(argv)
    config = ExperimentConfig(num_codes=args.num_codes, max_k=args.max_k,
                              max_n=args.max_n, primes=tuple(args.primes),
                              seed=args.seed, hilbert=not args.no_hilbert)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

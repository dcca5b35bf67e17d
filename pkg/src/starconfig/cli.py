"""Command-line front end.

Subcommands: tutte, ghw, profile, primes, mu, verify, conjecture, identity.
Input is either a matrix file (see parse_input) or a built-in example
(--example e0|b3).  Default output is a human table; --json emits the same
values as JSON.  Exit codes: 1 input error, 2 cap exceeded, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass

from .codes import (LinearCode, CodeError, weight_hierarchy, ghw_bruteforce,
                    ghw_from_dual_rank, ghw_from_tutte, wei_duality_check)
from .fields import GF, QQ, ExactArithError, ExactMatrix, FieldSpec
from .hilbert import (WindowError, conjecture_report, fit_hilbert_polynomial,
                      mu_oracle, render_conjecture_matrix)
from .star import (InternalInvariantError, binomial_identity_check,
                   full_profile, height_of_ideal)
from .tutte import (canonical_key_string, tutte_deletion_contraction,
                    tutte_subset_sum, whitney_shift)

EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_INTERNAL = 3

CACHE_ENV = "STARCONFIG_CACHE_DIR"


@dataclass
class InputDocument:
    spec: FieldSpec
    k: int
    n: int
    rows: list
    labels: list | None = None

    def code(self) -> LinearCode:
        matrix = ExactMatrix.from_rows(self.spec, self.rows)
        return LinearCode(matrix, self.labels)


def parse_input(text: str) -> InputDocument:
    """Parse the matrix file format:

        field gf <p>   |   field q
        size <k> <n>
        <k rows of n whitespace-separated entries; rationals as a/b>
        labels <n names>            (optional)
    """
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) < 2:
        raise ExactArithError("input needs a field line and a size line")
    field_parts = lines[0].split()
    if field_parts[0] != "field":
        raise ExactArithError("first line must start with 'field'")
    if field_parts[1:] == ["q"]:
        spec = QQ
    elif len(field_parts) == 3 and field_parts[1] == "gf":
        spec = GF(int(field_parts[2]))
    else:
        raise ExactArithError(f"bad field line {lines[0]!r}")
    size_parts = lines[1].split()
    if size_parts[0] != "size" or len(size_parts) != 3:
        raise ExactArithError("second line must be 'size <k> <n>'")
    k, n = int(size_parts[1]), int(size_parts[2])
    if len(lines) < 2 + k:
        raise ExactArithError(f"expected {k} matrix rows")
    rows = []
    for ln in lines[2:2 + k]:
        entries = [spec.parse(tok) for tok in ln.split()]
        if len(entries) != n:
            raise ExactArithError(
                f"row has {len(entries)} entries, expected {n}")
        rows.append(entries)
    labels = None
    for ln in lines[2 + k:]:
        parts = ln.split()
        if parts[0] == "labels":
            labels = parts[1:]
            if len(labels) != n:
                raise ExactArithError(f"expected {n} labels")
        else:
            raise ExactArithError(f"unexpected line {ln!r}")
    return InputDocument(spec, k, n, rows, labels)


# -- built-in examples -------------------------------------------------------

def example_e0() -> LinearCode:
    """[3,2] code on x1, x2, x1+x2 over GF(2)."""
    matrix = ExactMatrix.from_rows(GF(2), [[1, 0, 1], [0, 1, 1]])
    return LinearCode(matrix, ["x1", "x2", "x1+x2"])


def example_b3() -> LinearCode:
    """[9,3] code of the B3 root system over GF(5) (characteristic != 2)."""
    rows = [[1, 0, 0, 1, 1, 1, 1, 0, 0],
            [0, 1, 0, 1, -1, 0, 0, 1, 1],
            [0, 0, 1, 0, 0, 1, -1, 1, -1]]
    labels = ["x1", "x2", "x3", "x1+x2", "x1-x2", "x1+x3", "x1-x3",
              "x2+x3", "x2-x3"]
    return LinearCode(ExactMatrix.from_rows(GF(5), rows), labels)


EXAMPLES = {"e0": example_e0, "b3": example_b3}


# -- persistent Tutte cache --------------------------------------------------

class TutteCache:
    """Content-addressed polynomial cache; writes are atomic
    (write-temp-then-rename), so concurrent runs can only race on
    identical-content entries."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        digest = hashlib.sha256(key.encode()).hexdigest()
        return os.path.join(self.directory, digest + ".json")

    def get(self, key: str):
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("key") != key:
            return None
        return doc["poly"]

    def put(self, key: str, poly_doc: dict):
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"key": key, "poly": poly_doc}, fh)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def cache_from_args(args) -> TutteCache | None:
    if args.no_cache:
        return None
    directory = args.cache_dir or os.environ.get(CACHE_ENV)
    if directory is None:
        return None
    return TutteCache(directory)


# -- shared computation ------------------------------------------------------

def load_code(args) -> LinearCode:
    if args.example:
        return EXAMPLES[args.example]()
    if not args.input:
        raise ExactArithError("provide an input file or --example")
    with open(args.input, encoding="utf-8") as fh:
        return parse_input(fh.read()).code()


def compute_tutte(code: LinearCode, args):
    cache = cache_from_args(args)
    t0 = time.monotonic()
    by_subsets = tutte_subset_sum(code.matroid, cap=args.max_n,
                                  threads=args.threads)
    t1 = time.monotonic()
    by_dc = tutte_deletion_contraction(code.matroid, cache=cache)
    t2 = time.monotonic()
    if by_subsets != by_dc:
        raise InternalInvariantError(
            "subset-sum and deletion-contraction engines disagree")
    timings = {"subset_sum_s": t1 - t0, "deletion_contraction_s": t2 - t1}
    return by_subsets, timings


def emit(args, doc: dict, table: str):
    if args.json:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(table)


# -- subcommands -------------------------------------------------------------

def cmd_tutte(args) -> int:
    code = load_code(args)
    poly, timings = compute_tutte(code, args)
    shifted = whitney_shift(poly, code.k)
    doc = {"tutte": poly.to_json(), "shifted": shifted.to_json(),
           "engines_agree": True, "timings": timings}
    table = (f"T(x, y)     = {poly}\n"
             f"engines agree: yes\n"
             f"p_r          = {list(shifted.p)}")
    emit(args, doc, table)
    return 0


def cmd_ghw(args) -> int:
    code = load_code(args)
    poly, _ = compute_tutte(code, args)
    shifted = whitney_shift(poly, code.k)
    rows = []
    for r in range(code.k + 1):
        rows.append((r, ghw_bruteforce(code, r),
                     ghw_from_tutte(shifted, code, r),
                     ghw_from_dual_rank(code, r)))
    holds, lhs, rhs, dual_d = wei_duality_check(code)
    doc = {
        "hierarchy": [row[1] for row in rows],
        "routes": [{"r": r, "bruteforce": b, "tutte": t, "dual_rank": d}
                   for r, b, t, d in rows],
        "dual_hierarchy": dual_d,
        "wei_duality": {"holds": holds, "primal": lhs, "complement": rhs},
    }
    lines = ["r  brute  tutte  dual-rank"]
    for r, b, t, d in rows:
        lines.append(f"{r}  {b:5}  {t:5}  {d:9}")
    lines.append(f"Wei duality: {'holds' if holds else 'VIOLATED'} "
                 f"({lhs} vs {rhs})")
    emit(args, doc, "\n".join(lines))
    return 0 if holds else EXIT_INTERNAL


def _profiles(code, args):
    poly, timings = compute_tutte(code, args)
    shifted = whitney_shift(poly, code.k)
    hierarchy = weight_hierarchy(code)
    return poly, shifted, hierarchy, full_profile(code, shifted,
                                                  hierarchy), timings


def cmd_profile(args) -> int:
    code = load_code(args)
    poly, shifted, hierarchy, profiles, timings = _profiles(code, args)
    doc = {
        "tutte": poly.to_json(),
        "shifted": shifted.to_json(),
        "hierarchy": hierarchy.to_json(),
        "profiles": [p.to_json() for p in profiles],
        "timings": timings,
    }
    lines = [f"T(x, y) = {poly}",
             f"weights d_0..d_k = {list(hierarchy.d)}",
             "",
             "a   height  degree      mu          #min-primes(low height)"]
    for p in profiles:
        lines.append(f"{p.a:<3} {p.height:<7} {str(p.degree):<11} "
                     f"{str(p.mu):<11} {len(p.primes)}")
    emit(args, doc, "\n".join(lines))
    return 0


def cmd_primes(args) -> int:
    code = load_code(args)
    _, _, hierarchy, profiles, _ = _profiles(code, args)
    doc = {"primes": [{"a": p.a,
                       "irrelevant_power": p.irrelevant_power,
                       "list": [q.to_json() for q in p.primes]}
                      for p in profiles]}
    lines = []
    for p in profiles:
        if p.irrelevant_power:
            lines.append(f"a={p.a}: <x1..xk>^{p.a} (irrelevant ideal power)")
            continue
        lines.append(f"a={p.a}: height {p.height}, {len(p.primes)} minimal "
                     "primes + K (unknown)")
        for q in p.primes:
            forms = ", ".join(code.labels[i] for i in q.flat.indices())
            lines.append(f"    ({forms})  nu={q.nu}  exponent={q.exponent}")
    emit(args, doc, "\n".join(lines))
    return 0


def cmd_mu(args) -> int:
    code = load_code(args)
    _, _, _, profiles, _ = _profiles(code, args)
    doc = {"mu": [{"a": p.a, "mu": str(p.mu)} for p in profiles]}
    lines = ["a   mu"] + [f"{p.a:<3} {p.mu}" for p in profiles]
    emit(args, doc, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    code = load_code(args)
    _, shifted, hierarchy, profiles, timings = _profiles(code, args)
    window = None
    if args.window:
        lo, hi = args.window.split(":")
        window = (int(lo), int(hi))
    checks = []
    all_ok = True
    for p in profiles:
        try:
            fit = fit_hilbert_polynomial(code, p.a, window=window)
        except WindowError as exc:
            checks.append({"a": p.a, "status": "inconclusive",
                           "reason": str(exc)})
            all_ok = False
            continue
        mu_o = mu_oracle(code, p.a)
        ok = (fit.degree_invariant == p.degree
              and fit.implied_height == p.height
              and mu_o == p.mu)
        all_ok &= ok
        checks.append({
            "a": p.a, "status": "ok" if ok else "MISMATCH",
            "tutte_degree": str(p.degree),
            "oracle_degree": str(fit.degree_invariant),
            "height": p.height, "oracle_height": fit.implied_height,
            "mu": str(p.mu), "oracle_mu": str(mu_o),
            "hilbert": fit.to_json(),
        })
    doc = {"oracle": checks, "all_ok": all_ok, "timings": timings}
    lines = ["a   status  degree(tutte=oracle)  height  mu"]
    for c in checks:
        if c["status"] == "inconclusive":
            lines.append(f"{c['a']:<3} inconclusive ({c['reason']})")
        else:
            lines.append(f"{c['a']:<3} {c['status']:<7} "
                         f"{c['tutte_degree']}={c['oracle_degree']:<12} "
                         f"{c['height']}={c['oracle_height']:<5} "
                         f"{c['mu']}={c['oracle_mu']}")
    emit(args, doc, "\n".join(lines))
    return 0 if all_ok else EXIT_INTERNAL


def cmd_conjecture(args) -> int:
    code = load_code(args)
    t_max = code.n + 2
    if args.window:
        _, hi = args.window.split(":")
        t_max = int(hi)
    report = conjecture_report(code, t_max)
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        if report["note"]:
            print("note:", report["note"])
        print(render_conjecture_matrix(report))
    return 0


def cmd_identity(args) -> int:
    failures = []
    cap = 14
    total = 0
    for alpha in range(2, cap + 1):
        for beta in range(1, alpha):
            for gamma in range(1, beta + 1):
                total += 1
                if not binomial_identity_check(alpha, beta, gamma):
                    failures.append((alpha, beta, gamma))
    doc = {"checked": total, "failures": failures}
    emit(args, doc, f"binomial identity: {total} triples checked, "
         f"{len(failures)} failures")
    return 0 if not failures else EXIT_INTERNAL


COMMANDS = {
    "tutte": cmd_tutte,
    "ghw": cmd_ghw,
    "profile": cmd_profile,
    "primes": cmd_primes,
    "mu": cmd_mu,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
    "identity": cmd_identity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starconfig",
        description="Exact Tutte / star-configuration invariant tool")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="matrix file")
        p.add_argument("--example", choices=sorted(EXAMPLES))
        p.add_argument("--json", action="store_true")
        p.add_argument("--window", help="lo:hi degree window")
        p.add_argument("--cache-dir")
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--max-n", type=int, default=24)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CodeError, ExactArithError, OSError, ValueError) as exc:
        msg = str(exc)
        if "exceeds" in msg and "cap" in msg:
            print(f"error: {msg}", file=sys.stderr)
            return EXIT_CAP
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

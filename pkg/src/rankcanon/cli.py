"""Command-line front end.

Exit status: 0 when every check passes, 1 when a mathematical check
fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .block_matrix import BlockMatrix
from .canonical_form import (
    check_conjecture,
    column_reduce,
    pipeline_check,
    to_canonical,
)
from .fileformat import MatrixDocument, ParseError, read_document, write_document
from .inequalities import (
    check_multipartite_suite,
    check_tripartite_suite,
    marginal_necessary_check,
)
from .quantum_states import random_block_matrix, zero_entropy_vector

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Output:
    """Human-readable lines, or ``key=value`` records in machine mode."""

    def __init__(self, machine: bool, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout

    def text(self, line: str) -> None:
        if not self.machine:
            print(line, file=self.stream)

    def record(self, key: str, value) -> None:
        if self.machine:
            if isinstance(value, bool):
                value = str(value).lower()
            elif isinstance(value, (list, tuple)):
                value = ",".join(map(str, value))
            print(f"{key}={value}", file=self.stream)


def _load(path: str) -> MatrixDocument:
    try:
        return read_document(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _block_matrix(doc: MatrixDocument) -> BlockMatrix:
    if doc.kind == "blockmatrix":
        return doc.block_matrix()
    if doc.kind == "density":
        d = doc.header
        if len(d) != 2:
            raise UsageError("a density input must have exactly two parties to be read as a block matrix")
        return BlockMatrix.from_flat(doc.payload[0], d[0], d[0], d[1], d[1])
    raise UsageError(f"expected a blockmatrix document, got {doc.kind}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_canon(args, out: Output) -> int:
    M = _block_matrix(_load(args.infile))
    if M.is_zero():
        raise UsageError("the zero matrix has no canonical form")
    res = column_reduce(to_canonical(M))
    prof = res.profile
    ok = res.replays()
    out.text(f"profile: p={prof.p} k={list(prof.k)} r={list(prof.r)}")
    out.text(f"column mixings: {res.mixings}")
    out.text(f"certificate replay: {'ok' if ok else 'FAILED'}")
    out.record("p", prof.p)
    out.record("k", prof.k)
    out.record("r", prof.r)
    out.record("mixings", res.mixings)
    out.record("replay", ok)
    if args.out:
        write_document(args.out, MatrixDocument.from_block_matrix(res.N))
    if args.cert:
        write_document(args.cert, MatrixDocument.from_certificate(res.certificate))
    return EXIT_OK if ok else EXIT_MATH


def cmd_verify(args, out: Output) -> int:
    rep = check_conjecture(_block_matrix(_load(args.infile)))
    out.text(str(rep))
    for key, val in (("schmidt_rank", rep.schmidt_rank), ("rank", rep.rank),
                     ("rank_gamma_B", rep.rank_gamma_B), ("rank_gamma_A", rep.rank_gamma_A),
                     ("bound", rep.bound), ("slack_B", rep.slack_B), ("slack_A", rep.slack_A),
                     ("holds", rep.holds)):
        out.record(key, val)
    return EXIT_OK if rep.holds else EXIT_MATH


def cmd_entropy(args, out: Output) -> int:
    doc = _load(args.infile)
    if doc.kind != "density":
        raise UsageError(f"expected a density document, got {doc.kind}")
    rho = doc.density()
    if rho.parties < 3:
        raise UsageError(f"entropy checks need at least 3 parties, got {rho.parties}")
    reports = check_tripartite_suite(rho) if rho.parties == 3 else check_multipartite_suite(rho)
    failed = 0
    for i, r in enumerate(reports):
        failed += not r.holds
        out.text(str(r))
        out.record(f"ineq.{i}", f"{r.name};{r.formula().replace(' ', '')};{r.lhs};{r.rhs};"
                                f"{'holds' if r.holds else 'violated'};{'saturated' if r.saturated else 'strict'}")
    out.text(f"{len(reports) - failed}/{len(reports)} inequalities hold")
    out.record("count", len(reports))
    out.record("violations", failed)
    return EXIT_OK if not failed else EXIT_MATH


def cmd_marginal(args, out: Output) -> int:
    if args.infile:
        if args.ab or args.ac or args.bc:
            raise UsageError("give either --in or all of --ab/--ac/--bc")
        doc = _load(args.infile)
        if doc.kind != "marginal-triple":
            raise UsageError(f"expected a marginal-triple document, got {doc.kind}")
        ab, ac, bc = doc.marginals()
    else:
        if not (args.ab and args.ac and args.bc):
            raise UsageError("marginal needs --ab, --ac and --bc (or a single --in)")
        ab, ac, bc = (_load(p).density() for p in (args.ab, args.ac, args.bc))
    rep = marginal_necessary_check(ab, ac, bc)
    out.text(str(rep))
    for c in rep.report.checks:
        out.record(f"check.{c.name}", c.passed)
    out.record("ranks", [rep.ranks["AB"], rep.ranks["AC"], rep.ranks["BC"]])
    out.record("marginals_consistent", rep.marginals_consistent)
    out.record("verdict", rep.verdict)
    if args.expect_consistent and not rep.consistent:
        return EXIT_MATH
    return EXIT_OK


def cmd_vec(args, out: Output) -> int:
    doc = _load(args.infile)
    if doc.kind != "density":
        raise UsageError(f"expected a density document, got {doc.kind}")
    v = zero_entropy_vector(doc.density())
    out.text(f"0-entropy ranks (A, B, C, D, AB, AC, AD): {v}")
    out.text("S0 = (" + ", ".join(f"{s:.3f}" for s in v.entropies()) + ")")
    out.record("ranks", v.ranks)
    return EXIT_OK


def fuzz_trial(trial_seed: int, dims: tuple[int, int, int, int], max_sr: int | None):
    """Generate one instance from its seed and run the full pipeline on it."""
    m1, n1, m2, n2 = dims
    top = min(m1 * n1, m2 * n2)
    if max_sr is not None:
        top = min(top, max_sr)
    K = 1 + trial_seed % top
    M = random_block_matrix(m1, n1, m2, n2, K, trial_seed)
    try:
        rep = pipeline_check(M)
    except ArithmeticError as exc:
        return trial_seed, K, False, f"raised {type(exc).__name__}: {exc}"
    first = rep.first_failure
    return trial_seed, K, rep.passed, (first.name if first else "")


def _workers() -> int:
    raw = os.environ.get("RANKCANON_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"RANKCANON_WORKERS must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("RANKCANON_WORKERS must be at least 1")
    return n


def cmd_fuzz(args, out: Output) -> int:
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
    except ValueError:
        raise UsageError(f"--dims must be four comma-separated integers, got {args.dims!r}") from None
    if len(dims) != 4 or min(dims) < 1:
        raise UsageError("--dims needs four positive integers m1,n1,m2,n2")
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    if args.max_sr is not None and args.max_sr < 1:
        raise UsageError("--max-sr must be at least 1")
    seeds = [args.seed + t for t in range(args.trials)]
    workers = _workers()
    if workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fuzz_trial, seeds, [dims] * len(seeds), [args.max_sr] * len(seeds)))
    else:
        results = [fuzz_trial(s, dims, args.max_sr) for s in seeds]
    results.sort()
    failures = [r for r in results if not r[2]]
    passed = len(results) - len(failures)
    dim_txt = ",".join(map(str, dims))
    for seed, K, _, check in failures:
        out.text(f"FAIL seed={seed} Sr={K} at {check}; reproduce: "
                 f"rankcanon fuzz --trials 1 --seed {seed} --dims {dim_txt}")
        out.record(f"failure.{seed}", f"{K};{check}")
    out.text(f"{passed}/{len(results)} trials pass (dims {dim_txt}, seeds {args.seed}..{args.seed + len(results) - 1})")
    out.record("dims", dims)
    out.record("trials", len(results))
    out.record("passed", passed)
    out.record("failed", len(failures))
    return EXIT_OK if not failures else EXIT_MATH


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="emit key=value records")
    parser = argparse.ArgumentParser(prog="rankcanon", parents=[common],
                                     description="Exact canonical forms and rank-inequality checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", parents=[common], help="canonicalize a block matrix")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--cert")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("verify", parents=[common], help="check r(M^Gamma) <= Sr(M) r(M)")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("entropy", parents=[common], help="zero-entropy inequality suite")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("marginal", parents=[common], help="necessary conditions for three pair marginals")
    p.add_argument("--in", dest="infile")
    p.add_argument("--ab")
    p.add_argument("--ac")
    p.add_argument("--bc")
    p.add_argument("--expect-consistent", action="store_true",
                   help="exit 1 when the verdict is that no joint state exists")
    p.set_defaults(func=cmd_marginal)

    p = sub.add_parser("fuzz", parents=[common], help="seeded pipeline campaign")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dims", default="2,2,2,2")
    p.add_argument("--max-sr", type=int)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("vec", parents=[common], help="0-entropy vector of a pure four-party state")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_vec)
    return parser


def run(argv: Sequence[str] | None = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(getattr(args, "machine", False), stream)
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"rankcanon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

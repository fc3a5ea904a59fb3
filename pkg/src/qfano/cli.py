"""Command-line interface: ``qfano <command> ...`` or ``python -m qfano``.

Exit status: 0 on success or pass, 1 when a check fails, 2 on malformed
input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import designfile
from .construction import ConstructionError, ConstructionOptions, construct
from .designfile import DesignFormatError
from .gf import FieldError, gf
from .linalg import LinalgError
from .spreads import (
    SpreadError, find_parallelism, format_parallelism, parallelism_defects, parse_parallelism,
)
from .verify import (
    coverage, divisibility, dual, punct_der, punct_res, source_multiplicities, verify_dual,
    verify_pair,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("qfano")


class InputError(Exception):
    pass


def _field(q):
    try:
        return gf(q)
    except FieldError as exc:
        raise InputError(str(exc)) from None


def _read(path):
    try:
        return designfile.read_design(path)
    except OSError as exc:
        raise InputError("%s: %s" % (path, exc.strerror)) from None
    except (DesignFormatError, LinalgError) as exc:
        raise InputError("%s: %s" % (path, exc)) from None


def _emit(args, structured: dict, text: str):
    if args.format == "structured":
        print(json.dumps(structured, indent=2, sort_keys=True))
    else:
        print(text)


def parse_perm(specs, q: int, members: int) -> dict[int, list[int]]:
    """``X=p1,...,p_{q+1}`` (1-based; ``*`` for every A-member) to 0-based maps."""
    out: dict[int, list[int]] = {}
    for spec in specs or ():
        try:
            lhs, rhs = spec.split("=")
            perm = [int(t) - 1 for t in rhs.split(",")]
        except ValueError:
            raise InputError("bad --perm %r, expected X=p1,...,p%d" % (spec, q + 1)) from None
        if sorted(perm) != list(range(q + 1)):
            raise InputError("--perm %r is not a permutation of 1..%d" % (spec, q + 1))
        if lhs.strip() == "*":
            targets = range(members)
        else:
            try:
                x = int(lhs) - 1
            except ValueError:
                raise InputError("bad A-member index in --perm %r" % spec) from None
            if not 0 <= x < members:
                raise InputError("A-member index %d out of range 1..%d" % (x + 1, members))
            targets = [x]
        for x in targets:
            out[x] = perm
    return out


# -- commands ------------------------------------------------------------------

def cmd_construct(args):
    F = _field(args.q)
    par = None
    if args.parallelism:
        try:
            with open(args.parallelism) as f:
                par = parse_parallelism(F, f.read())
        except OSError as exc:
            raise InputError("%s: %s" % (args.parallelism, exc.strerror)) from None
        except (SpreadError, LinalgError) as exc:
            raise InputError("%s: %s" % (args.parallelism, exc)) from None
        problems = parallelism_defects(par)
        if problems:
            raise InputError("%s: not a parallelism (%s)" % (args.parallelism, problems[0]))
    opts = ConstructionOptions(parallelism=par, method=args.method,
                               matchings=parse_perm(args.perm, F.q, F.q**2 + 1))
    t0 = time.perf_counter()
    result = construct(F, opts)
    elapsed = time.perf_counter() - t0
    designfile.write_design(args.out_derived, result.derived)
    designfile.write_design(args.out_residual, result.residual)
    sizes = {**result.derived.tag_counts(), **result.residual.tag_counts()}
    _emit(args,
          {"q": F.q, "derived": len(result.derived), "residual": len(result.residual),
           "sizes": sizes, "seconds": round(elapsed, 3)},
          "q=%d derived=%d residual=%d (%s)" % (
              F.q, len(result.derived), len(result.residual),
              " ".join("%s=%d" % kv for kv in sizes.items())))
    return EXIT_OK


def cmd_verify(args):
    der, res = _read(args.derived), _read(args.residual)
    try:
        rep = verify_pair(der, res, args.workers)
    except LinalgError as exc:
        raise InputError(str(exc)) from None
    lines = ["%-18s %s" % (name, "ok" if ok else "FAIL") for name, ok in rep.checks.items()]
    lines.append("histogram " + " ".join("%d:%d" % kv for kv in rep.coverage.histogram.items()))
    lines += rep.messages
    lines.append("PASS" if rep.passed else "FAIL")
    _emit(args, rep.summary(), "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_parallelism(args):
    F = _field(args.q)
    par = find_parallelism(F, args.method)
    text = "# parallelism of F_q^4, q=%d\n%s" % (F.q, format_parallelism(par))
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_punct(args):
    D = _read(args.inp)
    out = punct_der(D) if args.part == "der" else punct_res(D)
    designfile.write_design(args.out, out)
    _emit(args, {"in": len(D), "out": len(out), "part": args.part},
          "%s: %d of %d blocks" % (args.part, len(out), len(D)))
    return EXIT_OK


def cmd_dual(args):
    D = _read(args.inp)
    designfile.write_design(args.out, dual(D))
    _emit(args, {"blocks": len(D), "k": D.n - D.k}, "%d blocks, k=%d" % (len(D), D.n - D.k))
    return EXIT_OK


def cmd_dual_check(args):
    der, res = _read(args.derived), _read(args.residual)
    rep = verify_dual(der, res, args.workers)
    lines = ["%-20s %s" % (name, "ok" if ok else "FAIL") for name, ok in rep.checks.items()]
    lines.append("direct coverage by dual blocks " +
                 " ".join("%d:%d" % kv for kv in rep.direct.histogram.items()))
    lines.append("PASS" if rep.passed else "FAIL")
    _emit(args, rep.summary(), "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_stats(args):
    D = _read(args.inp)
    info = {"q": D.field.q, "n": D.n, "k": D.k, "blocks": len(D), "tags": D.tag_counts(),
            "duplicates": len(D.duplicates())}
    text = ["q=%d n=%d k=%d blocks=%d" % (D.field.q, D.n, D.k, len(D))]
    text += ["  %-3s %d" % kv for kv in D.tag_counts().items()]
    if args.coverage and D.k >= 2:
        rep = coverage(D, workers=args.workers)
        info["coverage"] = rep.summary()["histogram"]
        text.append("coverage " + " ".join("%d:%d" % kv for kv in rep.histogram.items()))
    _emit(args, info, "\n".join(text))
    return EXIT_OK


def cmd_divisibility(args):
    try:
        ok, ratios = divisibility(args.t, args.k, args.n, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    shown = [str(r) for r in ratios]
    _emit(args, {"t": args.t, "k": args.k, "n": args.n, "q": args.q,
                 "ratios": shown, "integral": ok},
          "%s\n%s" % (" ".join(shown), "PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lemmas(args):
    F = _field(args.q)
    result = construct(F, ConstructionOptions(method=args.method))
    checks = source_multiplicities(result, sample=args.sample, workers=args.workers)
    ok = all(c.passed for c in checks)
    text = ["%-28s expect %-3d %s  over %d" % (c.name, c.expected, "ok" if c.passed else "FAIL",
                                              c.checked) for c in checks]
    _emit(args, {"passed": ok, "checks": [c.__dict__ for c in checks]},
          "\n".join(text + ["PASS" if ok else "FAIL"]))
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--workers", type=int, default=None,
                        help="worker threads for coverage (default: $QFANO_WORKERS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qfano", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build derived and residual planes")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--parallelism", metavar="FILE")
    c.add_argument("--method", choices=("auto", "lex", "cyclic"), default="auto")
    c.add_argument("--perm", action="append", metavar="X=p1,...",
                   help="match Y_j with C_{p_j} for A-member X (1-based, '*' for all)")
    c.add_argument("--out-derived", required=True)
    c.add_argument("--out-residual", required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("verify", parents=[common], help="check a derived/residual pair")
    c.add_argument("--derived", required=True)
    c.add_argument("--residual", required=True)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("parallelism", parents=[common], help="print a parallelism of F_q^4")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--method", choices=("auto", "lex", "cyclic"), default="auto")
    c.add_argument("--out")
    c.set_defaults(func=cmd_parallelism)

    c = sub.add_parser("punct", parents=[common], help="derived or residual puncturing")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--part", choices=("der", "res"), required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_punct)

    c = sub.add_parser("dual", parents=[common], help="replace blocks by orthogonal complements")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_dual)

    c = sub.add_parser("dual-check", parents=[common], help="check the dual of a pair")
    c.add_argument("--derived", required=True)
    c.add_argument("--residual", required=True)
    c.set_defaults(func=cmd_dual_check)

    c = sub.add_parser("stats", parents=[common], help="block counts per tag")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--coverage", action="store_true", help="also print the 2-subspace histogram")
    c.set_defaults(func=cmd_stats)

    c = sub.add_parser("check-divisibility", parents=[common], help="integrality of block counts")
    for name in ("t", "k", "n", "q"):
        c.add_argument("--" + name, type=int, required=True)
    c.set_defaults(func=cmd_divisibility)

    c = sub.add_parser("lemmas", parents=[common], help="per-source multiplicity checks")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--method", choices=("auto", "lex", "cyclic"), default="auto")
    c.add_argument("--sample", type=int, default=None,
                   help="check at most this many members of each of A, B, C")
    c.set_defaults(func=cmd_lemmas)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (ConstructionError, SpreadError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

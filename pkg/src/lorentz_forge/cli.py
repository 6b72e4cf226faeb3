"""Command-line surface: compute norms and coefficients for grid files and
run the verification suites.

Outputs are a pure function of (input files, flags, seed); every document
embeds the resolved configuration and a content hash of its inputs.  Exit
codes: 0 success (and all checks passed for ``verify``), 1 failed checks,
2 bad arguments/files, 3 requested Walsh truncation beyond the grid
resolution.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .fourier import TRIG, WALSH, coeffs_2d
from .norms import evaluate_norm_request
from .stepfun import DyadicStep2D, load_grid
from .verify.checks import SUITE_NAMES, run_suite
from .verify.report import write_reports


def _content_hash(f: DyadicStep2D) -> str:
    h = hashlib.sha256()
    h.update(bytes(str(f.levels), "ascii"))
    h.update(np.ascontiguousarray(f.values).tobytes())
    return h.hexdigest()


def _emit(doc: dict, out_path, fmt: str) -> None:
    if fmt == "csv":
        lines = [",".join(map(str, doc.keys())), ",".join(repr(v) for v in doc.values())]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sp):
    sp.add_argument("--in", dest="inp", metavar="PATH", help="input grid file (JSON)")
    sp.add_argument("--out", default=None, help="output path (stdout if omitted)")
    sp.add_argument("--format", default="json", choices=("json", "csv"),
                    help="output format")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lorentz-forge",
        description="norms, coefficients and inequality verification for "
                    "dyadic step functions on [0,1)^2")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    norm = sub.add_parser("norm", help="compute a norm of a grid file",
                          formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    norm.add_argument("--kind", required=True,
                      choices=("lorentz", "grand", "mixed", "seq_grand",
                               "logweight", "p6"))
    norm.add_argument("--p", nargs=2, default=["2", "2"], metavar="F",
                      help="integrability exponents (use 'inf' for infinity)")
    norm.add_argument("--q", nargs=2, default=["2", "2"], metavar="F",
                      help="fineness exponents (use 'inf' for infinity)")
    norm.add_argument("--theta", nargs=2, type=float, default=[0.0, 0.0],
                      metavar="F", help="grand smoothness weights")
    norm.add_argument("--sign", default="plus", choices=("plus", "minus"),
                      help="sequence-norm exponent sign")
    norm.add_argument("--J", type=int, default=24,
                      help="epsilon grid depth for grand norms")
    _add_common(norm)

    co = sub.add_parser("coeffs", help="compute a coefficient dump",
                        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    co.add_argument("--system", nargs=2, default=["walsh", "walsh"],
                    metavar="NAME", help="per-axis system: trig or walsh")
    co.add_argument("--K", nargs=2, type=int, default=[8, 8], metavar="N",
                    help="truncation per axis")
    _add_common(co)

    ver = sub.add_parser("verify", help="run a verification suite",
                         formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    ver.add_argument("--suite", required=True, help="suite name, or 'all'")
    ver.add_argument("--seed", type=int, default=7, help="corpus seed")
    ver.add_argument("--level", nargs=2, type=int, default=[5, 5],
                     metavar="N", help="dyadic level of the random corpora")
    ver.add_argument("--out", default="reports", help="report directory")
    return ap


def _load(path) -> DyadicStep2D:
    if not path:
        raise FileNotFoundError("missing --in grid file")
    return load_grid(path)


def cmd_norm(args) -> int:
    f = _load(args.inp)
    req = {"norm": args.kind, "p": args.p, "q": args.q,
           "theta": args.theta, "sign": args.sign, "epsJ": args.J}
    res = evaluate_norm_request(req, f)
    doc = {"config": req, "content_hash": _content_hash(f), **res}
    _emit(doc, args.out, args.format)
    return 0


def cmd_coeffs(args) -> int:
    f = _load(args.inp)
    systems = []
    for name in args.system:
        if name not in ("trig", "walsh"):
            raise ValueError(f"unknown system {name!r}")
        systems.append(TRIG if name == "trig" else WALSH)
    K1, K2 = args.K
    a = coeffs_2d(f, systems[0], systems[1], K1, K2)
    parseval = None
    if all(s.kind == "walsh" for s in systems):
        from .norms import mixed_lebesgue_norm
        parseval = float(abs(np.sum(np.abs(a.entries) ** 2)
                             - mixed_lebesgue_norm(f, (2, 2)) ** 2))
    doc = {
        "config": {"system": args.system, "K": [K1, K2]},
        "content_hash": _content_hash(f),
        "system": args.system,
        "K": [K1, K2],
        "re": [[float(x) for x in row] for row in a.entries.real],
        "im": [[float(x) for x in row] for row in a.entries.imag],
    }
    if parseval is not None:
        doc["parseval_residual"] = parseval
    _emit(doc, args.out, args.format)
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITE_NAMES and args.suite != "interp":
        sys.stderr.write(f"unknown suite {args.suite!r}; "
                         f"choose from {', '.join(SUITE_NAMES)}\n")
        return 2
    reports = run_suite(args.suite, seed=args.seed,
                        level=tuple(args.level))
    jl, cs = write_reports(reports, args.out)
    npass = sum(r.passed for r in reports)
    sys.stdout.write(f"{npass}/{len(reports)} checks passed; "
                     f"reports: {jl}, summary: {cs}\n")
    return 0 if npass == len(reports) else 1


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "norm":
            return cmd_norm(args)
        if args.command == "coeffs":
            return cmd_coeffs(args)
        return cmd_verify(args)
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        msg = str(exc)
        sys.stderr.write(f"error: {msg}\n")
        return 3 if "resolution" in msg else 2


if __name__ == "__main__":
    sys.exit(main())

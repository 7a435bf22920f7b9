"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when some check fails,
2 for bad input or an exceeded node cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .crystal_graph import DEFAULT_CAP, export_dot, export_json, generate, summary
from .crystal_ops import lower_path, subdivision
from .errors import CapExceededError, DomainError
from .folding import (all_foldings, check_conditions, psi, resolve, verify_virtualization,
                      virtual_lower, virtualize_path)
from .level_zero import (check_psi_delta, check_tensor_factorization, generate_projected,
                         verify_kr_virtualization)
from .paths import Path, evaluate
from .reports import Report
from .root_data import cartan_datum

CHECKS = ("conditions", "virtualization", "psi-delta", "tensor-factorization", "kr")


def _coeffs(text):
    try:
        return [Fraction(x) for x in text.split(",")]
    except ValueError:
        raise DomainError(f"bad coefficient list {text!r}")


def _ints(text):
    vals = _coeffs(text)
    if any(v.denominator != 1 for v in vals):
        raise DomainError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def format_path(p: Path, datum) -> str:
    segs = [datum.format_weight(s) for s in p.segments]
    if len(segs) == 1:
        return f"({segs[0]},)"
    return "(" + ", ".join(segs) + ")"


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    datum = cartan_datum(args.type)
    if (args.weight is None) == (args.weight_level0 is None):
        raise DomainError("give exactly one of --weight and --weight-level0")
    if args.weight_level0 is not None:
        B = generate_projected(datum, _ints(args.weight_level0), args.cap)
    else:
        coeffs = _coeffs(args.weight)
        if len(coeffs) != datum.rank:
            raise DomainError(f"{datum} needs {datum.rank} coefficients, got {len(coeffs)}")
        B = generate(datum, datum.weight(coeffs), args.cap)
    text = {"dot": export_dot, "json": export_json, "summary": summary}[args.format](B)
    _emit(text, args.out)
    return 0


def _run_check(check, fold, args) -> Report:
    if check == "conditions":
        c = check_conditions(fold)
        rep = Report("conditions", {"folding": fold.name, "gamma": list(fold.gamma)},
                     sizes={"cond_I": c["cond_I"], "cond_II": c["cond_II"]})
        if c["witnesses"]:
            rep.fail(**c["witnesses"][0])
            rep.notes = c["witnesses"]
        return rep
    if check == "psi-delta":
        rep = Report("psi-delta", {"folding": fold.name, "gamma": list(fold.gamma)})
        if not check_psi_delta(fold):
            lhs = psi(fold, fold.source.null_root())
            rhs = fold.target.null_root() * (fold.source.kac_label(0) * fold.gamma_of(0))
            rep.fail(lhs=fold.target.format_weight(lhs), rhs=fold.target.format_weight(rhs))
        return rep
    if check == "virtualization":
        if args.weight is None:
            raise DomainError("--check virtualization needs --weight")
        return verify_virtualization(fold, fold.source.weight(_coeffs(args.weight)), args.cap)
    if check == "kr":
        if args.weight_level0 is None:
            raise DomainError("--check kr needs --weight-level0 selecting one node r")
        m = _ints(args.weight_level0)
        if sorted(m) != [0] * (len(m) - 1) + [1]:
            raise DomainError("--weight-level0 for kr must be a unit vector")
        r = fold.source.index_set[1:][m.index(1)]
        return verify_kr_virtualization(fold, r, args.cap)
    # tensor-factorization
    datum = cartan_datum(args.type) if args.type else fold.source
    if args.weight_level0 is None:
        raise DomainError("--check tensor-factorization needs --weight-level0")
    return check_tensor_factorization(datum, _ints(args.weight_level0), args.cap)


def cmd_verify(args) -> int:
    checks = args.check or ["conditions"]
    fold = None
    if args.folding:
        try:
            fold = resolve(args.folding)
        except DomainError:
            names = ", ".join(sorted(all_foldings()))
            print(f"unknown folding {args.folding!r}; catalog: {names}", file=sys.stderr)
            return 2
        if args.gamma:
            fold = fold.with_gamma(_ints(args.gamma))
    elif any(c != "tensor-factorization" for c in checks):
        raise DomainError("--folding is required for this check")
    elif not args.type:
        raise DomainError("--check tensor-factorization needs --type or --folding")
    reports = [_run_check(c, fold, args) for c in checks]
    doc = reports[0].as_dict() if len(reports) == 1 else [r.as_dict() for r in reports]
    _emit(json.dumps(doc, indent=1, sort_keys=True, default=str) + "\n", args.out)
    return 0 if all(r.passed for r in reports) else 1


# -- named examples ------------------------------------------------------------


def _line(label, got, want):
    ok = got == want
    return ok, f"{label}: {got}  [expected {want}] {'ok' if ok else 'MISMATCH'}"


def _example_s3():
    fold = resolve("C2>A3")
    C2, A3 = fold.source, fold.target
    p = Path.straight(C2.weight([3, 1]))
    fp = lower_path(p, 2, C2)
    vp = virtualize_path(fold, p)
    rows = [
        _line("f_2 pi", format_path(fp, C2), "(5*Lambda[1] - Lambda[2],)"),
        _line("Psi(pi)", format_path(vp, A3), "(3*Lambda[1] + 2*Lambda[2] + 3*Lambda[3],)"),
        _line("f^_2^2 Psi(pi)", format_path(virtual_lower(fold, vp, 2), A3),
              "(5*Lambda[1] - 2*Lambda[2] + 5*Lambda[3],)"),
        _line("Psi(f_2 pi)", format_path(virtualize_path(fold, fp), A3),
              "(5*Lambda[1] - 2*Lambda[2] + 5*Lambda[3],)"),
    ]
    return rows


def _example_listing():
    fold = resolve("C2>A3")
    C2, A3 = fold.source, fold.target
    B = generate(C2, C2.fundamental_weight(1))
    got = [format_path(p, C2) for p in B.nodes]
    want = ["(Lambda[1],)", "(-Lambda[1] + Lambda[2],)", "(Lambda[1] - Lambda[2],)", "(-Lambda[1],)"]
    rows = [_line("list(B(Lambda[1]))", got, want)]
    x = virtualize_path(fold, B.nodes[0])
    images = [format_path(x, A3)]
    for i in (1, 2, 1):
        x = virtual_lower(fold, x, i)
        images.append(format_path(x, A3))
    rows.append(_line("virtual f-strings [1,3], [2,2], [1,3]", images, [
        "(Lambda[1] + Lambda[3],)",
        "(-Lambda[1] + 2*Lambda[2] - Lambda[3],)",
        "(Lambda[1] - 2*Lambda[2] + Lambda[3],)",
        "(-Lambda[1] - Lambda[3],)",
    ]))
    return rows


def _example_s2():
    C2 = cartan_datum("C2")
    p = Path.straight(C2.weight([3, 1]))
    fp = lower_path(p, 1, C2)
    sub = subdivision(p, 1, C2, lowering=True)
    return [
        _line("f_1 pi", format_path(fp, C2), "(-Lambda[1] + 4/3*Lambda[2], 2*Lambda[1] + 2/3*Lambda[2])"),
        _line("reflected interval", [str(t) for t in sub.cut_times], ["0", "1/3"]),
        _line("breakpoint f_1 pi(1/2)", C2.format_weight(evaluate(fp, Fraction(1, 2))),
              "-Lambda[1] + 4/3*Lambda[2]"),
        _line("endpoint", C2.format_weight(fp.endpoint), "Lambda[1] + 2*Lambda[2]"),
    ]


EXAMPLES = {"s3-folding": _example_s3, "appendix-sage": _example_listing, "s2-figure": _example_s2}


def cmd_example(args) -> int:
    if args.name not in EXAMPLES:
        print(f"unknown example {args.name!r}; available: {', '.join(sorted(EXAMPLES))}", file=sys.stderr)
        return 2
    rows = EXAMPLES[args.name]()
    lines = [text for _, text in rows]
    ok = all(flag for flag, _ in rows)
    lines.append(f"verdict: {'match' if ok else 'mismatch'}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="littelmann", description="Littelmann path crystals and virtualization checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="node cap for crystal generation")
        p.add_argument("--out", help="write output to this file instead of stdout")

    g = sub.add_parser("generate", help="generate a crystal B(lambda) or B(lambda)_cl")
    g.add_argument("--type", required=True, help="Cartan type, e.g. C2, C2~, A4~2, A4~2d")
    g.add_argument("--weight", help="comma-separated Lambda coefficients in index order")
    g.add_argument("--weight-level0", help="comma-separated varpi coefficients (affine types)")
    g.add_argument("--format", choices=("dot", "json", "summary"), default="summary")
    common(g)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run folding and level-zero checks")
    v.add_argument("--folding", help="catalog name such as C2~>A3~, or a folding JSON file")
    v.add_argument("--gamma", help="override scaling factors, comma-separated in source index order")
    v.add_argument("--check", action="append", choices=CHECKS, help="repeatable; default conditions")
    v.add_argument("--type", help="Cartan type for tensor-factorization without a folding")
    v.add_argument("--weight", help="source weight for --check virtualization")
    v.add_argument("--weight-level0", help="varpi coefficients for tensor-factorization / kr")
    common(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("example", help="reproduce a named worked example")
    e.add_argument("name", help=", ".join(sorted(EXAMPLES)))
    e.add_argument("--out")
    e.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc} (partial: {exc.partial})", file=sys.stderr)
        return 2
    except (DomainError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

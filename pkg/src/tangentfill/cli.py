"""Command-line interface: ``tangentfill <subcommand> ...``.

Exit codes: 0 success, 1 internal verification failure or failed claims,
2 invalid input, 3 domain precondition not met.
"""

import argparse
import json
import os
import sys

from .claims import CLAIMS, run_claims
from .curve import PlaneCurve, analyze
from .errors import DomainError, InvalidInputError, VerificationError
from .gallery import GALLERY, find_tangent_witness, gallery_curve
from .gf import field_of_order, make_field
from .homopoly import HomPoly
from .search import search_min_tangent_filling

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3

GALLERY_NOTES = {
    "agt": "x^(q-1) + y^(q-1) + z^(q-1) - 3(x+y+z)^(q-1), tangent-filling for p > 3, q >= 11",
    "hermitian": "x^(r+1) + y^(r+1) + z^(r+1) with r^2 = q",
    "strange": "x y^(p-1) - z^p, every tangent passes through [0:0:1]",
    "conic": "x^2 + y z",
}


def _emit(obj, as_json: bool, text_lines=None):
    if as_json:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        for line in text_lines:
            print(line)


def _parse_orders(raw):
    if raw is None:
        return None
    try:
        return [int(tok) for tok in str(raw).split(",") if tok.strip()]
    except ValueError:
        raise InvalidInputError(f"cannot parse field order {raw!r}") from None


def _field(args, required=True):
    if args.p is not None:
        return make_field(args.p, args.n or 1)
    if args.n is not None:
        raise InvalidInputError("--n needs --p")
    if args.q is None:
        if required:
            raise InvalidInputError("give --q or --p/--n")
        return None
    orders = _parse_orders(args.q)
    if len(orders) != 1:
        raise InvalidInputError("this command takes a single field order")
    return field_of_order(orders[0])


def _load_spec(path):
    try:
        with open(path) as fh:
            return HomPoly.from_spec(json.load(fh))
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from None


def _format_point(P):
    return "[" + ":".join(str(c) for c in P) + "]"


# -- subcommands -------------------------------------------------------------------

def cmd_analyze(args) -> int:
    if args.spec:
        poly = _load_spec(args.spec)
        F = _field(args, required=False)
        if F is not None and F != poly.field:
            raise InvalidInputError("the field flags disagree with the spec file")
        curve = PlaneCurve(poly, name=os.path.basename(args.spec))
    else:
        curve = gallery_curve(args.curve, _field(args))
    report = analyze(curve, depth=args.depth).to_dict()
    lines = [f"{k}: {json.dumps(v)}" for k, v in report.items()]
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = [s for s in args.claims.split(",") if s.strip()] if args.claims else None
    results = run_claims(ids, _parse_orders(args.q), threads=args.threads)
    failed = any(r.status == "FAIL" for r in results)
    payload = {"claims": [r.to_dict() for r in results], "all_passed": not failed}
    lines = [f"{r.status} {r.id}: {r.description}" for r in results]
    lines.append("all claims passed" if not failed else "some claims FAILED")
    _emit(payload, args.json, lines)
    return EXIT_VERIFY if failed else EXIT_OK


def _parse_point(raw):
    try:
        coords = tuple(int(tok) for tok in raw.split(","))
    except ValueError:
        raise InvalidInputError(f"malformed point {raw!r}") from None
    if len(coords) != 3:
        raise InvalidInputError(f"a point needs three coordinates, got {raw!r}")
    return coords


def cmd_witness(args) -> int:
    F = _field(args)
    P = _parse_point(args.point)
    for c in P:
        if not 0 <= c < F.q:
            raise InvalidInputError(f"coordinate {c} is not an element index of F_{F.q}")
    if P == (0, 0, 0):
        raise InvalidInputError("the zero triple is not a projective point")
    w = find_tangent_witness(F, P)
    lines = [
        f"query:    {_format_point(w.query)}",
        f"witness:  {_format_point(w.witness)}",
        f"case:     {w.case}",
        f"tangent:  {_format_point(w.tangent_line)}",
    ]
    _emit(w.to_dict(), args.json, lines)
    return EXIT_OK


def cmd_search(args) -> int:
    F = _field(args)
    if args.exhaustive and args.samples is not None:
        raise InvalidInputError("--exhaustive and --samples are exclusive")
    if args.exhaustive:
        mode, budget = "exhaustive", args.budget
    elif args.samples is not None:
        mode, budget = "sampled", args.samples
    else:
        mode, budget = "auto", args.budget
    outcome = search_min_tangent_filling(F, args.dmax, mode=mode, budget=budget, seed=args.seed)
    data = outcome.to_dict()
    lines = [f"degree {row['degree']}: {row['mode']}, {row['candidates']} candidates, "
             f"{'found' if row['found'] else 'none'}" for row in data["per_degree"]]
    if outcome.found is not None:
        lines.append(f"first tangent-filling curve (degree {outcome.degree}): "
                     + json.dumps(outcome.found))
    else:
        lines.append(f"no tangent-filling curve up to degree {args.dmax}")
    _emit(data, args.json, lines)
    return EXIT_OK


def cmd_gallery(args) -> int:
    if args.curve is None:
        payload = {name: GALLERY_NOTES[name] for name in GALLERY}
        _emit(payload, args.json, [f"{k:10s} {v}" for k, v in payload.items()])
        return EXIT_OK
    curve = gallery_curve(args.curve, _field(args))
    spec = curve.poly.to_spec()
    _emit(spec, True)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def _default_threads():
    raw = os.environ.get("TANGENTFILL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangentfill",
        description="Exact checks of tangent-filling plane curves over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_flags(p, multi=False):
        p.add_argument("--q", help="field order (prime power)" + (", comma list" if multi else ""))
        p.add_argument("--p", type=int, help="characteristic (overrides --q)")
        p.add_argument("--n", type=int, help="extension degree, with --p")
        p.add_argument("--json", action="store_true", help="emit JSON")

    a = sub.add_parser("analyze", help="analyse one curve")
    field_flags(a)
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", choices=sorted(GALLERY), help="gallery curve")
    src.add_argument("--spec", help="JSON curve spec file")
    a.add_argument("--depth", type=int, choices=(1, 2), default=1,
                   help="also scan singular points over F_(q^2) when 2")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-paper", help="run the claim checks")
    field_flags(v, multi=True)
    v.add_argument("--claims", help="comma list of claim ids: " + ", ".join(c.id for c in CLAIMS))
    v.add_argument("--threads", type=int, default=_default_threads(),
                   help="worker threads (default $TANGENTFILL_THREADS or 1)")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="tangent witness on the agt curve")
    field_flags(w)
    w.add_argument("--point", required=True, help="x,y,z as element indices")
    w.set_defaults(func=cmd_witness)

    s = sub.add_parser("search", help="search for low-degree tangent-filling curves")
    field_flags(s)
    s.add_argument("--dmax", type=int, default=3)
    s.add_argument("--exhaustive", action="store_true", help="enumerate every curve")
    s.add_argument("--samples", type=int, help="random curves per degree")
    s.add_argument("--budget", type=int, default=10000,
                   help="auto mode: exhaustive when q^M <= budget, else this many samples")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    g = sub.add_parser("gallery", help="list gallery curves or print one as a spec")
    field_flags(g)
    g.add_argument("--curve", choices=sorted(GALLERY))
    g.set_defaults(func=cmd_gallery)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"tangentfill: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except VerificationError as exc:
        print(f"tangentfill: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except InvalidInputError as exc:
        print(f"tangentfill: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

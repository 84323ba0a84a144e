"""Command line interface.

Exit codes: 0 on success, 1 when a verification fails, 2 for usage or input
errors (including exceeded resource caps).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__, bits, kernels
from .bruhat import (
    DEFAULT_SET_CAP,
    ConsistentSet,
    InconsistentSet,
    ResourceCapExceeded,
    enumerate_bruhat,
)
from .coproducts import delta_from_U
from .simplicial import SimplicialComplex, cohomology_mod2, sq_invariance_check, sq_matrix
from .zonotope import cubillage_of, render_svg
from . import verify

BUILTIN_COMPLEXES = ("rp2", "circle", "simplex2", "sphere2")


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, ensure_ascii=False)


def _load_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from None


def _vertex_sets(data, what: str) -> list[int]:
    if not isinstance(data, list) or not all(isinstance(k, list) for k in data):
        raise InputError(f"{what} must be a JSON list of vertex lists")
    try:
        return [bits.vset(k) for k in data]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: {exc}") from None


def _consistent(n: int, r: int, members: list[int]) -> ConsistentSet:
    try:
        return ConsistentSet.of(n, r, members)
    except InconsistentSet as exc:
        raise InputError(f"inconsistent inversion set: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


# --- subcommands ------------------------------------------------------------------

def cmd_enum(args) -> int:
    if args.n < 0 or args.r < 0:
        raise InputError("--n and --r must be non-negative")
    elements = enumerate_bruhat(args.n, args.r, cap=args.cap)
    if args.count_only:
        print(len(elements))
        return 0
    if args.format == "table":
        for j, U in enumerate(elements):
            body = " ".join(bits.fmt(K) for K in U.sorted_members()) or "∅"
            print(f"{j}\t{len(U)}\t{body}")
    else:
        print(_dump({"n": args.n, "r": args.r, "count": len(elements),
                     "elements": [U.to_json()["inversions"] for U in elements]}))
    return 0


def cmd_coproduct(args) -> int:
    if args.input:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        data = _load_json_arg(text, "input")
        try:
            n, i = int(data["n"]), int(data["i"])
        except (KeyError, TypeError, ValueError):
            raise InputError("input needs integer fields n and i") from None
        inversions = data.get("inversions", [])
        face = data.get("face")
    else:
        if args.n is None or args.i is None:
            raise InputError("give --n and --i, or --input")
        n, i = args.n, args.i
        inversions = _load_json_arg(args.inversions, "--inversions")
        face = _load_json_arg(args.face, "--face") if args.face else None
    if i < 0 or n < 0:
        raise InputError("n and i must be non-negative")
    U = _consistent(n, i + 1, _vertex_sets(inversions, "inversions"))
    S = bits.full(n) if face is None else _vertex_sets([face], "face")[0]
    if S == 0 or S & ~bits.full(n):
        raise InputError(f"face must be a nonempty subset of [0, {n}]")
    print(_dump(delta_from_U(U, i)(S).to_json()))
    return 0


def _suite_kwargs(name: str, n_max: int | None, i_max: int | None) -> dict:
    if name in ("homotopy", "complement", "steenrod", "telescoping"):
        out = {}
        if n_max is not None:
            out["n_max"] = n_max
        if i_max is not None:
            out["i_max"] = i_max
        return out
    if name == "appendix":
        return {} if n_max is None else {"n_max": n_max}
    if name == "decomposition":
        return {} if n_max is None else {"max_support": n_max + 1}
    if name == "chains":
        if n_max is None:
            return {}
        return {"cases": [(n, r) for n in range(2, n_max + 1) for r in range(1, n)]}
    if name == "reoriented":
        out = {}
        if n_max is not None:
            out["ns"] = tuple(range(1, n_max + 1))
        if i_max is not None:
            out["levels"] = tuple(range(1, i_max + 2))
        return out
    if name == "minimal":
        if n_max is None and i_max is None:
            return {}
        nm = 2 if n_max is None else n_max
        im = 1 if i_max is None else i_max
        plain = [(n, i) for n in range(1, nm + 1) for i in range(0, im + 1)]
        return {"cases": plain, "uniform_cases": plain, "scan_cases": []}
    raise InputError(f"unknown suite {name}")


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else list(verify.SUITES)
    reports = []
    for name in names:
        rep = verify.SUITES[name](**_suite_kwargs(name, args.n_max, args.i_max))
        reports.append(rep)
        print(rep.line(), file=sys.stderr)
    print(_dump({"backend": kernels.BACKEND, "reports": [r.to_json() for r in reports]}))
    return 0 if all(reports) else 1


def cmd_render(args) -> int:
    members = _vertex_sets(_load_json_arg(args.inversions, "--inversions"), "--inversions")
    U = _consistent(args.n, 2, members)
    svg = render_svg(cubillage_of(U), labels=args.labels, terms=args.terms)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        try:
            Path(args.out).write_bytes(svg.encode("utf-8"))
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from None
    return 0


def _load_complex(args) -> SimplicialComplex:
    if args.builtin:
        text = resources.files("bruhatcup").joinpath("data", f"{args.builtin}.json").read_text()
    elif args.complex:
        try:
            text = Path(args.complex).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.complex}: {exc}") from None
    else:
        raise InputError("give --complex or --builtin")
    data = _load_json_arg(text, "complex file")
    try:
        return SimplicialComplex.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad complex: {exc}") from None


def cmd_sq(args) -> int:
    X = _load_complex(args)
    if args.i < 0 or args.p < 0:
        raise InputError("--i and --p must be non-negative")
    source = cohomology_mod2(X, args.p)
    q = 2 * args.p - args.i
    target_dim = cohomology_mod2(X, q).dimension if q >= 0 else 0
    out = {
        "i": args.i,
        "p": args.p,
        "target_degree": q,
        "source_dim": source.dimension,
        "target_dim": target_dim,
        "basis": [r.to_json()["support"] for r in source.representatives],
        "matrix": sq_matrix(X, args.i, args.p),
    }
    status = 0
    if args.all_U:
        rep = sq_invariance_check(X, args.i, args.p, cap=args.cap)
        out["invariance"] = rep.to_json()
        status = 0 if rep else 1
    print(_dump(out))
    return status


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhatcup",
        description="Higher Bruhat orders, cubillages and cup-i coproducts.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", help="enumerate B([0,n], r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--cap", type=int, default=DEFAULT_SET_CAP)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("coproduct", help="evaluate the cubillage coproduct on a face")
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--inversions", default="[]", help="JSON list of vertex lists")
    p.add_argument("--face", help="JSON vertex list (default: the top face)")
    p.add_argument("--input", help="JSON file with n, i, inversions, face ('-' for stdin)")
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("verify", help="run exhaustive verification suites")
    p.add_argument("--suite", choices=sorted(verify.SUITES))
    p.add_argument("--n-max", type=int)
    p.add_argument("--i-max", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a planar cubillage as SVG")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--inversions", default="[]", help="JSON list of 3-element vertex lists")
    p.add_argument("--out", required=True, help="output path, or '-' for stdout")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--terms", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sq", help="Steenrod squares on a simplicial complex")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--complex", help="complex JSON file")
    src.add_argument("--builtin", choices=BUILTIN_COMPLEXES)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--all-U", dest="all_U", action="store_true",
                   help="check invariance over all restricted global elements")
    p.add_argument("--cap", type=int, default=DEFAULT_SET_CAP)
    p.set_defaults(func=cmd_sq)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

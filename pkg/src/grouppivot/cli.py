"""Command-line front end and the JSON matrix file formats.

MatrixFile::

    {"rows": 2, "cols": 2, "data": [[re, im], [re, im], [re, im], [re, im]]}

``data`` is row-major. BlockFile is an object with MatrixFile values under
``"A"``, ``"B"``, ``"C"``, ``"D"``. Floats are written with 17 significant
digits, so write -> read -> write is byte-identical.

Exit codes: 0 success, 1 input error, 2 no group inverse,
3 hypothesis violated, 4 verification failed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import block, gen, ppt
from .core import COMPOSITE_TOL, DEFAULT_TOL, Tolerance, UsageError, as_matrix, fro
from .geninv import NoGroupInverse, group_inverse

EXIT_OK, EXIT_INPUT, EXIT_NO_GINV, EXIT_HYPOTHESIS, EXIT_VERIFY = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


# -- serialization ----------------------------------------------------------

def _num(x: float) -> str:
    return format(float(x), ".17g")


def _render(obj, depth=0) -> str:
    pad = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, np.ndarray) and obj.ndim == 2:
        return _render_inline(matrix_to_obj(obj))
    return _render_inline(obj)


def _render_inline(obj) -> str:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return _num(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render_inline(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_render_inline(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot render {type(obj).__name__}")


def dumps(obj) -> str:
    return _render(obj) + "\n"


def matrix_to_obj(a) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    data = [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
    return {"rows": a.shape[0], "cols": a.shape[1], "data": data}


def _reject_constant(name):
    raise InputError(f"non-finite number {name} in input")


def _parse(text: str):
    try:
        return json.loads(text, parse_int=float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _dim(obj, key):
    v = obj.get(key)
    if not isinstance(v, float) or v != int(v) or v < 1:
        raise InputError(f"{key!r} must be a positive integer")
    return int(v)


def obj_to_matrix(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InputError("matrix must be a JSON object with rows, cols, data")
    rows, cols = _dim(obj, "rows"), _dim(obj, "cols")
    data = obj.get("data")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InputError(f"data must be a list of {rows * cols} [re, im] pairs")
    for pair in data:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, float) for v in pair)):
            raise InputError("each data entry must be a [re, im] pair of numbers")
    arr = np.array(data, dtype=np.float64).reshape(rows, cols, 2)
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix entries must be finite")
    # view keeps signed zeros that re + 1j * im would lose
    return as_matrix(np.ascontiguousarray(arr).view(np.complex128)[..., 0])


def dumps_matrix(a) -> str:
    return dumps(matrix_to_obj(a))


def loads_matrix(text: str) -> np.ndarray:
    return obj_to_matrix(_parse(text))


def dumps_block(m: block.BlockMatrix) -> str:
    return dumps({name: matrix_to_obj(getattr(m, name)) for name in "ABCD"})


def loads_block(text: str) -> block.BlockMatrix:
    obj = _parse(text)
    if not isinstance(obj, dict) or set(obj) != set("ABCD"):
        raise InputError('block file must have exactly the keys "A", "B", "C", "D"')
    mats = [obj_to_matrix(obj[name]) for name in "ABCD"]
    try:
        return block.BlockMatrix(*mats)
    except UsageError as exc:
        raise InputError(str(exc)) from exc


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------

def _tol(args, base: Tolerance) -> Tolerance:
    changes = {}
    if args.tol_rank is not None:
        changes["rank_rtol"] = args.tol_rank
    if args.tol_atol is not None:
        changes["eq_atol"] = args.tol_atol
    if args.tol_rtol is not None:
        changes["eq_rtol"] = args.tol_rtol
    try:
        return replace(base, **changes)
    except UsageError as exc:
        raise InputError(str(exc)) from exc


def cmd_ginv(args) -> int:
    a = loads_matrix(_read(args.input))
    if a.shape[0] != a.shape[1]:
        raise InputError(f"matrix must be square, got {a.shape[0]}x{a.shape[1]}")
    res = group_inverse(a, _tol(args, DEFAULT_TOL))
    _emit(dumps_matrix(res.inverse), args.output)
    return EXIT_OK


def _verification_obj(v: block.Verification) -> dict:
    return {"residuals": list(v.residuals), "verified": v.ok}


def cmd_blockginv(args) -> int:
    m = loads_block(_read(args.input))
    tol = _tol(args, COMPOSITE_TOL)
    report = block.check_hypotheses(m, tol)
    variants = ["theorem1", "theorem2"] if args.variant == "both" else [args.variant]
    out = {"variant": args.variant, "unchecked": args.unchecked, "report": report.to_dict()}
    inverses = {}
    for variant in variants:
        if args.unchecked:
            fn = block.theorem1_candidate if variant == "theorem1" else block.theorem2_candidate
        else:
            fn = block.block_group_inverse if variant == "theorem1" else block.block_group_inverse_complementary
        x = fn(m, tol)
        inverses[variant] = x
        v = block.verify_group_inverse(m.assemble(), x, tol)
        out[variant] = {"inverse": matrix_to_obj(x), **_verification_obj(v)}
    if len(inverses) == 2:
        x1, x2 = inverses["theorem1"], inverses["theorem2"]
        out["difference"] = fro(x1 - x2)
    if args.output:
        Path(args.output).write_text(dumps_matrix(inverses[variants[0]]))
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_ppt(args) -> int:
    m = loads_block(_read(args.input))
    fn = ppt.pppt if args.command == "ppt" else ppt.cpppt
    _emit(dumps_block(fn(m, _tol(args, COMPOSITE_TOL))), args.output)
    return EXIT_OK


def cmd_schur(args) -> int:
    m = loads_block(_read(args.input))
    fn = block.pseudo_schur if args.command == "schur" else block.complementary_schur
    _emit(dumps_matrix(fn(m, _tol(args, COMPOSITE_TOL))), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    m = loads_block(_read(args.input))
    sys.stdout.write(dumps(block.check_hypotheses(m, _tol(args, COMPOSITE_TOL)).to_dict()))
    return EXIT_OK


def cmd_verify(args) -> int:
    m = loads_matrix(_read(args.matrix))
    x = loads_matrix(_read(args.candidate))
    if m.shape[0] != m.shape[1] or x.shape != m.shape:
        raise InputError(f"need square matrices of equal shape, got {m.shape} and {x.shape}")
    v = block.verify_group_inverse(m, x, _tol(args, COMPOSITE_TOL))
    sys.stdout.write(dumps(_verification_obj(v)))
    return EXIT_OK if v.ok else EXIT_VERIFY


def cmd_gen(args) -> int:
    try:
        spec = gen.InstanceSpec(args.p, args.q, args.rank_a, args.rank_k, args.seed, args.violate)
    except UsageError as exc:
        raise InputError(str(exc)) from exc
    tol = _tol(args, COMPOSITE_TOL)
    if args.theorem == 1:
        fn = gen.theorem1_violating_instance if spec.violate else gen.theorem1_instance
    else:
        fn = gen.theorem2_violating_instance if spec.violate else gen.theorem2_instance
    try:
        m = fn(spec, tol)
    except (gen.InfeasibleViolation, gen.GenerationFailure) as exc:
        raise InputError(str(exc)) from exc
    _emit(dumps_block(m), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grouppivot", description=__doc__.split("\n")[0])
    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol-rank", type=float, help="relative singular-value cutoff for rank decisions")
    tol.add_argument("--tol-atol", type=float, help="absolute residual floor for approximate equality")
    tol.add_argument("--tol-rtol", type=float, help="relative residual scale for approximate equality")
    tol.add_argument("-o", "--output", help="write the resulting matrix/block file here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ginv", parents=[tol], help="group inverse of a square matrix")
    p.add_argument("input")
    p.set_defaults(func=cmd_ginv)

    p = sub.add_parser("blockginv", parents=[tol], help="group inverse of a block matrix by the block formulas")
    p.add_argument("input")
    p.add_argument("--variant", choices=["theorem1", "theorem2", "both"], default="theorem1")
    p.add_argument("--unchecked", action="store_true", help="skip the range-inclusion gate and report residuals")
    p.set_defaults(func=cmd_blockginv)

    for name, helptext, func in [
        ("ppt", "pseudo principal pivot transform on A", cmd_ppt),
        ("cppt", "complementary pseudo principal pivot transform on D", cmd_ppt),
        ("schur", "pseudo Schur complement K = D - C A^# B", cmd_schur),
        ("cschur", "complementary Schur complement L = A - B D^# C", cmd_schur),
        ("check", "evaluate all index-1 and range-inclusion hypotheses", cmd_check),
    ]:
        p = sub.add_parser(name, parents=[tol], help=helptext)
        p.add_argument("input")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[tol], help="check the three group-inverse equations for (M, X)")
    p.add_argument("matrix")
    p.add_argument("candidate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[tol], help="generate a seeded block instance")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--rank-a", type=int, required=True)
    p.add_argument("--rank-k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--violate", choices=[*gen.VIOLABLE, "none"], default=None)
    p.add_argument("--theorem", type=int, choices=[1, 2], default=1,
                   help="1: pivot on A; 2: block-swapped instance pivoting on D")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoGroupInverse as exc:
        print(f"error: no group inverse: rank({exc.name})={exc.rank_a}, "
              f"rank({exc.name}^2)={exc.rank_a2}", file=sys.stderr)
        return EXIT_NO_GINV
    except block.HypothesisViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())

"""ncrep command line.

    ncrep <subcommand> [flags] [--out FILE]

Results are canonical JSON on stdout (or --out).  Failures print
{"error": kind, "detail": ...} on stderr and exit with 2 (invalid input)
or 3 (mathematical precondition failed, e.g. a relation does not vanish).
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Sequence

from . import io
from .cayley_hamilton import ch_check, ch_coefficients, standard_identity, trace_reduce
from .errors import MathError, NcrepError, ValidationError
from .filtration import abelianization, commutator_filtration
from .invariants import block_decomposition, cycle_values, default_bound
from .local_structure import local_quiver, smoothness_report, strata_check, strata_label
from .quiver import enumerate_necklaces, enumerate_paths, euler_form
from .rep_scheme import (conjugate, direct_sum, ext1_dim_presented, ext1_dim_quiver, free_product,
                         free_product_renaming, hom_dim, hom_dim_presented, path_algebra_presentation,
                         quiver_direct_sum, semisimplify_acyclic, tangent_dim)

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_MATH = 0, 1, 2, 3

# generous caps so that malformed flags cannot trigger runaway computations
MAX_DEGREE = 24
MAX_POWER = 400
MAX_STDID_ARGS = 8
MAX_LENGTH = 64


class UsageError(ValidationError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(name: str, value: int, upper: int | None = None, lower: int = 1) -> int:
    if value < lower:
        raise ValidationError(f"--{name} must be >= {lower}, got {value}")
    if upper is not None and value > upper:
        raise ValidationError(f"--{name} must be <= {upper}, got {value}")
    return value


def _dims(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        out = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValidationError(f"--dims must be comma-separated integers, got {text!r}") from None
    if any(d < 0 for d in out):
        raise ValidationError("--dims entries must be >= 0")
    return out


def _quiver(args):
    return io.quiver_from_json(io.load_file(args.quiver))


def _presentation(args):
    return io.presentation_from_json(io.load_file(args.presentation))


def _point_source(args):
    """(presentation or quiver) as given by the mutually exclusive flags."""
    if args.presentation is not None:
        return _presentation(args), None
    return None, _quiver(args)


def _simples(args):
    p, q = _point_source(args)
    obj = io.load_file(args.simples)
    x = io.simples_from_json(obj, presentation=p, quiver=q)
    return (p if p is not None else q), x


# ---------------------------------------------------------------------------
# handlers: each returns a JSON-ready object


def cmd_chpoly(args):
    n = _positive("n", args.n, MAX_DEGREE)
    ch = ch_coefficients(n)
    return {"degree": n, "coefficients": [io.trace_poly_to_json(c) for c in ch.coefficients]}


def cmd_chcheck(args):
    a = io.square_matrix_from_json(io.load_file(args.matrix))
    _positive("matrix size", a.rows, MAX_DEGREE)
    r = ch_check(a, a.rows)
    return {"n": a.rows, "result": io.matrix_to_json(r), "zero": r.is_zero()}


def cmd_tracereduce(args):
    n = _positive("n", args.n, MAX_DEGREE)
    m = _positive("m", args.m, MAX_POWER)
    if m <= n:
        raise ValidationError(f"--m must exceed --n (got m={m}, n={n})")
    return {"m": m, "n": n, "polynomial": io.trace_poly_to_json(trace_reduce(m, n))}


def cmd_stdid(args):
    mats = io.matrices_from_json(io.load_file(args.matrices))
    if not mats or len(mats) % 2 or len(mats) > MAX_STDID_ARGS:
        raise ValidationError(f"need an even number (2..{MAX_STDID_ARGS}) of matrices, got {len(mats)}")
    r = standard_identity(len(mats) // 2, mats)
    return {"m": len(mats) // 2, "result": io.matrix_to_json(r), "zero": r.is_zero()}


def cmd_paths(args):
    q = _quiver(args)
    L = _positive("max-len", args.max_len, MAX_LENGTH, lower=0)
    for v in (args.start, args.end):
        if not 0 <= v < q.vertex_count:
            raise ValidationError(f"vertex {v} out of range")
    return [io.path_to_json(q, p) for p in enumerate_paths(q, args.start, args.end, L)]


def _default_len(args, q, alpha=None) -> int:
    if args.max_len is not None:
        return _positive("max-len", args.max_len, MAX_LENGTH)
    alpha = alpha if alpha is not None else _dims(getattr(args, "dims", None))
    if alpha is None:
        raise ValidationError("give --max-len or --dims (the default length is n^2)")
    return min(default_bound(q.check_dim_vector(alpha)), MAX_LENGTH)


def cmd_cycles(args):
    q = _quiver(args)
    L = _default_len(args, q)
    return [nk.label(q) for nk in enumerate_necklaces(q, L)]


def cmd_invariants(args):
    q = _quiver(args)
    rep = io.quiver_rep_from_json(io.load_file(args.rep), q)
    L = _default_len(args, q, rep.dim_vector)
    return {k: io.rational_to_json(v) for k, v in cycle_values(rep, L).items()}


def cmd_blocks(args):
    q = _quiver(args)
    if args.bound is not None:
        b = _positive("bound", args.bound, MAX_LENGTH, lower=0)
    else:
        alpha = _dims(args.dims)
        if alpha is None:
            raise ValidationError("give --bound or --dims (the default bound is n^2)")
        b = min(default_bound(q.check_dim_vector(alpha)), MAX_LENGTH)
    bd = block_decomposition(q, b)
    return {"bound": b, "sizes": bd.sizes(),
            "blocks": [[[io.path_to_json(q, p) for p in cell] for cell in row] for row in bd.blocks]}


def cmd_verify(args):
    p = _presentation(args)
    x = io.rep_point_from_json(p, io.load_file(args.point))
    return {"valid": True, "n": x.n}


def cmd_conjugate(args):
    p = _presentation(args)
    x = io.rep_point_from_json(p, io.load_file(args.point))
    g = io.matrix_from_json(io.load_file(args.g), (x.n, x.n))
    return io.rep_point_to_json(conjugate(x, g))


def cmd_homext(args):
    if args.quiver is not None:
        q = _quiver(args)
        v = io.quiver_rep_from_json(io.load_file(args.left), q)
        w = io.quiver_rep_from_json(io.load_file(args.right), q)
        return {"hom": hom_dim(v, w), "ext1": ext1_dim_quiver(v, w),
                "euler": euler_form(q, v.dim_vector, w.dim_vector)}
    p = _presentation(args)
    s = io.rep_point_from_json(p, io.load_file(args.left))
    t = io.rep_point_from_json(p, io.load_file(args.right))
    return {"hom": hom_dim_presented(s, t), "ext1": ext1_dim_presented(p, s, t)}


def cmd_tangent(args):
    p = _presentation(args)
    x = io.rep_point_from_json(p, io.load_file(args.point))
    return {"tangent_dimension": tangent_dim(p, x), "n": x.n}


def cmd_localquiver(args):
    src, x = _simples(args)
    return io.local_data_to_json(local_quiver(src, x))


def cmd_smooth(args):
    src, x = _simples(args)
    return io.smoothness_to_json(smoothness_report(src, x))


def cmd_strata(args):
    src, x = _simples(args)
    cand = None
    if args.candidate is not None:
        pres = src if args.presentation is not None else path_algebra_presentation(src)
        cand = io.rep_point_from_json(pres, io.load_file(args.candidate))
    return {"label": strata_label(x), "check": strata_check(x, cand)}


def cmd_dsum(args):
    obj = io.load_file(args.points)
    if args.quiver is not None:
        q = _quiver(args)
        io.validate(obj, "quiver_rep_list")
        reps = [io.quiver_rep_from_json(r, q) for r in obj]
        if not reps:
            raise ValidationError("direct sum of no representations")
        return io.quiver_rep_to_json(quiver_direct_sum(reps))
    p = _presentation(args)
    io.validate(obj, "rep_point_list")
    pts = [io.rep_point_from_json(p, r) for r in obj]
    if not pts:
        raise ValidationError("direct sum of no points")
    return io.rep_point_to_json(direct_sum(pts))


def cmd_freeprod(args):
    p = io.presentation_from_json(io.load_file(args.left))
    q = io.presentation_from_json(io.load_file(args.right))
    return {"presentation": io.presentation_to_json(free_product(p, q)),
            "renaming": free_product_renaming(p, q)}


def cmd_nilfilt(args):
    a = io.algebra_from_json(io.load_file(args.algebra))
    return io.profile_to_json(commutator_filtration(a))


def cmd_abelianize(args):
    a = io.algebra_from_json(io.load_file(args.algebra))
    ab = abelianization(a)
    return {"algebra": io.algebra_to_json(ab), "collapsed": ab.is_zero}


def cmd_semisimplify(args):
    q = _quiver(args) if args.quiver is not None else None
    rep = io.quiver_rep_from_json(io.load_file(args.rep), q)
    return io.simples_to_json(semisimplify_acyclic(rep))


# ---------------------------------------------------------------------------
# parser


def _source_flags(sp, required: bool = True):
    g = sp.add_mutually_exclusive_group(required=required)
    g.add_argument("--presentation", help="presentation JSON")
    g.add_argument("--quiver", help="quiver JSON (its path algebra)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncrep", description="Exact computations with representation spaces of algebras.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")
    table: dict[str, Callable] = {}

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.set_defaults(handler=fn)
        table[name] = fn
        return sp

    sp = add("chpoly", cmd_chpoly, "formal Cayley-Hamilton polynomial of degree n")
    sp.add_argument("--n", type=int, required=True)
    sp = add("chcheck", cmd_chcheck, "evaluate the Cayley-Hamilton polynomial at a square matrix")
    sp.add_argument("--matrix", required=True)
    sp = add("tracereduce", cmd_tracereduce, "tr(a^m) in terms of tr(a), ..., tr(a^n)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("stdid", cmd_stdid, "standard identity S_2m on a list of 2m matrices")
    sp.add_argument("--matrices", required=True)
    sp = add("paths", cmd_paths, "paths between two vertices up to a length")
    sp.add_argument("--quiver", required=True)
    sp.add_argument("--start", type=int, required=True)
    sp.add_argument("--end", type=int, required=True)
    sp.add_argument("--max-len", type=int, required=True)
    sp = add("cycles", cmd_cycles, "necklaces (cycle-trace generators)")
    sp.add_argument("--quiver", required=True)
    sp.add_argument("--max-len", type=int)
    sp.add_argument("--dims", help="dimension vector, e.g. 1,2 (sets the default length n^2)")
    sp = add("invariants", cmd_invariants, "cycle traces of a quiver representation")
    sp.add_argument("--quiver", required=True)
    sp.add_argument("--rep", required=True)
    sp.add_argument("--max-len", type=int)
    sp = add("blocks", cmd_blocks, "paths v_j -> v_i grouped into blocks")
    sp.add_argument("--quiver", required=True)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--dims")
    sp = add("verify", cmd_verify, "check that matrices satisfy the relations")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--point", required=True)
    sp = add("conjugate", cmd_conjugate, "g x g^-1")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--g", required=True)
    sp = add("homext", cmd_homext, "dim Hom and dim Ext^1")
    _source_flags(sp)
    sp.add_argument("--left", required=True, help="source representation / point")
    sp.add_argument("--right", required=True, help="target representation / point")
    sp = add("tangent", cmd_tangent, "Zariski tangent dimension of rep_n A at a point")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--point", required=True)
    for name, fn, help_ in (("localquiver", cmd_localquiver, "local quiver and local dimension vector"),
                            ("smooth", cmd_smooth, "smoothness report at a semisimple point"),
                            ("strata", cmd_strata, "stratum label and constructive check")):
        sp = add(name, fn, help_)
        _source_flags(sp)
        sp.add_argument("--simples", required=True)
        if name == "strata":
            sp.add_argument("--candidate", help="point to compare by word traces")
    sp = add("dsum", cmd_dsum, "direct sum of points or quiver representations")
    _source_flags(sp)
    sp.add_argument("--points", required=True)
    sp = add("freeprod", cmd_freeprod, "free product of two presentations")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("nilfilt", cmd_nilfilt, "commutator filtration profile")
    sp.add_argument("--algebra", required=True)
    sp = add("abelianize", cmd_abelianize, "quotient by the commutator ideal")
    sp.add_argument("--algebra", required=True)
    sp = add("semisimplify", cmd_semisimplify, "Jordan-Holder factors (acyclic quivers)")
    sp.add_argument("--quiver")
    sp.add_argument("--rep", required=True)
    parser.commands = table
    return parser


def _emit_error(kind: str, detail: str, stderr) -> None:
    stderr.write(io.dumps({"error": kind, "detail": detail}))


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
        text = io.dumps(args.handler(args))
        if args.out:
            tmp = args.out + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, args.out)
        else:
            stdout.write(text)
        return EXIT_OK
    except ValidationError as exc:
        _emit_error(exc.kind, str(exc), stderr)
        return EXIT_INVALID
    except MathError as exc:
        _emit_error(exc.kind, str(exc), stderr)
        return EXIT_MATH
    except NcrepError as exc:
        _emit_error(exc.kind, str(exc), stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        _emit_error("io", str(exc), stderr)
        return EXIT_INVALID
    except RecursionError:
        _emit_error("validation", "input nested too deeply", stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit status: 0 when every selected law holds, 1 on a mathematical failure,
2 on unreadable input or a violated constructor hypothesis.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, constructions as cons, io
from .axioms import LEIBNIZ_MODES, check_bihom_poisson
from .errors import BhpcError, HypothesisError, ParseError, ValidationError
from .grading import check_multiplier
from .reports import REPORT_SCHEMA_VERSION, CheckReport, Witness
from .scalars import FieldSpec

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def parse_field(text: str) -> FieldSpec:
    t = text.strip()
    if t.upper() in ("Q", "QQ", "RATIONAL"):
        return FieldSpec.rational()
    if t[:1].upper() == "F":
        t = t[1:].lstrip("_")
    try:
        return FieldSpec.prime(int(t))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad field {text!r}: {exc}") from None


def _orders(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad group orders {text!r}") from None


# -- output -----------------------------------------------------------------------

def _emit(args, command: str, report: CheckReport, field: FieldSpec, extra: dict | None = None):
    if args.report == "json":
        doc = {"schema_version": REPORT_SCHEMA_VERSION, "command": command, "passed": report.passed}
        if extra:
            doc.update(extra)
        doc["report"] = report.to_dict(field.render, timing=not args.no_timing)
        print(json.dumps(doc, indent=2))
    else:
        for key, value in (extra or {}).items():
            print(f"{key}: {value}")
        print(report.to_text(field.render, timing=not args.no_timing))


def _error(args, exc: Exception) -> int:
    if isinstance(exc, HypothesisError):
        kind = "hypothesis"
        detail = {"hypothesis": exc.hypothesis}
    elif isinstance(exc, ParseError):
        kind = "parse"
        detail = {"line": exc.line}
    elif isinstance(exc, ValidationError):
        kind = "validation"
        detail = {"law": exc.law, "witness": list(exc.witness) if exc.witness is not None else None}
    else:
        kind = "input"
        detail = {}
    name = type(exc).__name__
    text = str(exc)
    if not text.startswith(name):
        text = f"{name}: {text}"
    if getattr(args, "report", "text") == "json":
        print(json.dumps({"schema_version": REPORT_SCHEMA_VERSION, "error": {
            "type": name, "kind": kind, "message": text, **detail}}, indent=2))
    print(text, file=sys.stderr)
    if isinstance(exc, HypothesisError) and exc.report is not None and args.report != "json":
        print(exc.report.to_text(), file=sys.stderr)
    return EXIT_INPUT


def _suite(args, bundle) -> CheckReport:
    return check_bihom_poisson(
        bundle,
        leibniz_mode=getattr(args, "leibniz_mode", "proof"),
        mult_mu=not getattr(args, "no_mult_mu", False),
        assoc_form=getattr(args, "assoc_form", "standard"),
    )


# -- check --------------------------------------------------------------------------

def cmd_check(args) -> int:
    af = io.load_algebra(args.file)
    rep = _suite(args, af.bundle)
    _emit(args, "check", rep, af.bundle.field, {"file": args.file, "leibniz_mode": args.leibniz_mode})
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- construct ----------------------------------------------------------------------

def _meta(inputs: list[io.AlgebraFile], step: str, extra: dict | None = None) -> dict:
    provenance: list = []
    names = []
    for af in inputs:
        provenance += list(af.meta.get("provenance", []))
        names.append(str(af.meta.get("name", "input")))
    provenance.append(step)
    meta = {"name": f"{step}({', '.join(names)})", "provenance": provenance}
    if extra:
        meta.update(extra)
    return meta


def _op(path, af: io.AlgebraFile, kinds) -> io.OperatorFile:
    op = io.load_operator(path, af.bundle)
    if op.kind not in kinds:
        raise ParseError(None, f"{path}: expected an operator of kind {' or '.join(kinds)}, got {op.kind}")
    return op


def cmd_construct(args) -> int:
    sub = args.sub
    force = args.force
    A = io.load_algebra(args.inputs[0])
    extra = None
    jacobi = None
    if sub == "commutator":
        out = cons.commutator_poisson(A.bundle, force=force)
        inputs, step = [A], "commutator_poisson"
    elif sub == "twist":
        if not (args.alpha and args.beta):
            raise ParseError(None, "twist needs --alpha and --beta map files")
        ap = _op(args.alpha, A, ("map",)).matrix
        bp = _op(args.beta, A, ("map",)).matrix
        out = cons.twist(A.bundle, ap, bp, force=force)
        inputs, step = [A], "twist"
    elif sub == "twist-power":
        out = cons.twist_power(A.bundle, args.n, force=force)
        inputs, step = [A], f"twist_power({args.n})"
    elif sub == "transfer":
        if not args.map:
            raise ParseError(None, "transfer needs --map")
        f = _op(args.map, A, ("map",)).matrix
        out = cons.transfer_bijection(A.bundle, f, force=force)
        inputs, step = [A], "transfer_bijection"
    elif sub == "scalar-ext":
        if args.prime is not None:
            ext = cons.ExtensionSpec("field_embed", field=FieldSpec.prime(args.prime))
            step = f"scalar_extension(F_{args.prime})"
            inputs = [A]
        elif len(args.inputs) > 1:
            K = io.load_algebra(args.inputs[1])
            ext = cons.ExtensionSpec("prime_power_as_tensor", algebra=K.bundle)
            step, inputs = "scalar_extension(tensor)", [A, K]
        else:
            raise ParseError(None, "scalar-ext needs --prime P or a second algebra file presenting the field")
        out = cons.scalar_extension(A.bundle, ext, force=force)
    elif sub in ("tensor", "tensor-hom"):
        if len(args.inputs) != 2:
            raise ParseError(None, f"{sub} needs two algebra files")
        B = io.load_algebra(args.inputs[1])
        inputs = [A, B]
        if sub == "tensor":
            out = cons.tensor_assoc_poisson(A.bundle, B.bundle, force=force)
            step = "tensor_assoc_poisson"
        else:
            out, jacobi = cons.tensor_hom_poisson(A.bundle, B.bundle, force=force)
            step = "tensor_hom_poisson"
            extra = {"jacobi": jacobi.to_dict(out.field.render, timing=False)}
    elif sub in ("rota-baxter", "averaging-diag", "averaging", "centroid", "multiplier"):
        if len(args.inputs) != 2:
            raise ParseError(None, f"{sub} needs an algebra file and an operator file")
        if sub == "multiplier":
            sigma = _op(args.inputs[1], A, ("multiplier",)).matrix
            out = cons.multiplier_deform(A.bundle, sigma, force=force)
            step = "multiplier_deform"
        else:
            kind = {"rota-baxter": "rota_baxter", "centroid": "centroid"}.get(sub, "averaging")
            w = _op(args.inputs[1], A, (kind,)).witness()
            fn = {
                "rota-baxter": cons.rota_baxter_induced,
                "averaging-diag": cons.averaging_induced_diag,
                "averaging": cons.averaging_induced,
                "centroid": cons.centroid_induced,
            }[sub]
            out = fn(A.bundle, w, force=force)
            step = fn.__name__
        inputs = [A]
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(None, f"unknown construction {sub!r}")

    meta = _meta(inputs, step, extra)
    io.dump_algebra(out, args.output, meta)
    if jacobi is not None and not jacobi.passed:
        rep = jacobi
    else:
        rep = _suite(args, out)
    info = {"output": args.output, "construction": step}
    if jacobi is not None:
        info["jacobi_passed"] = jacobi.passed
    _emit(args, "construct", rep, out.field, info)
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- verify-operator ---------------------------------------------------------------

def cmd_verify_operator(args) -> int:
    A = io.load_algebra(args.algebra)
    P = A.bundle
    kind = args.kind.replace("-", "_")
    op = io.load_operator(args.operator, P)
    if op.kind != kind:
        raise ParseError(None, f"operator file has kind {op.kind}, expected {kind}")
    if kind == "multiplier":
        sigma = op.matrix
        mr = check_multiplier(sigma.group, sigma.field, sigma.table)
        rep = CheckReport("multiplier", mr.passed,
                          [] if mr.passed else [Witness("multiplier", tuple(mr.witness or ()), (), ())], 0.0,
                          note=f"symmetric={mr.symmetric} cyclic_invariant={mr.cyclic_invariant}")
    elif kind == "rota_baxter":
        rep = cons.check_rota_baxter(P, op.matrix, op.weight)
    elif kind == "averaging":
        rep = cons.check_averaging(P, op.matrix, op.k, op.l)
    else:
        rep = cons.check_centroid(P, op.matrix, op.k, op.l)
    _emit(args, "verify-operator", rep, P.field, {"kind": kind})
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- catalog / generate ------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            print(name)
        return EXIT_OK
    if not args.name or not args.output:
        raise ParseError(None, "catalog dump needs NAME and -o OUT")
    entry = catalog.builtin(args.name, args.field)
    io.dump_algebra(entry.bundle, args.output, {"name": entry.name, "provenance": list(entry.provenance)})
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_generate(args) -> int:
    cfg = catalog.GeneratorConfig(
        seed=args.seed,
        orders=args.orders,
        field=args.field,
        min_dim=args.min_dim,
        max_dim=args.max_dim,
        twist_depth=args.depth,
        base=args.base,
    )
    entry = catalog.generate_pipeline(cfg)
    io.dump_algebra(entry.bundle, args.output, {"name": entry.name, "provenance": list(entry.provenance)})
    print(f"wrote {args.output}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

CONSTRUCTIONS = ("commutator", "twist", "twist-power", "transfer", "scalar-ext", "tensor", "tensor-hom",
                 "rota-baxter", "averaging-diag", "averaging", "centroid", "multiplier")


def _add_check_flags(p):
    p.add_argument("--leibniz-mode", choices=LEIBNIZ_MODES, default="proof")
    p.add_argument("--no-mult-mu", action="store_true", help="do not require alpha, beta to be multiplicative over mu")
    p.add_argument("--assoc-form", choices=("standard", "literal"), default="standard")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times so reports are byte-stable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bhpc", description="BiHom-Poisson color algebra workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the full law suite on an algebra file")
    p.add_argument("file")
    _add_check_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="apply a construction and check its output")
    p.add_argument("sub", choices=CONSTRUCTIONS)
    p.add_argument("inputs", nargs="+", help="algebra file(s), then an operator file where needed")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--alpha", help="map file for twist")
    p.add_argument("--beta", help="map file for twist")
    p.add_argument("--map", help="bijection file for transfer")
    p.add_argument("--n", type=int, default=1, help="exponent for twist-power")
    p.add_argument("--prime", type=int, help="target prime for scalar-ext field embedding")
    p.add_argument("--force", action="store_true", help="skip hypothesis checks")
    _add_check_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-operator", help="check an operator against its defining identities")
    p.add_argument("kind", choices=("rota-baxter", "averaging", "centroid", "multiplier"))
    p.add_argument("algebra")
    p.add_argument("operator")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_verify_operator)

    p = sub.add_parser("catalog", help="list or dump built-in examples")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--field", type=parse_field, default=FieldSpec.rational())
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("generate", help="generate a seeded valid instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--orders", type=_orders, default=(2,), help="comma-separated cyclic orders, e.g. 2,2")
    p.add_argument("--field", type=parse_field, default=FieldSpec.prime(7))
    p.add_argument("--min-dim", type=int, default=1)
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--depth", type=int, default=1, help="number of random twists")
    p.add_argument("--base", choices=("group_algebra", "dual_numbers", "dual_group", "auto"), default="group_algebra")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "report"):
        args.report = "text"
    if not hasattr(args, "no_timing"):
        args.no_timing = False
    try:
        return args.func(args)
    except (BhpcError, OSError, ValueError) as exc:
        return _error(args, exc)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""braidforge: check, build, verify, enumerate, demo.

One binary over JSON documents.  All results go to stdout as JSON with
sorted keys and canonical scalars; diagnostics go to stderr.  Exit
codes: 0 pass, 1 verification failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import linrack, nleibniz, nrack, serialization, setsol, tensor, ybops
from .errors import (
    BraidforgeError,
    CapExceededError,
    NotCertifiedError,
    PreconditionError,
    SchemaError,
    ShapeMismatchError,
)
from .reports import ReportBuilder

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _emit(doc):
    sys.stdout.write(serialization.dumps(doc))


def _diag(msg):
    sys.stderr.write(msg.rstrip() + "\n")


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _dim_cap(args):
    if getattr(args, "allow_large", False):
        return None
    env = os.environ.get("BRAIDFORGE_DIM_CAP")
    return int(env) if env else ybops.DEFAULT_DIM_CAP


def _threads(args):
    raw = args.threads if args.threads is not None else os.environ.get("BRAIDFORGE_THREADS")
    if raw is None:
        return 1
    n = int(raw)
    if n < 1:
        raise SchemaError("--threads must be at least 1")
    # all module work is pure and iteration is deterministic, so the
    # worker count never changes results; execution stays sequential
    return n


# -- check ---------------------------------------------------------------


def _check_one(doc):
    kind = doc.get("kind")
    if kind == "group":
        return nrack.check_group_table(int(doc.get("size", 0)), doc.get("mul", []))
    obj = serialization.from_document(doc)
    if kind == "nleibniz":
        if isinstance(obj, nleibniz.CentralNLeibnizAlgebra):
            rb = ReportBuilder("central-nleibniz")
            rb.extend(nleibniz.check_fundamental_identity(obj.algebra))
            rb.record("central-element", nleibniz.is_central(obj.algebra, obj.central))
            return rb.build()
        return nleibniz.check_fundamental_identity(obj)
    if kind == "nrack":
        return nrack.check_nrack(obj)
    if kind == "coalgebra":
        return linrack.check_coalgebra(obj)
    if kind == "linear_nrack":
        base = linrack.check_coalgebra(obj.base)
        if not base.passed:
            return base
        return linrack.check_linear_nrack(obj)
    if kind == "set_map":
        profile = setsol.check_set_nsolution(obj)
        rb = ReportBuilder(f"set_map(side={obj.side})")
        side_ok = profile.satisfies_right if obj.side == "right" else profile.satisfies_left
        witness = profile.right_witness if obj.side == "right" else profile.left_witness
        rb.record(f"{obj.side}-relation", side_ok, witness)
        rb.record("bijectivity", profile.is_bijective)
        if side_ok and not profile.is_bijective:
            _diag("note: relation holds but the map is not bijective (a pre-solution)")
        return rb.build()
    if kind == "operator":
        rb = ReportBuilder("operator")
        rb.record("well-formed", True)
        return rb.build()
    raise SchemaError(f"unknown document kind {kind!r}")


def cmd_check(args):
    payload = _load_json(args.file)
    docs = payload if isinstance(payload, list) else [payload]
    reports = [_check_one(doc) for doc in docs]
    if isinstance(payload, list):
        overall = all(r.passed for r in reports)
        _emit(
            {
                "overall": "pass" if overall else "fail",
                "passes": sum(r.passed for r in reports),
                "failures": sum(not r.passed for r in reports),
                "reports": [r.to_json() for r in reports],
            }
        )
        return EXIT_PASS if overall else EXIT_FAIL
    _emit(reports[0].to_json())
    return EXIT_PASS if reports[0].passed else EXIT_FAIL


# -- build ---------------------------------------------------------------


def _param(params, key, default=None, converter=int):
    if key in params:
        return converter(params[key])
    if default is None:
        raise SchemaError(f"construction needs --param {key}=...")
    return default


def _as_central(obj):
    if not isinstance(obj, nleibniz.CentralNLeibnizAlgebra):
        raise SchemaError("this construction needs a central algebra ('central' field)")
    return obj


def _as_algebra(obj):
    if isinstance(obj, nleibniz.CentralNLeibnizAlgebra):
        return obj.algebra
    return obj


_CONSTRUCTIONS = {}


def _construction(name):
    def wrap(fn):
        _CONSTRUCTIONS[name] = fn
        return fn

    return wrap


@_construction("nbracket-from-leibniz")
def _b_nbracket(obj, params, recheck):
    return nleibniz.nbracket_from_leibniz(_as_algebra(obj), _param(params, "n"), recheck)


@_construction("fundamental-leibniz")
def _b_fundamental(obj, params, recheck):
    return nleibniz.fundamental_leibniz(obj, recheck)


@_construction("adjoin-unit")
def _b_adjoin(obj, params, recheck):
    return nleibniz.adjoin_unit(_as_algebra(obj), recheck)


@_construction("nrack-from-nleibniz")
def _b_vector_nrack(obj, params, recheck):
    a = _as_algebra(obj)
    nrack.nrack_from_nleibniz(a)  # raises unless the grid validation passes
    return a


@_construction("conjugation-nrack")
def _b_conj(obj, params, recheck):
    return nrack.conjugation_nrack(obj, _param(params, "n"))


@_construction("nrack-from-rack")
def _b_nrack_from_rack(obj, params, recheck):
    return nrack.nrack_from_rack(obj, _param(params, "n"), recheck)


@_construction("rack-from-nrack")
def _b_rack_from_nrack(obj, params, recheck):
    return nrack.rack_from_nrack(obj)


@_construction("linearize")
def _b_linearize(obj, params, recheck):
    return linrack.linearize_nrack(obj)


@_construction("lnr-from-nleibniz")
def _b_lnr(obj, params, recheck):
    return linrack.linear_nrack_from_nleibniz(_as_algebra(obj))


@_construction("tensor-power-rack")
def _b_tensor_power(obj, params, recheck):
    return linrack.linear_rack_on_tensor_power(obj, check=recheck)


@_construction("lebed")
def _b_lebed(obj, params, recheck):
    fwd, _ = linrack.lebed_operator(obj.as_rack())
    return fwd


@_construction("r1")
def _b_r1(obj, params, recheck):
    return ybops.r1_from_nleibniz(_as_algebra(obj))


@_construction("r2")
def _b_r2(obj, params, recheck):
    return ybops.r2_from_nleibniz(_as_algebra(obj))


@_construction("eta")
def _b_eta(obj, params, recheck):
    eta, report = ybops.eta_intertwiner(_as_algebra(obj))
    if not report.passed:
        raise PreconditionError("eta verification failed", report.witness)
    return eta


@_construction("nyb-central")
def _b_nyb_central(obj, params, recheck):
    side = params.get("side", "right")
    return ybops.nyb_from_central_nleibniz(_as_central(obj), side)


@_construction("nyb-lnr")
def _b_nyb_lnr(obj, params, recheck):
    fwd, _ = ybops.nyb_from_linear_nrack(obj, check=recheck)
    return fwd


@_construction("group-algebra-nyb")
def _b_group_nyb(obj, params, recheck):
    return ybops.group_algebra_nyb(obj, _param(params, "n"))


@_construction("sn-from-r")
def _b_sn(obj, params, recheck, dim_cap=None):
    return ybops.nyb_from_ybe(obj, _param(params, "n"), dim_cap or ybops.DEFAULT_DIM_CAP)


@_construction("stilde-from-s")
def _b_stilde(obj, params, recheck, dim_cap=None):
    return ybops.ybe_from_nyb(obj, _param(params, "n"), dim_cap or ybops.DEFAULT_DIM_CAP)


@_construction("solution-from-nrack")
def _b_solution(obj, params, recheck):
    return setsol.solution_from_nrack(obj)


@_construction("nsolution-from-solution")
def _b_nsolution(obj, params, recheck):
    return setsol.nsolution_from_solution(obj, _param(params, "n"))


@_construction("solution-from-nsolution")
def _b_descend(obj, params, recheck):
    return setsol.solution_from_nsolution(obj)


def _certify_input(obj):
    """Documents not marked certified get checked before a build uses them."""
    if isinstance(obj, nleibniz.NLeibnizAlgebra) and not obj.certified:
        return nleibniz.certify(obj)
    if isinstance(obj, nleibniz.CentralNLeibnizAlgebra) and not obj.algebra.certified:
        return nleibniz.CentralNLeibnizAlgebra(nleibniz.certify(obj.algebra), obj.central)
    if isinstance(obj, nrack.FiniteNRack) and not obj.certified:
        return nrack.certify(obj)
    return obj


def cmd_build(args):
    if args.construction not in _CONSTRUCTIONS:
        known = ", ".join(sorted(_CONSTRUCTIONS))
        raise SchemaError(f"unknown construction {args.construction!r}; known: {known}")
    doc = _load_json(args.file)
    obj = _certify_input(serialization.from_document(doc))
    params = {}
    for raw in args.param or ():
        key, sep, value = raw.partition("=")
        if not sep:
            raise SchemaError(f"--param needs key=value, got {raw!r}")
        params[key] = value
    fn = _CONSTRUCTIONS[args.construction]
    if args.construction in ("sn-from-r", "stilde-from-s"):
        result = fn(obj, params, args.recheck, _dim_cap(args))
    else:
        result = fn(obj, params, args.recheck)
    provenance = list(doc.get("provenance", []))
    provenance.append(f"{args.construction}({os.path.basename(args.file)})")
    out = serialization.to_document(result, provenance)
    text = serialization.dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _diag(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# -- verify --------------------------------------------------------------


def cmd_verify(args):
    doc = _load_json(args.file)
    obj = serialization.from_document(doc)
    equation = args.equation
    cap = _dim_cap(args)
    if equation in ("ybe", "nybe-right", "nybe-left"):
        if not isinstance(obj, tensor.TensorOperator):
            raise SchemaError(f"{equation} needs an operator document")
        if equation == "ybe":
            report = ybops.verify_ybe(obj, cap)
        else:
            n = args.n or len(obj.domain_shape.factor_dims)
            if n < 2:
                raise SchemaError("cannot infer n from a flat shape; pass --n")
            report = ybops.verify_nybe(obj, n, equation.split("-")[1], cap)
        _emit(report.to_json())
        ok = report.holds and (report.invertible or args.allow_pre)
        return EXIT_PASS if ok else EXIT_FAIL
    if equation in ("set-ybe", "set-nybe"):
        if not isinstance(obj, setsol.SetNMap):
            raise SchemaError(f"{equation} needs a set_map document")
        if equation == "set-ybe" and obj.arity != 2:
            raise SchemaError("set-ybe needs a binary map")
        profile = setsol.check_set_nsolution(obj)
        holds = profile.satisfies_right if obj.side == "right" else profile.satisfies_left
        witness = profile.right_witness if obj.side == "right" else profile.left_witness
        _emit(
            {
                "equation": ("set_ybe" if obj.arity == 2 else "set_nybe") + "_" + obj.side,
                "n": obj.arity,
                "dim": obj.size,
                "holds": holds,
                "invertible": profile.is_bijective,
                "witness": None if holds else (witness or {}).get("tuple"),
                "nondegenerate": profile.nondegenerate,
                "involutive_order": profile.involutive_order,
            }
        )
        if holds and not profile.is_bijective:
            _diag("note: relation holds but the map is not bijective (a pre-solution)")
        ok = holds and (profile.is_bijective or args.allow_pre)
        return EXIT_PASS if ok else EXIT_FAIL
    raise SchemaError(f"unknown equation {equation!r}")


# -- enumerate -----------------------------------------------------------


def cmd_enumerate(args):
    census, _found = setsol.enumerate_tables(args.m, args.n, args.filter, dump=args.dump)
    _emit(census)
    return EXIT_PASS


# -- demo ----------------------------------------------------------------


def cmd_demo(args):
    """The worked pipeline: a small ternary algebra, its unit extension,
    the degree-3 operator, the descended braiding, and the diagram checks."""
    stages = []

    def stage(name, ok, **extra):
        stages.append({"name": name, "status": "pass" if ok else "fail", **extra})
        _diag(f"{'ok ' if ok else 'FAIL'} {name}")
        return ok

    t3 = nleibniz.NLeibnizAlgebra(3, 3, {(0, 1, 1): {2: 1}})
    fi = nleibniz.check_fundamental_identity(t3)
    stage("fundamental-identity(T3)", fi.passed)
    t3 = t3.as_certified()
    t3bar = nleibniz.adjoin_unit(t3)
    stage(
        "adjoin-unit(T3) central",
        nleibniz.is_central(t3bar.algebra, t3bar.central),
        dim=t3bar.dim,
    )
    s = ybops.nyb_from_central_nleibniz(t3bar)
    rep = ybops.verify_nybe(s, 3, "right", _dim_cap(args))
    stage("degree-3 braid relation (dim 4^5)", rep.holds and rep.invertible, **rep.to_json())
    stilde = ybops.ybe_from_nyb(s, 3, _dim_cap(args))
    rep2 = ybops.verify_ybe(stilde, _dim_cap(args))
    stage("descended Yang-Baxter operator", rep2.holds and rep2.invertible)
    rfund = ybops.r_from_central_leibniz(nleibniz.fundamental_leibniz(t3bar))
    stage("descent diagram: S~ equals the tensor-power braiding", stilde == rfund)
    r2 = ybops.r2_from_nleibniz(t3)
    lnr = linrack.linear_nrack_from_nleibniz(t3)
    rack = linrack.linear_rack_on_tensor_power(lnr)
    lebed, _ = linrack.lebed_operator(rack)
    stage("coalgebra route reproduces the tensor-power braiding", r2 == lebed)
    eta, eta_report = ybops.eta_intertwiner(t3)
    stage("eta intertwines the two braidings", eta_report.passed)
    vr_report = nrack.verify_tensor_embedding(t3)
    stage("vector rack tensor embedding", vr_report.passed)
    sol = setsol.solution_from_nrack(nrack.conjugation_nrack(nrack.symmetric_group(3), 3))
    profile = setsol.check_set_nsolution(sol)
    stage("conjugation 3-solution on Sym(3)", profile.is_right_solution)
    overall = all(st["status"] == "pass" for st in stages)
    _emit({"overall": "pass" if overall else "fail", "stages": stages})
    return EXIT_PASS if overall else EXIT_FAIL


# -- entry point ---------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="braidforge",
        description="construct and machine-verify self-distributive algebra and braid-relation operators",
    )
    p.add_argument("--threads", type=int, default=None, help="worker count (results never depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run all axioms for a document (or a JSON array batch)")
    c.add_argument("file")
    c.set_defaults(fn=cmd_check)

    b = sub.add_parser("build", help="run a named construction on a document")
    b.add_argument("construction")
    b.add_argument("file")
    b.add_argument("--param", action="append", metavar="K=V")
    b.add_argument("-o", "--output")
    b.add_argument("--recheck", action="store_true", help="re-verify theorem-certified outputs")
    b.add_argument("--allow-large", action="store_true")
    b.set_defaults(fn=cmd_build)

    v = sub.add_parser("verify", help="verify a braid-type equation for an operator or set map")
    v.add_argument("equation", choices=["ybe", "nybe-right", "nybe-left", "set-ybe", "set-nybe"])
    v.add_argument("file")
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--allow-pre", action="store_true", help="accept non-invertible solutions")
    v.add_argument("--allow-large", action="store_true", help="ignore the verification dimension cap")
    v.set_defaults(fn=cmd_verify)

    e = sub.add_parser("enumerate", help="census of operation tables at desk scale")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--filter", required=True, choices=["nshelf", "nrack", "nsolution"])
    e.add_argument("--dump", action="store_true")
    e.set_defaults(fn=cmd_enumerate)

    d = sub.add_parser("demo", help="run the worked end-to-end pipeline")
    d.add_argument("--allow-large", action="store_true")
    d.set_defaults(fn=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _threads(args)
        return args.fn(args)
    except CapExceededError as exc:
        _diag(f"cap exceeded: {exc}")
        return EXIT_CAP
    except (SchemaError, NotCertifiedError, PreconditionError, ShapeMismatchError) as exc:
        _diag(f"input error: {exc}")
        return EXIT_INPUT
    except BraidforgeError as exc:
        _diag(f"error: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

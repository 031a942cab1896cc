"""Command-line front end.  Every subcommand prints one JSON report per line."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import BraidlabError, DegenerateSpectrum, DegreeOverflow, ParseError
from .report import VerificationReport

DEFAULT_MAX_DIM = 4


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"argument {flag}: {message}")


class Emitter:
    def __init__(self, command: str, inputs: dict, pretty: bool):
        self.command = command
        self.inputs = inputs
        self.pretty = pretty
        self.failed = False
        self._t = time.perf_counter()

    def emit(self, report: VerificationReport | None = None, *, info: dict | None = None, name: str = "", timing=None):
        if report is not None:
            outcome, name, details = report.outcome, report.name, report.details
            self.failed |= not report.passed
        else:
            outcome, details = "info", info or {}
        ms = (time.perf_counter() - self._t) * 1000 if timing is None else timing
        rec = {
            "command": self.command,
            "check": name,
            "inputs": self.inputs,
            "outcome": outcome,
            "details": details,
            "timing_ms": round(ms, 3),
        }
        if self.pretty:
            print(json.dumps(rec, indent=2, default=str))
        else:
            print(json.dumps(rec, default=str, separators=(",", ":")))
        sys.stdout.flush()
        self._t = time.perf_counter()


def _dim(args):
    from .tensor import SuperDim

    for flag in ("m", "n"):
        if getattr(args, flag) < 0:
            raise UsageError(f"--{flag}", "must be a nonnegative integer")
    if args.m + args.n < 1:
        raise UsageError("--m/--n", "need m + n >= 1")
    if args.m + args.n > args.max_dim:
        raise UsageError("--m/--n", f"({args.m}|{args.n}) exceeds the size cap m+n <= {args.max_dim}; raise it with --max-dim")
    return SuperDim(args.m, args.n)


def _scalar(text: str, flag: str):
    from .scalar import Scalar

    try:
        return Scalar.parse(text)
    except (ParseError, BraidlabError, ValueError) as exc:
        raise UsageError(flag, f"cannot parse {text!r}: {exc}") from None


def _ops_json(op) -> list:
    return op.to_json()["entries"]


def cmd_ybe(args, out: Emitter):
    from .tensor import check_hecke_condition, check_yang_baxter, hecke_symmetry

    R = hecke_symmetry(_dim(args))
    if args.dump:
        out.emit(info={"R": R.to_json()}, name="operator")
    out.emit(check_yang_baxter(R))
    out.emit(check_hecke_condition(R))


def cmd_skew(args, out: Emitter):
    from .tensor import (
        bc_operators,
        check_bc_relation,
        check_skew_inverse,
        compare_c_closed_form,
        hecke_symmetry,
        skew_inverse,
        trace_convention_report,
    )

    dim = _dim(args)
    R = hecke_symmetry(dim)
    Psi = skew_inverse(R)
    B, C = bc_operators(Psi)
    out.emit(check_skew_inverse(R, Psi))
    out.emit(info={"B": _ops_json(B), "C": _ops_json(C)}, name="B_C")
    out.emit(check_bc_relation(B, C, dim))
    out.emit(compare_c_closed_form(C))
    out.emit(trace_convention_report(dim, C))


def _set_degree(args):
    if args.max_degree is not None:
        if args.max_degree < 2:
            raise UsageError("--max-degree", "must be at least 2")
        print(f"warning: rewriting degree cap set to {args.max_degree}", file=sys.stderr)
        os.environ["BRAIDLAB_MAX_DEGREE"] = str(args.max_degree)


def _algebra(args, hbar_default="hbar"):
    from .rea import build_rea

    dim = _dim(args)
    hb = _scalar(getattr(args, "hbar", None) or hbar_default, "--hbar")
    return build_rea(dim, hb, confluence_degree=0)


def cmd_rea(args, out: Emitter):
    from .ncalg import confluence_check, hilbert_dims, supersymmetric_dims

    if args.degree < 0:
        raise UsageError("--degree", "must be nonnegative")
    A = _algebra(args)
    if args.dump:
        out.emit(info={"presentation": A.pres.to_json()}, name="presentation")
    else:
        out.emit(info={"relations": [A.render(r) for r in A.pres.relations()]}, name="relations")
    got = hilbert_dims(A.pres, args.degree)
    even = sum(1 for _, p in A.pres.generators if p == 0)
    want = supersymmetric_dims(even, len(A.pres.generators) - even, args.degree)
    out.emit(VerificationReport("hilbert_dims", got == want, {"dims": got, "oracle": want}))
    out.emit(confluence_check(A.pres, args.confluence_degree))


def cmd_load(args, out: Emitter):
    from .ncalg import Presentation, confluence_check
    from .poisson import PoissonBracket, check_jacobi, check_parity_axioms
    from .tensor import TensorOperator, check_hecke_condition, check_yang_baxter

    data = _read_json(args.file, "--file")
    try:
        if "entries" in data:
            op = TensorOperator.from_json(data)
            out.emit(info={"roundtrip": op.to_json() == data}, name="operator")
            if op.arity == 2:
                out.emit(check_yang_baxter(op))
                out.emit(check_hecke_condition(op))
        elif data.get("bracket"):
            Bk = PoissonBracket.from_json(data)
            out.emit(info={"roundtrip": Bk.to_json() == data}, name="bracket")
            out.emit(check_parity_axioms(Bk))
            out.emit(check_jacobi(Bk))
        else:
            P = Presentation.from_json(data)
            out.emit(info={"roundtrip": P.to_json() == data}, name="presentation")
            out.emit(confluence_check(P))
    except (BraidlabError, KeyError, TypeError, ValueError) as exc:
        raise UsageError("--file", f"invalid content: {exc}") from None


def cmd_casimir(args, out: Emitter):
    from . import reference as ref
    from .ncalg import centrality_residual
    from .rea import build_rea, casimir_factor, r_trace_power
    from .tensor import SuperDim

    A = _algebra(args)
    if not 1 <= args.k <= 2 * A.dim.N:
        raise UsageError("--k", f"must lie in 1..{2 * A.dim.N}")
    z = r_trace_power(A, args.k)
    res = [(g, A.render(r)) for g, r in centrality_residual(z, A.pres) if not r.is_zero()]
    details = {"element": A.render(z), "residuals": res}
    known = {SuperDim(2, 0): ref.TRACES_20, SuperDim(1, 1): ref.TRACES_11}.get(A.dim, {}).get(args.k)
    if known is not None:
        at0 = z.map_coeffs(lambda c: c.subs({"hbar": 0}))
        details["hbar_0_form"] = known
        A0 = A if A.hbar.is_zero() else build_rea(A.dim, 0, confluence_degree=0)
        details["hbar_0_agrees"] = at0 == A0.nf(A0.parse(known))
    out.emit(VerificationReport("centrality", not res, details))
    if A.dim == SuperDim(2, 0) and args.k == 2:
        out.emit(casimir_factor())


def cmd_ch(args, out: Emitter):
    from . import reference as ref
    from .rea import ch_factorized_check_11, ch_residual, ch_solve
    from .tensor import SuperDim

    dim = _dim(args)
    if dim.N > 2:
        raise UsageError("--m/--n", "Cayley-Hamilton solving is bounded to m+n <= 2")
    A = _algebra(args, "0")
    for degree in (dim.N, dim.N + 1):
        sols = ch_solve(A, degree)
        if sols:
            break
    out.emit(info={"degree": degree, "identities": [[A.render(c) for c in s] for s in sols]}, name="ch_solve")
    printed = {SuperDim(2, 0): ref.CH_20, SuperDim(1, 1): ref.CH_11}.get(dim)
    if printed is not None and A.hbar.is_zero():
        res = ch_residual(A, [A.parse(c) for c in printed])
        out.emit(VerificationReport("ch_reference", res.is_zero(), {"residual": res.render(A.names)}))
    if dim == SuperDim(1, 1):
        out.emit(ch_factorized_check_11(A))


def cmd_pairing(args, out: Emitter):
    from .linalg import determinant
    from .rea import casimir_gram_factor, gram_matrix

    A = _algebra(args)
    G = gram_matrix(A)
    det = determinant(G)
    out.emit(
        VerificationReport(
            "gram_invertible", not det.is_zero(), {"gram": [[str(x) for x in row] for row in G], "determinant": str(det)}
        )
    )
    out.emit(casimir_gram_factor(A))


def cmd_poisson(args, out: Emitter):
    from .poisson import (
        center_residual,
        check_compatibility,
        check_jacobi,
        check_parity_axioms,
        linear_bracket,
        quadratic_gl_bracket,
        quadratic_sl2_bracket,
        sl2_bracket,
        so3_bracket,
    )
    from .scalar import Scalar

    if args.family == "sl2":
        pair, centers = (sl2_bracket(), quadratic_sl2_bracket()), ["2*x*y + h^2/2"]
    elif args.family == "gl":
        dim = _dim(args)
        pair = (linear_bracket(dim), quadratic_gl_bracket(dim))
        names = [n for n, _ in pair[0].generators]
        diag = [("- " if dim.parity(i) else "+ ") + names[i * dim.N + i] for i in range(dim.N)]
        centers = [" ".join(diag).lstrip("+ ")]
    else:
        try:
            pair = (so3_bracket(1), so3_bracket(args.p))
        except (ParseError, BraidlabError, ValueError) as exc:
            raise UsageError("--p", f"cannot parse {args.p!r}: {exc}") from None
        centers = ["x^2 + y^2 + z^2"]
    for label, Bk in zip(("linear", "quadratic"), pair):
        out.emit(info={"bracket": Bk.to_json()}, name=f"{label}_table")
        out.emit(check_jacobi(Bk))
        out.emit(check_parity_axioms(Bk))
    out.emit(check_compatibility(*pair))
    for z in centers:
        for label, Bk in zip(("linear", "quadratic"), pair):
            res = [(g, Bk.render(r)) for g, r in center_residual(Bk, Bk.parse(z)) if not r.is_zero()]
            out.emit(VerificationReport(f"center {label}", not res, {"element": z, "residuals": res}))


def cmd_semiclassical(args, out: Emitter):
    from .poisson import compare_brackets, quadratic_gl_bracket, semiclassical_bracket_from_algebra

    A = _algebra(args, "0")
    Bk = semiclassical_bracket_from_algebra(A.pres)
    out.emit(info={"bracket": Bk.to_json()}, name="semiclassical_bracket")
    out.emit(compare_brackets(Bk, quadratic_gl_bracket(A.dim)))


def _read_json(path: str, flag: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(flag, f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(flag, f"{path} is not valid JSON: {exc}") from None


def cmd_orbit(args, out: Emitter):
    from .orbits import Spectrum, orbit_ideal, power_sum, quantum_dims, regularity
    from .rea import build_rea
    from .tensor import SuperDim

    data = _read_json(args.spectrum, "--spectrum")
    if not isinstance(data, dict):
        raise UsageError("--spectrum", "expected an object with keys mu, nu")
    try:
        s, point = Spectrum.from_json(data)
    except (ParseError, BraidlabError, ValueError) as exc:
        raise UsageError("--spectrum", str(exc)) from None
    if point.get("q") == 0:
        raise UsageError("--spectrum", "q = 0 is not allowed")
    hb = _scalar(args.hbar if args.hbar is not None else str(data.get("hbar", "0")), "--hbar")
    if s.m + s.n < 1:
        raise UsageError("--spectrum", "empty spectrum")
    if s.m + s.n > args.max_dim:
        raise UsageError("--spectrum", f"({s.m}|{s.n}) exceeds the size cap m+n <= {args.max_dim}")
    try:
        dims = quantum_dims(s, hb, args.variant)
    except DegenerateSpectrum as exc:
        raise UsageError("--spectrum", f"degenerate spectrum: {exc}") from None
    if point:
        dims_out = {k: [str(x.subs(point)) for x in v] for k, v in (("d", dims.d), ("d_prime", dims.d_prime))}
    else:
        dims_out = {"d": [str(x) for x in dims.d], "d_prime": [str(x) for x in dims.d_prime]}
    sums = [str(power_sum(s, dims, k).subs(point) if point else power_sum(s, dims, k)) for k in range(s.m + s.n + 1)]
    out.emit(info={"variant": args.variant, **dims_out, "power_sums": sums}, name="quantum_dims")
    out.emit(regularity(s, hb, point or None))
    A = build_rea(SuperDim(s.m, s.n), hb, confluence_degree=0)
    ideal = orbit_ideal(A, s, args.variant)
    if point:
        ideal = [p.map_coeffs(lambda c: c.subs(point)) for p in ideal]
    out.emit(info={"generators": [A.render(p) for p in ideal]}, name="orbit_ideal")


def cmd_suite(args, out: Emitter):
    from .suite import run_all

    if args.jobs < 1:
        raise UsageError("--jobs", "must be at least 1")
    for key, rep, ms in run_all(args.jobs):
        out.emit(rep, timing=ms)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--pretty", action="store_true", help="indented JSON instead of JSON lines")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="size cap on m+n (default 4)")
    common.add_argument("--max-degree", type=int, default=None, help="rewriting degree cap (default 12 or BRAIDLAB_MAX_DEGREE)")
    p = argparse.ArgumentParser(
        prog="braidlab", description="Exact checks for Hecke symmetries, REAs and Poisson pencils.", allow_abbrev=False
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(parent, name, **kw):
        return parent.add_parser(name, parents=[common], allow_abbrev=False, **kw)

    def dimmed(name, help_, **kw):
        sp = add(sub, name, help=help_)
        sp.add_argument("--m", type=int, required=kw.get("required", True))
        sp.add_argument("--n", type=int, required=kw.get("required", True))
        return sp

    sp = dimmed("ybe", "Yang-Baxter and Hecke conditions")
    sp.add_argument("--dump", action="store_true", help="also print R as JSON")
    sp.set_defaults(func=cmd_ybe)
    dimmed("skew", "skew-inverse, B, C and related checks").set_defaults(func=cmd_skew)
    sp = dimmed("rea", "build the algebra, Hilbert dims, confluence")
    sp.add_argument("--hbar", default=None)
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--confluence-degree", type=int, default=4)
    sp.add_argument("--dump", action="store_true", help="print the presentation JSON")
    sp.set_defaults(func=cmd_rea)
    sp = dimmed("casimir", "R-trace power and centrality")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--hbar", default=None)
    sp.set_defaults(func=cmd_casimir)
    sp = dimmed("ch", "Cayley-Hamilton identity")
    sp.add_argument("--hbar", default=None)
    sp.set_defaults(func=cmd_ch)
    sp = dimmed("pairing", "Gram matrix and Casimir factor")
    sp.add_argument("--hbar", default=None)
    sp.set_defaults(func=cmd_pairing)
    sp = sub.add_parser("poisson", help="Poisson pencils", allow_abbrev=False)
    fam = sp.add_subparsers(dest="family", required=True)
    add(fam, "sl2").set_defaults(func=cmd_poisson)
    g = add(fam, "gl")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_poisson)
    s3 = add(fam, "so3")
    s3.add_argument("--p", required=True, help="polynomial in x, y, z")
    s3.set_defaults(func=cmd_poisson)
    sp = dimmed("semiclassical", "first-order expansion against the quadratic bracket")
    sp.set_defaults(func=cmd_semiclassical)
    sp = add(sub, "orbit", help="quantum dims, regularity and the orbit ideal")
    sp.add_argument("--spectrum", required=True)
    sp.add_argument("--hbar", default=None)
    sp.add_argument("--variant", choices=["corrected", "printed"], default="corrected")
    sp.set_defaults(func=cmd_orbit)
    sp = add(sub, "load", help="validate an operator, presentation or bracket JSON file")
    sp.add_argument("--file", required=True)
    sp.set_defaults(func=cmd_load)
    sp = add(sub, "suite", help="the full acceptance battery")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_suite)
    return p


def _inputs(args) -> dict:
    skip = {"func", "pretty", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_dim != DEFAULT_MAX_DIM:
        print(f"warning: size cap set to m+n <= {args.max_dim}", file=sys.stderr)
    command = args.command if args.command != "poisson" else f"poisson {args.family}"
    out = Emitter(command, _inputs(args), args.pretty)
    saved = os.environ.get("BRAIDLAB_MAX_DEGREE")
    try:
        _set_degree(args)
        args.func(args, out)
    except UsageError as exc:
        parser.exit(2, f"braidlab {command}: error: {exc}\n")
    except DegreeOverflow as exc:
        parser.exit(2, f"braidlab {command}: error: argument --max-degree: {exc}; raise the cap to continue\n")
    except BraidlabError as exc:
        out.emit(VerificationReport(type(exc).__name__, False, {"error": str(exc)}))
    finally:
        if saved is None:
            os.environ.pop("BRAIDLAB_MAX_DEGREE", None)
        else:
            os.environ["BRAIDLAB_MAX_DEGREE"] = saved
    return 1 if out.failed else 0


def main() -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        code = run()
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 1
    sys.exit(code)


if __name__ == "__main__":
    main()

"""woundlab command line.

Exit codes: 0 success, 1 computation error, 2 usage error, 3 verification failure.
WOUNDLAB_PREC sets the default series precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from ..field_core.gf import FieldCeilingError, FieldElement, FieldSpec, GF
from ..field_core.laurent import DEFAULT_PREC, PrecisionError
from ..grouplaw import QRGroup, SquareParameterError
from ..hassewitt import DegreeMismatch, build_matrix, cohomology_report
from ..ppoly import MalformedEquation, RussellEquation, classify, compactify, genus, is_wound, splitting_degree
from ..torsor_local import LocalRussell, ShapeDefect, TorsorClass, UnsupportedShape, is_trivial, reduce
from .corpus import CorpusError, load_corpus, run_corpus
from .expr import ExprSyntaxError, format_value, parse, parse_field, parse_russell

__all__ = ["main", "run", "build_parser", "UsageError"]

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_prec() -> int:
    raw = os.environ.get("WOUNDLAB_PREC")
    if raw is None:
        return DEFAULT_PREC
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"WOUNDLAB_PREC must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("WOUNDLAB_PREC must be positive")
    return value


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--field", default=d, help='coefficient field, e.g. F3, F9 or "F4:w^2+w+1"')
    parser.add_argument("--prec", type=int, default=d, help="series precision O(t^N)")
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="emit JSON (sorted keys)")
    parser.add_argument("--trace", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="include derivation steps")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="woundlab", description="Wound unipotent groups over function fields.")
    _globals(ap, False)
    common = _ArgumentParser(add_help=False)
    _globals(common, True)
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("classify", parents=[common], help="classify a Russell equation")
    p.add_argument("equation")

    p = sub.add_parser("genus", parents=[common], help="genus from (p, n, m) or from an equation")
    p.add_argument("args", nargs="+", metavar="P N M | EQUATION")

    p = sub.add_parser("compactify", parents=[common], help="weighted homogeneous compactification")
    p.add_argument("equation")

    p = sub.add_parser("group-law", parents=[common], help="the group u^2 + v + a v^2 in characteristic 2")
    p.add_argument("--a", default="t", help="the non-square parameter a (default t)")
    gsub = p.add_subparsers(dest="op", metavar="OP")
    gsub.required = True
    q = gsub.add_parser("add", parents=[common], help="sum of two parameters (inf allowed)")
    q.add_argument("s1")
    q.add_argument("s2")
    q = gsub.add_parser("embed", parents=[common], help="the point (u, v) of a parameter")
    q.add_argument("s")

    p = sub.add_parser("torsor", parents=[common], help="local torsor classes over k((t))")
    tsub = p.add_subparsers(dest="op", metavar="OP")
    tsub.required = True
    for name, helptext in (("reduce", "normal form of the class of f"), ("trivial", "is the class of f trivial")):
        q = tsub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--model", default=None, help='e.g. "u^3+v+t*v^3"')
        q.add_argument("--p", type=int, default=None, help="with --n, --m, --k: the model u^(p^n) + v + t^k v^(p^m)")
        q.add_argument("--n", type=int, default=1)
        q.add_argument("--m", type=int, default=1)
        q.add_argument("--k", type=int, default=None)
        q.add_argument("--f", dest="f_opt", default=None, help="the class representative (or positional)")
        q.add_argument("f", nargs="?", default=None)
        if name == "trivial":
            q.add_argument("--bound", type=int, default=6, help="search bound for unsupported shapes")

    p = sub.add_parser("hasse-witt", parents=[common], help="semilinear operator on H^1 and its stable rank")
    p.add_argument("--p", type=int, default=None, help="characteristic (the field defaults to F_p)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kernel", action="store_true", help="also compute fixed points of phi")
    p.add_argument("--a", dest="a_opt", default=None, help="the binary form (or positional)")
    p.add_argument("form", nargs="?", default=None, help='binary form in t0, t1, e.g. "t0^2*t1^2*(t0^8+t1^8)"')

    p = sub.add_parser("verify-paper", parents=[common], help="run the bundled example corpus")
    p.add_argument("--corpus", default=None, help="alternative corpus file")
    return ap


# --- helpers ------------------------------------------------------------------------

def _field(ns) -> FieldSpec:
    if ns.field is None:
        raise UsageError("this command needs --field (e.g. --field F3)")
    try:
        return parse_field(ns.field)
    except (ValueError, FieldCeilingError) as exc:
        raise UsageError(str(exc)) from None


def _prec(ns) -> int:
    if ns.prec is not None:
        if ns.prec < 1:
            raise UsageError("--prec must be positive")
        return ns.prec
    return _default_prec()


def _russell(ns, text: str, coeffs: str = "auto") -> RussellEquation:
    F = _field(ns) if ns.field is not None or not text.lstrip().startswith("p") else None
    R = parse_russell(text, F, coeffs, prec=_prec(ns))
    R.validate()
    return R


def _fmt(x: Any) -> str:
    return format_value(x)


# --- commands -----------------------------------------------------------------------

def cmd_classify(ns) -> tuple[dict, str]:
    R = _russell(ns, ns.equation)
    c = classify(R)
    out = {"equation": R.to_str(_fmt), "field": R.field.name, "p": R.p, "n": R.n, "m": R.m,
           "coeffs": [_fmt(a) for a in R.a], "classification": c.as_dict(), "label": c.label()}
    text = f"{R.to_str(_fmt)}: {c.label()}"
    if ns.trace:
        w = is_wound(R.to_ppoly())
        out["splitting_degree"] = splitting_degree(R)
        out["wound"] = {"verdict": w.verdict, "reason": w.reason}
        text += f"\n  splitting degree {out['splitting_degree']}\n  wound: {w.verdict} ({w.reason})"
        if c.reason:
            text += f"\n  {c.reason}"
    return out, text


def cmd_genus(ns) -> tuple[dict, str]:
    if len(ns.args) == 3 and all(a.isdigit() for a in ns.args):
        p, n, m = map(int, ns.args)
        if p < 2 or any(d < 2 for d in range(2, p) if p % d == 0) or n < 1 or m < 1:
            raise UsageError("need a prime p and n, m >= 1")
    elif len(ns.args) == 1:
        R = _russell(ns, ns.args[0])
        p, n, m = R.p, R.n, R.m
    else:
        raise UsageError("genus takes P N M or a single equation")
    g = genus(p, n, m)
    return {"p": p, "n": n, "m": m, "genus": g}, str(g)


def cmd_compactify(ns) -> tuple[dict, str]:
    R = _russell(ns, ns.equation)
    rep = compactify(R)
    eq = rep.to_str(_fmt)
    out = {"equation": eq, "p": rep.p, "n": rep.n, "m": rep.m, "coeffs": [_fmt(a) for a in rep.coeffs],
           "weights": list(rep.weights), "degree": rep.degree, "regular": rep.regular,
           "boundary_degree": rep.boundary_degree, "canonical_degree": rep.canonical_degree,
           "genus": rep.genus}
    w = ",".join(map(str, rep.weights))
    text = "\n".join([
        f"{eq} = 0 in P({w}), degree {rep.degree}",
        f"regular: {'yes' if rep.regular else 'no'}",
        f"boundary point degree: {rep.boundary_degree}",
        f"canonical degree: {rep.canonical_degree}",
        f"genus: {rep.genus}",
    ])
    return out, text


def _param(G: QRGroup, text: str, F: FieldSpec):
    if text.strip() in ("inf", "oo", "infinity"):
        return G.infinity()
    return G.point(parse(text, F).to_ratfunc())


def cmd_group_law(ns) -> tuple[dict, str]:
    F = _field(ns) if ns.field is not None else GF(2)
    a = parse(ns.a, F).to_ratfunc()
    G = QRGroup(a)
    if ns.op == "add":
        P, Q = _param(G, ns.s1, F), _param(G, ns.s2, F)
        S = G.add(P, Q)
        out = {"a": a.to_str(), "s1": str(P), "s2": str(Q), "sum": str(S)}
        return out, str(S)
    P = _param(G, ns.s, F)
    u, v = G.embed(P)
    if not G.on_curve(u, v):
        raise ArithmeticError("embedded point is off the curve")
    out = {"a": a.to_str(), "s": str(P), "u": u.to_str(), "v": v.to_str()}
    return out, f"(u, v) = ({u}, {v})"


def _torsor_class(ns) -> TorsorClass:
    text = ns.f if ns.f is not None else ns.f_opt
    if text is None or (ns.f is not None and ns.f_opt is not None):
        raise UsageError("give the class f either positionally or with --f")
    if (ns.model is None) == (ns.k is None):
        raise UsageError("give exactly one of --model or --k (with --p, --n, --m)")
    if ns.model is not None:
        R = _russell(ns, ns.model, "laurent")
        model = LocalRussell.general(R.p, R.n, R.a)
        F = _field(ns)
    else:
        if ns.field is None and ns.p is None:
            raise UsageError("--k needs --p or --field")
        F = _field(ns) if ns.field is not None else GF(ns.p)
        if ns.p is not None and ns.p != F.p:
            raise UsageError(f"--p {ns.p} does not match the field characteristic {F.p}")
        if min(ns.n, ns.m) < 1:
            raise UsageError("--n and --m must be positive")
        try:
            model = LocalRussell.monomial(F.p, ns.n, ns.m, ns.k, F)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    f = parse(text, F).to_laurent(_prec(ns))
    if f.prec is None:
        f = f.with_prec(_prec(ns))
    return TorsorClass(model, f)


def cmd_torsor(ns) -> tuple[dict, str]:
    T = _torsor_class(ns)
    if ns.op == "trivial":
        verdict = is_trivial(T, search_bound=ns.bound)
        out = {"model": T.model.describe(), "f": T.f.to_str(), "trivial": verdict}
        return out, str(verdict).lower() if isinstance(verdict, bool) else verdict
    nf = reduce(T)
    base = nf.base_series()
    out = {"model": T.model.describe(), "f": T.f.to_str(), "normal_form": base.to_str(),
           "support": base.support(), "trivial": nf.trivial, "precision": nf.precision,
           "lang_k": nf.lang_k, "lang_n": nf.lang_n}
    text = base.to_str()
    if ns.trace:
        out["trace"] = [mv.as_dict() for mv in nf.trace.moves]
        out["tower"] = [ev.as_dict() for ev in nf.tower.events]
        lines = [text, f"  precision O(t^{nf.precision}); {len(nf.trace)} moves"]
        for mv in nf.trace.moves:
            where = f" at t^{mv.exponent}" if mv.exponent is not None else ""
            lines.append(f"  {mv.kind}{where}: {mv.equation}")
        text = "\n".join(lines)
    return out, text


def cmd_hasse_witt(ns) -> tuple[dict, str]:
    if (ns.form is None) == (ns.a_opt is None):
        raise UsageError("give the binary form either positionally or with --a")
    if ns.form is None:
        ns.form = ns.a_opt
    if ns.field is None and ns.p is None:
        raise UsageError("hasse-witt needs --p or --field")
    F = _field(ns) if ns.field is not None else GF(ns.p)
    if ns.p is not None and ns.p != F.p:
        raise UsageError(f"--p {ns.p} does not match the field characteristic {F.p}")
    if min(ns.n, ns.m, ns.k) < 1:
        raise UsageError("--n, --m and --k must be positive")
    p = F.p
    try:
        expected = ns.k * p**ns.n * (p**ns.m - 1)
        form = parse(ns.form, F).to_binary_form(expected if ns.form.strip() == "0" else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    A = build_matrix(p, ns.n, ns.m, ns.k, form)
    rep = cohomology_report(p, ns.n, ns.m, ns.k, form, kernel=ns.kernel)
    rows = [[str(FieldElement(F, x)) for x in row] for row in A.entries]
    out = rep.as_dict()
    out["h1G_text"] = rep.h1G_str()
    out["certified"] = rep.certified
    out["matrix"] = rows
    lines = [f"d = {rep.d}", f"stable rank r = {rep.r}", f"H^1(C, G) = {rep.h1G_str()}",
             "H^2(C, U) = 0", f"h^1(C, L) = {rep.h1L_dim}"]
    if rep.experimental:
        lines.append("(experimental regime: only (p, n, m) = (3, 1, 1) is independently checked)")
    if ns.kernel:
        KF = rep.kernel_field
        out["kernel_field"] = KF.name
        out["kernel_basis"] = [[str(FieldElement(KF, x)) for x in v] for v in rep.kernel_basis]
        lines.append(f"fixed points of phi over {KF.name}:")
        lines += ["  (" + ", ".join(v) + ")" for v in out["kernel_basis"]]
    if ns.trace:
        lines.append("matrix (column i = phi(e_i)):")
        lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in rows]
    return out, "\n".join(lines)


def cmd_verify_paper(ns) -> tuple[dict, str, int]:
    try:
        entries = load_corpus(ns.corpus)
    except (OSError, CorpusError) as exc:
        raise UsageError(f"corpus: {exc}") from None
    report = run_corpus(entries)
    code = EXIT_OK if report.ok else EXIT_VERIFY
    return report.as_dict(ns.trace), report.to_text(ns.trace), code


_COMMANDS = {
    "classify": cmd_classify,
    "genus": cmd_genus,
    "compactify": cmd_compactify,
    "group-law": cmd_group_law,
    "torsor": cmd_torsor,
    "hasse-witt": cmd_hasse_witt,
}

_USAGE_ERRORS = (UsageError, ExprSyntaxError, MalformedEquation, DegreeMismatch, SquareParameterError)
_COMPUTE_ERRORS = (PrecisionError, FieldCeilingError, UnsupportedShape, ShapeDefect, ArithmeticError)


def run(argv: Sequence[str]) -> tuple[int, dict, str]:
    """Execute a command line; returns (exit code, JSON payload, text)."""
    try:
        ns = build_parser().parse_args(list(argv))
        if ns.command == "verify-paper":
            payload, text, code = cmd_verify_paper(ns)
        else:
            payload, text = _COMMANDS[ns.command](ns)
            code = EXIT_OK
        payload = {"command": ns.command, **({"op": ns.op} if getattr(ns, "op", None) else {}), **payload}
        return code, payload, text
    except _USAGE_ERRORS as exc:
        return EXIT_USAGE, {"error": str(exc), "kind": "usage"}, f"error: {exc}"
    except _COMPUTE_ERRORS as exc:
        return EXIT_COMPUTE, {"error": str(exc), "kind": type(exc).__name__}, f"error: {exc}"
    except ValueError as exc:
        # remaining ValueErrors come from malformed inputs (fields, series, forms)
        return EXIT_USAGE, {"error": str(exc), "kind": "usage"}, f"error: {exc}"


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=True)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        except UsageError:
            pass    # reported below with the usual exit code
    code, payload, text = run(argv)
    as_json = "--json" in argv
    stream = sys.stderr if code in (EXIT_COMPUTE, EXIT_USAGE) and not as_json else sys.stdout
    print(dumps(payload) if as_json else text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands::

    formalnf normalize  --input germ.json --order second --degree 6 --output result.json
    formalnf complement --case 2_10rho --rho 3/2 --lambda identity --degree 4
    formalnf resonance  --rho 3/2 --max-degree 8
    formalnf verify     --input germ.json --normal-form result.json

Exit codes: 0 success, 1 verification failure or mismatch, 2 input error,
3 unsupported input, 4 internal invariant violation.

Numbers are exact strings everywhere: ``{"re": "1/2", "im": "-3"}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import (
    CaseId,
    IrrationalClosedForm,
    UncoveredCase,
    computed_complement,
    expected_complement,
    resonance_sets,
)
from .exactnum import GaussianRational, parse_gaussian, parse_rational, rational_to_str
from .operators import UnsupportedLinearPart
from .renormalizer import (
    NormalFormResult,
    NotResonantError,
    first_discrepancy,
    normalize,
)
from .series import (
    MAX_DEGREE,
    FormalTransformation,
    HomogeneousMap,
    LinearMap,
    format_map,
    format_monomial,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4

GERM_FORMAT = "formalnf-germ"
RESULT_FORMAT = "formalnf-result"


class InputError(Exception):
    """Malformed or inconsistent input file."""


# ---------------------------------------------------------------------------
# GermFile
# ---------------------------------------------------------------------------


def _number_to_json(c: GaussianRational) -> dict:
    return c.to_json()


def _number_from_json(obj, where: str) -> GaussianRational:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object {{\"re\": ..., \"im\": ...}}")
    extra = set(obj) - {"re", "im"}
    if extra or "re" not in obj:
        raise InputError(f"{where}: expected keys 're' and optional 'im', got {sorted(obj)}")
    try:
        re_ = parse_rational(obj["re"])
        im_ = parse_rational(obj.get("im", "0"))
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None
    return GaussianRational(re_, im_)


def _lambda_to_json(lin: LinearMap) -> dict:
    flag = lin.flag
    if flag == "general":
        return {"kind": "general",
                "matrix": [[str(c) for c in row] for row in lin.matrix]}
    return {"kind": flag, "entries": [str(c) for c in lin.diagonal_entries()]}


def _lambda_from_json(obj, n: int) -> LinearMap:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("lambda: expected an object with a 'kind'")
    kind = obj["kind"]
    extra = set(obj) - {"kind", "entries", "matrix"}
    if extra:
        raise InputError(f"lambda: unexpected keys {sorted(extra)}")

    def parse(s, where):
        if not isinstance(s, str):
            raise InputError(f"{where}: expected a number string, got {s!r}")
        try:
            return parse_gaussian(s)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None

    if kind == "general":
        rows = obj.get("matrix")
        if not isinstance(rows, list) or len(rows) != n or any(
                not isinstance(r, list) or len(r) != n for r in rows):
            raise InputError(f"lambda.matrix: expected a {n}x{n} list of number strings")
        return LinearMap([[parse(c, f"lambda.matrix[{i}][{j}]") for j, c in enumerate(r)]
                          for i, r in enumerate(rows)])
    if kind not in ("zero", "identity", "diagonal"):
        raise InputError(f"lambda.kind: expected zero|identity|diagonal|general, got {kind!r}")
    if "matrix" in obj:
        raise InputError("lambda.matrix is only allowed with kind 'general'")
    entries = obj.get("entries")
    if entries is None:
        if kind == "diagonal":
            raise InputError("lambda.entries: required for kind 'diagonal'")
        return LinearMap.zero(n) if kind == "zero" else LinearMap.identity(n)
    if not isinstance(entries, list) or len(entries) != n:
        raise InputError(f"lambda.entries: expected a list of {n} number strings")
    lin = LinearMap.diagonal([parse(e, f"lambda.entries[{k}]") for k, e in enumerate(entries)])
    if kind != "diagonal" and lin.flag != kind:
        raise InputError(f"lambda.entries are inconsistent with kind {kind!r}")
    return lin


def germ_to_json(F: FormalTransformation) -> dict:
    """Canonical GermFile object (terms by degree, coordinate, monomial order)."""
    terms = []
    for d in sorted(F.terms):
        for j, Q, c in F.terms[d].terms():
            terms.append({"coord": j, "exponents": list(Q), "coeff": _number_to_json(c)})
    return {"format": GERM_FORMAT, "n": F.n, "truncation": F.N,
            "lambda": _lambda_to_json(F.linear), "terms": terms}


def germ_from_json(obj) -> FormalTransformation:
    if not isinstance(obj, dict):
        raise InputError("germ: expected a JSON object")
    extra = set(obj) - {"format", "n", "truncation", "lambda", "terms"}
    if extra:
        raise InputError(f"germ: unexpected keys {sorted(extra)}")
    if obj.get("format", GERM_FORMAT) != GERM_FORMAT:
        raise InputError(f"format: expected {GERM_FORMAT!r}, got {obj.get('format')!r}")
    for key in ("n", "truncation", "lambda", "terms"):
        if key not in obj:
            raise InputError(f"germ: missing key {key!r}")
    n, N = obj["n"], obj["truncation"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("n: expected a positive integer")
    if not isinstance(N, int) or isinstance(N, bool) or not 1 <= N <= MAX_DEGREE:
        raise InputError(f"truncation: expected an integer in 1..{MAX_DEGREE}")
    lin = _lambda_from_json(obj["lambda"], n)
    if not isinstance(obj["terms"], list):
        raise InputError("terms: expected a list")
    buckets: dict = {}
    seen = set()
    for k, t in enumerate(obj["terms"]):
        where = f"terms[{k}]"
        if not isinstance(t, dict) or set(t) != {"coord", "exponents", "coeff"}:
            raise InputError(f"{where}: expected keys coord, exponents, coeff")
        j, Q = t["coord"], t["exponents"]
        if not isinstance(j, int) or isinstance(j, bool) or not 0 <= j < n:
            raise InputError(f"{where}.coord: expected an integer in 0..{n - 1}")
        if not isinstance(Q, list) or len(Q) != n or any(
                not isinstance(q, int) or isinstance(q, bool) or q < 0 for q in Q):
            raise InputError(f"{where}.exponents: expected {n} nonnegative integers")
        d = sum(Q)
        if not 2 <= d <= N:
            raise InputError(f"{where}.exponents: degree {d} outside 2..{N}")
        key = (j, tuple(Q))
        if key in seen:
            raise InputError(f"{where}: duplicate entry for coord {j}, exponents {Q}")
        seen.add(key)
        c = _number_from_json(t["coeff"], f"{where}.coeff")
        buckets.setdefault(d, []).append((j, tuple(Q), c))
    terms = {d: HomogeneousMap.from_terms(n, d, items) for d, items in buckets.items()}
    return FormalTransformation(lin, terms, N)


def result_to_json(res: NormalFormResult) -> dict:
    return {
        "format": RESULT_FORMAT,
        "order": res.order,
        "degree": res.N,
        "mu": res.mu,
        "normal_form": germ_to_json(res.G),
        "conjugation": germ_to_json(res.Phi),
        "diagnostics": [dg.to_json() for dg in res.diagnostics],
    }


def is_result_json(obj) -> bool:
    return isinstance(obj, dict) and obj.get("format") == RESULT_FORMAT


def result_from_json(obj) -> tuple:
    """``(G, Phi, order)`` from a ResultFile object."""
    for key in ("normal_form", "conjugation", "order"):
        if key not in obj:
            raise InputError(f"result: missing key {key!r}")
    return germ_from_json(obj["normal_form"]), germ_from_json(obj["conjugation"]), obj["order"]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_germ(path: str) -> FormalTransformation:
    obj = load_json(path)
    try:
        return germ_from_json(obj)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _table(headers, rows) -> str:
    cols = [headers] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[k]) for r in cols) for k in range(len(headers))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in cols[1:]]
    return "\n".join(lines)


def _basis_json(B) -> list:
    return [[{"coord": j, "exponents": list(Q), "coeff": c.to_json()} for j, Q, c in H.terms()]
            for H in B.generators]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_normalize(args, out) -> int:
    F = load_germ(args.input)
    N = F.N if args.degree is None else args.degree
    if not 1 <= N <= F.N:
        raise InputError(f"--degree {N} outside 1..{F.N} (the file's truncation)")
    F = F.truncate(N)
    res = normalize(F, args.order, N)
    payload = dumps(result_to_json(res))
    rows = []
    for dg in res.diagnostics:
        flag = "-" if dg.infinite_order_ok is None else ("yes" if dg.infinite_order_ok else "no")
        rows.append([dg.d, dg.dim_im, dg.dim_ker, dg.complement_rank, flag, format_map(res.G.term(dg.d))])
    summary = (f"order={res.order}  N={N}  mu={res.mu}\n"
               + _table(["d", "dim_im", "dim_ker", "compl", "inf_ok", "G_d"], rows))
    if args.output and args.output != "-":
        Path(args.output).write_text(payload, encoding="utf-8")
        print(summary, file=out)
    else:
        out.write(payload)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_complement(args, out) -> int:
    case = CaseId.parse(args.case, rho=args.rho, tau=args.tau)
    d = args.degree
    if d < 2:
        raise InputError("--degree must be >= 2")
    computed = computed_complement(case, args.lam, d)
    try:
        expected = expected_complement(case, args.lam, d)
        note = None
    except (UncoveredCase, IrrationalClosedForm) as exc:
        expected, note = None, str(exc)
    if expected is None:
        verdict = "unavailable"
    else:
        verdict = "match" if expected.span_equals(computed) else "mismatch"
    lines = [f"case {case}, Lambda = {args.lam}, source degree {d} -> target degree {d + 1}",
             f"computed complement (rank {computed.rank}, echelon basis):"]
    lines += [f"  {format_map(H)}" for H in computed.vectors]
    if expected is not None:
        lines.append(f"closed-form generators (rank {expected.rank}):")
        lines += [f"  {format_map(H)}" for H in expected.generators]
    else:
        lines.append(f"closed form: {note}")
    lines.append(f"verdict: {verdict}")
    print("\n".join(lines), file=out)
    if args.output:
        Path(args.output).write_text(dumps({
            "case": str(case), "lambda": args.lam, "degree": d,
            "computed": _basis_json(computed),
            "expected": None if expected is None else _basis_json(expected),
            "verdict": verdict}), encoding="utf-8")
    return EXIT_VERIFY if verdict == "mismatch" else EXIT_OK


def _fmt_set(s) -> str:
    return "{" + ", ".join(rational_to_str(x) for x in sorted(s, reverse=True)) + "}"


def cmd_resonance(args, out) -> int:
    try:
        rho = parse_rational(args.rho)
    except ValueError as exc:
        raise InputError(f"--rho: {exc}") from None
    if rho == 0:
        raise InputError("--rho must be nonzero")
    if args.max_degree < 2:
        raise InputError("--max-degree must be >= 2")
    rs = resonance_sets(rho, args.max_degree)
    rows = []
    for d in range(2, args.max_degree + 1):
        F_d = rs.F.get(d)
        rows.append([d, _fmt_set(rs.E[d]), "yes" if rho in rs.E[d] else "no",
                     "-" if F_d is None else _fmt_set(F_d),
                     "-" if F_d is None else ("yes" if rho in F_d else "no")])
    params = ", ".join(f"{k} = {v}" for k, v in rs.regime_params.items())
    print(f"rho = {rational_to_str(rho)}", file=out)
    print(_table(["d", "E_d", "rho in E_d", "F_d", "rho in F_d"], rows), file=out)
    print(f"rho in script-E: {'yes' if rs.in_E else 'no'}", file=out)
    print(f"rho in script-F: {'yes' if rs.in_F else 'no'}", file=out)
    print(f"regime: ({rs.regime})" + (f" with {params}" if params else ""), file=out)
    if args.output:
        Path(args.output).write_text(dumps({
            "rho": rational_to_str(rho), "max_degree": args.max_degree,
            "E": {str(d): sorted(map(rational_to_str, s)) for d, s in rs.E.items()},
            "F": {str(d): sorted(map(rational_to_str, s)) for d, s in rs.F.items()},
            "in_E": rs.in_E, "in_F": rs.in_F,
            "regime": rs.regime,
            "regime_params": {k: str(v) for k, v in rs.regime_params.items()}}), encoding="utf-8")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    F = load_germ(args.input)
    g_obj = load_json(args.normal_form)
    try:
        if is_result_json(g_obj):
            G, Phi, _ = result_from_json(g_obj)
        else:
            G, Phi = germ_from_json(g_obj), None
    except InputError as exc:
        raise InputError(f"{args.normal_form}: {exc}") from None
    if args.conjugation:
        Phi = load_germ(args.conjugation)
    if Phi is None:
        Phi = FormalTransformation.identity(F.n, F.N)
    if len({F.n, G.n, Phi.n}) != 1:
        raise InputError("dimension mismatch between the files")
    if Phi.linear.flag != "identity":
        raise InputError("the conjugation must have identity linear part")
    top = min(F.N, G.N, Phi.N)
    N = top if args.degree is None else args.degree
    if not 1 <= N <= top:
        raise InputError(f"--degree {N} outside 1..{top}")
    bad = first_discrepancy(F, G, Phi, N)
    if bad is None:
        print(f"conjugacy holds through degree {N}", file=out)
        return EXIT_OK
    d, j, Q, lhs, rhs = bad
    names = ["z", "w"] if F.n == 2 else [f"z{k + 1}" for k in range(F.n)]
    print(f"conjugacy fails at degree {d}: coefficient of {format_monomial(Q, names)} "
          f"in coordinate {j}: (Phi o G) has {lhs}, (F o Phi) has {rhs}", file=out)
    return EXIT_VERIFY


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="formalnf", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("normalize", help="compute a normal form of a germ file")
    q.add_argument("--input", required=True, help="GermFile path ('-' for stdin)")
    q.add_argument("--order", choices=("pd", "second"), default="second")
    q.add_argument("--degree", type=int, help="truncation degree N (default: the file's)")
    q.add_argument("--output", help="ResultFile path (default: stdout)")

    q = sub.add_parser("complement", help="computed vs closed-form complement of Im L")
    q.add_argument("--case", required=True, help="case label, e.g. inf, 2_10rho:rho=3/2")
    q.add_argument("--lambda", dest="lam", choices=("zero", "identity"), default="zero")
    q.add_argument("--degree", type=int, required=True, help="source degree d")
    q.add_argument("--rho")
    q.add_argument("--tau")
    q.add_argument("--output", help="also write the bases as JSON")

    q = sub.add_parser("resonance", help="resonance sets and regime for the 2_10rho family")
    q.add_argument("--rho", required=True)
    q.add_argument("--max-degree", type=int, default=8)
    q.add_argument("--output", help="also write the sets as JSON")

    q = sub.add_parser("verify", help="check Phi o G == F o Phi")
    q.add_argument("--input", required=True, help="GermFile of F")
    q.add_argument("--normal-form", "--g", dest="normal_form", required=True,
                   help="GermFile of G, or a ResultFile (its conjugation is used)")
    q.add_argument("--conjugation", "--phi", dest="conjugation",
                   help="GermFile of Phi (default: from the ResultFile, else identity)")
    q.add_argument("--degree", type=int)
    return p


_COMMANDS = {"normalize": cmd_normalize, "complement": cmd_complement,
             "resonance": cmd_resonance, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UnsupportedLinearPart, NotResonantError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


def main_entry():  # pragma: no cover - console script wrapper
    sys.exit(main())

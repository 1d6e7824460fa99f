"""Command-line front end.

Verbs map one-to-one onto library entry points:

    classify    full screening report for one index (markdown or JSON)
    table       the D tables (index-two eliminations, index-three cases 1-4)
    embed       lattice embedding orbits and complement witnesses
    dinv        lens-space d-invariants by spin-c label
    linkform    compose linking forms and run the square-unit test
    candidates  enumerated configurations with L, K^2, D

Exit codes: 0 on success, 1 on runtime failures such as an exhausted search
budget, 2 on usage errors.  Output is deterministic byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

from . import catalog, exact, floer, lattice, linking, screening
from .configuration import Outcome

__all__ = ["main"]

_SHORT = {Outcome.PASS: "pass", Outcome.OBSTRUCTED: "OBSTRUCTED", Outcome.NOT_APPLICABLE: "n/a"}


class UsageError(Exception):
    pass


def _format_vector(vec) -> str:
    parts = []
    for i, x in enumerate(vec, start=1):
        if x == 0:
            continue
        if x == 1:
            term = f"e{i}"
        elif x == -1:
            term = f"-e{i}"
        else:
            term = f"{x}e{i}"
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts) if parts else "0"


def _frac(value: Fraction) -> str:
    return str(value)


def _markdown_table(headers, rows) -> str:
    out = ["| " + " | ".join(headers) + " |",
           "| " + " | ".join("---" for _ in headers) + " |"]
    for row in rows:
        out.append("| " + " | ".join(str(x) for x in row) + " |")
    return "\n".join(out)


# --------------------------------------------------------------------------
# classify
# --------------------------------------------------------------------------

def _candidate_json(report: screening.ClassificationReport,
                    r: screening.CandidateReport) -> dict:
    c = r.config
    d = c.D
    entry = {
        "type": c.name,
        "members": [t.name for t in c.members],
        "L": c.L,
        "K2": _frac(c.K2),
        "D": _frac(d),
        "verdicts": [v.to_json() for v in r.verdicts],
        "survived": r.survived,
    }
    if d > 0 and d.denominator == 1:
        entry["D_factored"] = exact.factor_string(int(d))
    if r.case is not None:
        entry["case"] = r.case
    if r.survived:
        entry["realizable"] = report.is_realizable(c)
    return entry


def report_to_json(report: screening.ClassificationReport) -> dict:
    return {
        "index": report.index,
        "candidates": [_candidate_json(report, r) for r in report.candidates],
        "survivors": [r.config.name for r in report.survivors],
        "unmarked_survivors": [c.name for c in report.unmarked_survivors],
        "cross_checks": report.cross_checks,
    }


def report_to_markdown(report: screening.ClassificationReport) -> str:
    headers = ["Type", "L", "K^2", "D"] + list(screening.FILTER_ORDER)
    rows = []
    for r in report.candidates:
        c = r.config
        d = c.D
        d_str = exact.factor_string(int(d)) if d > 0 and d.denominator == 1 else _frac(d)
        rows.append([c.name, c.L, _frac(c.K2), d_str]
                    + [_SHORT[v.outcome] for v in r.verdicts])
    lines = [f"# Screening report, index {report.index}", ""]
    lines.append(_markdown_table(headers, rows))
    lines.append("")
    lines.append("Survivors: " + ", ".join(r.config.name for r in report.survivors))
    realized = [r.config.name for r in report.survivors if report.is_realizable(r.config)]
    lines.append("Realizable: " + ", ".join(realized))
    open_cases = [c.name for c in report.unmarked_survivors]
    lines.append("Open (no imported realization): "
                 + (", ".join(open_cases) if open_cases else "none"))
    checks = report.cross_checks
    lines.append("Every realizable type survives: "
                 + ("yes" if checks["every_realizable_type_survives"] else "NO"))
    return "\n".join(lines) + "\n"


def _cmd_classify(args) -> int:
    report = screening.classify(args.index, budget=args.budget)
    if args.format == "json":
        print(json.dumps(report_to_json(report), indent=2, sort_keys=True))
    else:
        print(report_to_markdown(report), end="")
    return 0


# --------------------------------------------------------------------------
# table
# --------------------------------------------------------------------------

TABLE_IDS = ("index2-D", "index3-case1", "index3-case2", "index3-case3", "index3-case4")


def _cmd_table(args) -> int:
    if args.id == "index2-D":
        rows = []
        for config in screening.enumerate_candidates(2):
            verdict = screening.arithmetic_filter(config)
            if verdict.obstructed:
                rows.append([config.name, verdict.evidence["factorization"]])
        print(f"# Index-two types eliminated by the square-D test ({len(rows)} rows)")
        print()
        print(_markdown_table(["Type", "D"], rows))
        return 0
    case = int(args.id[-1])
    configs = screening.enumerate_index3_case(case)
    rows = []
    for config in configs:
        d = int(config.D)
        square = "yes" if exact.is_perfect_square(d) else ""
        rows.append([config.name, config.L, _frac(config.K2),
                     exact.factor_string(d), square])
    print(f"# Index-three case {case} candidates ({len(rows)} rows)")
    print()
    print(_markdown_table(["Type", "L", "K^2", "D", "D square"], rows))
    return 0


# --------------------------------------------------------------------------
# embed
# --------------------------------------------------------------------------

def _parse_graphs(spec: str) -> list[tuple[int, ...]]:
    chains = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            raise UsageError("empty plumbing chain in --graphs")
        try:
            weights = tuple(int(w) for w in part.split(","))
        except ValueError as exc:
            raise UsageError(f"bad weight in --graphs: {exc}") from None
        chains.append(weights)
    return chains


def _cmd_embed(args) -> int:
    chains = _parse_graphs(args.graphs)
    try:
        embeddings = lattice.enumerate_embeddings(chains, args.ambient, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"# Embeddings of {args.graphs!r} into -Z^{args.ambient}: "
          f"{len(embeddings)} orbit(s)")
    for idx, emb in enumerate(embeddings, start=1):
        print()
        print(f"orbit {idx}:")
        offset = 0
        for chain in chains:
            for w in chain:
                print(f"  {w:>4}  {_format_vector(emb.vectors[offset])}")
                offset += 1
        wit = lattice.complement_witness(emb)
        print(f"  complement generator {_format_vector(wit.generator)} "
              f"with square {wit.square}")
    return 0


# --------------------------------------------------------------------------
# dinv
# --------------------------------------------------------------------------

def _cmd_dinv(args) -> int:
    m = re.match(r"^\s*(\d+)\s*,\s*(\d+)\s*$", args.lens)
    if not m:
        raise UsageError("--lens expects 'p,q'")
    p, q = int(m.group(1)), int(m.group(2))
    try:
        labels = sorted(floer.spin_labels(p, q)) if args.spin else list(range(p))
        values = [(i, floer.d_lens(p, q, i)) for i in labels]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    kind = "spin structures" if args.spin else "spin-c structures"
    print(f"# d-invariants of L({p},{q}) at its {kind}")
    for i, value in values:
        print(f"  label {i:>3}: {value}")
    return 0


# --------------------------------------------------------------------------
# linkform
# --------------------------------------------------------------------------

_FRACTION_RE = re.compile(r"^[+-]?\d+/\d+$")


def _parse_form_descriptor(token: str) -> linking.CyclicLinkingForm:
    token = token.strip()
    if _FRACTION_RE.match(token):
        f = Fraction(token)
        n = f.denominator
        if n == 1:
            return linking.CyclicLinkingForm(1, 0)
        if math.gcd(f.numerator, n) != 1:
            raise UsageError(f"form {token} is degenerate")
        return linking.CyclicLinkingForm(n, f.numerator % n)
    try:
        member = catalog.parse_token(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    form = linking.reversed_link_form(member)
    if form is None:
        raise UsageError(f"linking form of the link of {member.name} is not tabulated")
    return form


def _split_descriptors(spec: str) -> list[str]:
    # Split on commas that are not inside parentheses, so species tokens
    # such as A2(1,2) survive intact.
    tokens, depth, current = [], 0, []
    for ch in spec:
        if ch == "," and depth == 0:
            tokens.append("".join(current))
            current = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        current.append(ch)
    tokens.append("".join(current))
    return [t for t in tokens if t.strip()]


def _cmd_linkform(args) -> int:
    tokens = _split_descriptors(args.sum)
    if not tokens:
        raise UsageError("--sum needs at least one descriptor")
    forms = [_parse_form_descriptor(t) for t in tokens]
    try:
        composed = linking.connected_sum_form(forms)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"composed form: ({composed})")
    if composed.is_trivial:
        print("verdict: PASS (trivial group)")
        return 0
    residue = (-composed.value) % composed.order
    required = f"(-1/{composed.order})"
    if exact.is_square_unit_mod(residue, composed.order):
        print(f"verdict: PASS ({residue} is a square unit mod {composed.order}; "
              f"form is isomorphic to {required})")
    else:
        print(f"verdict: OBSTRUCTED ({residue} is not a square unit mod "
              f"{composed.order}; form is not isomorphic to {required})")
    return 0


# --------------------------------------------------------------------------
# candidates
# --------------------------------------------------------------------------

def _cmd_candidates(args) -> int:
    configs = screening.enumerate_candidates(args.index)
    headers = ["Type", "L", "K^2", "D"]
    if args.index == 3:
        headers = ["Case"] + headers
    rows = []
    for config in configs:
        d = config.D
        d_str = exact.factor_string(int(d)) if d > 0 and d.denominator == 1 else _frac(d)
        row = [config.name, config.L, _frac(config.K2), d_str]
        if args.index == 3:
            row = [screening.index3_case(config)] + row
        rows.append(row)
    print(f"# Candidate configurations, index {args.index} ({len(rows)} rows)")
    print()
    print(_markdown_table(headers, rows))
    return 0


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhpp",
        description="Exact screening of quotient-singularity configurations "
                    "on rational homology projective planes.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="run the full screening pipeline for one index")
    p.add_argument("--index", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--budget", type=int, default=lattice.DEFAULT_BUDGET,
                   help="extension budget for embedding searches")
    p.add_argument("--jobs", type=int, default=1,
                   help="reserved; the pipeline currently runs single-threaded")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("table", help="print one of the D tables")
    p.add_argument("--id", choices=TABLE_IDS, required=True)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("embed", help="enumerate lattice embedding orbits")
    p.add_argument("--graphs", required=True,
                   help="semicolon-separated chains of comma-separated "
                        "negative weights, e.g. '-2,-10,-2' or '-2,-2,-2;-9'")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--budget", type=int, default=lattice.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("dinv", help="lens-space d-invariants")
    p.add_argument("--lens", required=True, help="'p,q' for the lens space L(p,q)")
    p.add_argument("--spin", action="store_true",
                   help="restrict to the spin structures")
    p.set_defaults(func=_cmd_dinv)

    p = sub.add_parser("linkform", help="compose linking forms and test the boundary class")
    p.add_argument("--sum", required=True,
                   help="comma-separated forms 'c/n' or singularity tokens "
                        "(token X contributes the form of the reversed link of X)")
    p.set_defaults(func=_cmd_linkform)

    p = sub.add_parser("candidates", help="list enumerated candidate configurations")
    p.add_argument("--index", type=int, choices=(1, 2, 3), required=True)
    p.set_defaults(func=_cmd_candidates)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # Values of these flags legitimately start with '-'; fold them into
    # '--flag=value' form so argparse does not mistake them for options.
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in ("--graphs", "--sum") and i + 1 < len(argv):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _join_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except lattice.ResourceBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Every command prints one JSON document on stdout (or a plain-text
rendering with ``--pretty``).  Exit codes:

    0  success
    1  ``verify`` found a failing check
    2  the input could not be parsed
    3  the requested invariant does not apply to this diagram
    4  the crossing budget was exceeded
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .diagram import braid_to_pd, canonical_genus, classify, derive_signs, is_connected, parse_pd
from .document import SCHEMA_VERSION, ReportDocument, diagram_fields, polynomial, report_fields, table_rows
from .errors import (
    ComplexityBudgetExceeded,
    DisconnectedDiagram,
    MalformedToken,
    NotApplicable,
    OrientationConflict,
    ParseError,
)
from .fixtures import catalog, expected_block
from .homology import DEFAULT_MAX_CROSSINGS, build_complex, d_squared_failures, grading_failures, homology_dims, normalize
from .invariants import (
    DEFAULT_ORACLE_MAX,
    Verdict,
    check_jones_match,
    genus_from_diagram,
    jones_from_kh,
    jones_oracle,
    rasmussen_from_diagram,
    report,
)

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_NOT_APPLICABLE, EXIT_BUDGET = range(5)

# exhaustive matrix-product checks get expensive quickly
D_SQUARED_MAX = 10

COMMANDS = ("classify", "homology", "jones", "rasmussen", "verify", "fixtures")


def build_parser():
    p = argparse.ArgumentParser(prog="khoval", description="Rational Khovanov homology of link diagrams.")
    p.add_argument("--version", action="version", version=f"khoval {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", help="file holding PD text (# starts a comment)")
    p.add_argument("--pd", help='PD text, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"')
    p.add_argument("--braid", help='braid word as integers, e.g. "1 1 -1"')
    p.add_argument("--strands", type=int)
    p.add_argument("--fixtures", action="store_true", help="verify: run the embedded fixture catalog")
    p.add_argument("--raw", action="store_true", help="homology: also emit the unnormalized table")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
    p.add_argument("--oracle-max", type=int, default=DEFAULT_ORACLE_MAX)
    p.add_argument("--threads", type=int, default=None, help="default: available parallelism")
    return p


class UsageError(Exception):
    pass


def read_input(args):
    """(diagram, echo) from exactly one of --pd, --braid/--strands or FILE."""
    given = [x for x in (args.pd, args.braid, args.file) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --pd, --braid or FILE")
    if args.pd is not None:
        return derive_signs(parse_pd(args.pd)), {"pd": args.pd}
    if args.file is not None:
        text = Path(args.file).read_text()
        return derive_signs(parse_pd(text)), {"file": args.file, "text": text}
    if args.strands is None:
        raise UsageError("--braid needs --strands")
    word = []
    for tok in args.braid.replace(",", " ").split():
        try:
            word.append(int(tok))
        except ValueError:
            raise MalformedToken(tok, "braid generators are nonzero integers") from None
    return braid_to_pd(word, args.strands), {"braid": word, "strands": args.strands}


def _document(command, echo, args, body, timing):
    data = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": echo,
        "meta": {
            "timing_s": {k: round(v, 6) for k, v in timing.items()},
            "budget": {
                "max_crossings": args.max_crossings,
                "oracle_max": args.oracle_max,
                "threads": args.threads or os.cpu_count() or 1,
            },
        },
    }
    data.update(body)
    return ReportDocument(data)


def _diagram_body(d):
    cls = classify(d)
    connected = is_connected(d)
    try:
        g3 = canonical_genus(d)
    except DisconnectedDiagram:
        g3 = None
    body = {"diagram": diagram_fields(d, cls, connected, g3)}
    if g3 is None:
        body["notes"] = ["diagram is not connected: canonical genus not defined here"]
    return body


def cmd_classify(d, args):
    t0 = time.perf_counter()
    body = _diagram_body(d)
    return body, {"classify": time.perf_counter() - t0}, EXIT_OK


def cmd_homology(d, args):
    t0 = time.perf_counter()
    c = build_complex(d, args.max_crossings)
    t1 = time.perf_counter()
    raw = homology_dims(c, args.threads)
    t2 = time.perf_counter()
    body = _diagram_body(d)
    body["homology"] = table_rows(normalize(raw, d.n_plus, d.n_minus))
    if args.raw:
        body["homology_raw"] = table_rows(raw)
    return body, {"build": t1 - t0, "ranks": t2 - t1}, EXIT_OK


def cmd_jones(d, args):
    t0 = time.perf_counter()
    body = _diagram_body(d)
    notes = body.setdefault("notes", [])
    oracle = kh_poly = None
    try:
        oracle = jones_oracle(d, args.oracle_max)
    except ComplexityBudgetExceeded as exc:
        notes.append(f"oracle skipped: {exc}")
    t1 = time.perf_counter()
    checks = []
    try:
        c = build_complex(d, args.max_crossings)
        table = normalize(homology_dims(c, args.threads), d.n_plus, d.n_minus)
        kh_poly = jones_from_kh(table, d.component_count)
        if oracle is not None:
            checks.append(check_jones_match(table, oracle))
    except ComplexityBudgetExceeded as exc:
        notes.append(f"homology skipped: {exc}")
    t2 = time.perf_counter()
    if oracle is None and kh_poly is None:
        raise ComplexityBudgetExceeded("; ".join(notes))
    body["jones_oracle"] = polynomial(oracle)
    body["jones_kh"] = polynomial(kh_poly)
    body["checks"] = [_verdict(v) for v in checks]
    status = EXIT_OK if all(v.passed for v in checks) else EXIT_FAILED
    return body, {"oracle": t1 - t0, "homology": t2 - t1}, status


def cmd_rasmussen(d, args):
    t0 = time.perf_counter()
    s = rasmussen_from_diagram(d)  # raises NotApplicable
    g3 = genus_from_diagram(d)
    cls = classify(d)
    body = _diagram_body(d)
    body.update({
        "s": s,
        "g3_L": str(g3),
        "g4": str(s // 2),
        "theorem31_case": f"Case{cls.case}" if cls.case else "NotApplicable",
        "s_formula": "s = 2 g3(D) - 2" if cls.case == 2 else "s = 2 g3(D)",
        "notes": ["connected diagram taken as a proxy for a non-split link"],
    })
    return body, {"rasmussen": time.perf_counter() - t0}, EXIT_OK


def _verdict(v):
    return {"name": v.name, "passed": v.passed, "detail": v.detail}


def complex_checks(d, max_crossings):
    """d^2 = 0 and grading preservation, for diagrams small enough to check exhaustively."""
    if d.n > min(max_crossings, D_SQUARED_MAX):
        return []
    c = build_complex(d, max_crossings)
    sq = d_squared_failures(c)
    gr = grading_failures(c)
    return [
        Verdict("d_squared_zero", not sq, f"failing bidegrees: {sq}" if sq else f"{len(c.dims)} bidegrees"),
        Verdict("grading_preserved", not gr, f"failing bidegrees: {gr}" if gr else ""),
    ]


def verify_diagram(d, args, expected=None):
    """Full report plus complex checks; returns (report, document fields, verdicts)."""
    rep = report(d, max_crossings=args.max_crossings, oracle_max=args.oracle_max, threads=args.threads)
    if rep.homology is None:
        raise ComplexityBudgetExceeded(f"{d.n} crossings exceeds the cap of {args.max_crossings}")
    checks = complex_checks(d, args.max_crossings) + list(rep.checks)
    if expected is not None:
        got = expected_block(rep)
        for key in sorted(expected):
            ok = got.get(key) == expected[key]
            detail = "" if ok else f"expected {expected[key]!r}, got {got.get(key)!r}"
            checks.append(Verdict(f"frozen_{key}", ok, detail))
    fields = report_fields(rep)
    fields["checks"] = [_verdict(v) for v in checks]
    return rep, fields, checks


def cmd_verify(d, args):
    t0 = time.perf_counter()
    body = _diagram_body(d)
    rep, fields, checks = verify_diagram(d, args)
    body.update(fields)
    body["passed"] = all(v.passed for v in checks)
    return body, {"verify": time.perf_counter() - t0}, EXIT_OK if body["passed"] else EXIT_FAILED


def cmd_verify_fixtures(args):
    t0 = time.perf_counter()
    results = []
    for fx in catalog():
        d = fx.diagram()
        _, _, checks = verify_diagram(d, args, fx.expected)
        results.append({
            "id": fx.id,
            "source": fx.source,
            "crossings": d.n,
            "passed": all(v.passed for v in checks),
            "checks": [_verdict(v) for v in checks],
        })
    passed = all(r["passed"] for r in results)
    body = {
        "fixtures": results,
        "passed": passed,
        "summary": {"total": len(results), "failed": sum(not r["passed"] for r in results)},
    }
    return body, {"verify": time.perf_counter() - t0}, EXIT_OK if passed else EXIT_FAILED


def cmd_fixtures(args):
    rows = [
        {"id": fx.id, "source": fx.source, "expected": fx.expected}
        for fx in catalog()
    ]
    return {"fixtures": rows}, {}, EXIT_OK


# ---------------------------------------------------------------- pretty output


def _table_grid(rows):
    if not rows:
        return "  (zero)"
    iset = sorted({r["i"] for r in rows})
    jset = sorted({r["j"] for r in rows}, reverse=True)
    cell = {(r["i"], r["j"]): str(r["dim"]) for r in rows}
    width = max(3, max(len(str(x)) for x in iset + jset))
    head = "j\\i".rjust(width) + " " + " ".join(str(i).rjust(width) for i in iset)
    lines = [head]
    for j in jset:
        lines.append(str(j).rjust(width) + " " + " ".join(cell.get((i, j), ".").rjust(width) for i in iset))
    return "\n".join(lines)


def render_pretty(doc):
    data = doc.data
    out = []
    if "fixtures" in data and data["command"] == "fixtures":
        for row in data["fixtures"]:
            out.append(f"{row['id']:<16} {row['source']}")
        return "\n".join(out)
    if "fixtures" in data:
        for row in data["fixtures"]:
            failed = [c["name"] for c in row["checks"] if not c["passed"]]
            status = "PASS" if row["passed"] else "FAIL " + ",".join(failed)
            out.append(f"{row['id']:<24} n={row['crossings']:<3} {len(row['checks']):>2} checks  {status}")
        s = data["summary"]
        out.append(f"{s['total'] - s['failed']}/{s['total']} fixtures passed")
        return "\n".join(out)
    dg = data["diagram"]
    out.append(f"diagram      {dg['pd'] or '(empty)'}")
    out.append(f"class        {dg['class_tag']}  n+={dg['n_plus']} n-={dg['n_minus']}  components={dg['components']}")
    out.append(f"seifert      s={dg['seifert_circles']}  g3(D)={dg['g3_D']}")
    for key in ("theorem31_case", "s", "g3_L", "g4", "s_formula"):
        if data.get(key) is not None:
            out.append(f"{key:<12} {data[key]}")
    for key in ("jones_kh", "jones_oracle"):
        if data.get(key):
            out.append(f"{key:<12} {data[key]['text']}")
    if data.get("homology") is not None:
        out.append("Kh^{i,j}:")
        out.append(_table_grid(data["homology"]))
    if data.get("homology_raw") is not None:
        out.append("H^{i,j} (unnormalized):")
        out.append(_table_grid(data["homology_raw"]))
    for c in data.get("checks", []):
        out.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']:<24} {c['detail']}")
    for note in data.get("notes", []):
        out.append(f"note: {note}")
    return "\n".join(out)


# ---------------------------------------------------------------- entry point


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            echo, (body, timing, status) = {}, cmd_fixtures(args)
        elif args.command == "verify" and args.fixtures:
            echo, (body, timing, status) = {"fixtures": True}, cmd_verify_fixtures(args)
        else:
            d, echo = read_input(args)
            handler = {
                "classify": cmd_classify,
                "homology": cmd_homology,
                "jones": cmd_jones,
                "rasmussen": cmd_rasmussen,
                "verify": cmd_verify,
            }[args.command]
            body, timing, status = handler(d, args)
    except (ParseError, OrientationConflict, UsageError, OSError) as exc:
        print(f"khoval: error: {exc}", file=stderr)
        return EXIT_PARSE
    except NotApplicable as exc:
        print(f"khoval: not applicable: {exc}", file=stderr)
        return EXIT_NOT_APPLICABLE
    except ComplexityBudgetExceeded as exc:
        print(f"khoval: budget exceeded: {exc} (raise --max-crossings / --oracle-max)", file=stderr)
        return EXIT_BUDGET
    doc = _document(args.command, echo, args, body, timing)
    stdout.write(render_pretty(doc) + "\n" if args.pretty else doc.to_json())
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

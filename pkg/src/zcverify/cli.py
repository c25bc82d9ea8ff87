"""Batch command-line interface.

Subcommands: `build` (group file -> canonical table + structure report),
`corpus` (emit the manifest for the default corpus), `audit` (HeLP filter
audit of one group), `lemmas` (the verdict ledger over a corpus manifest).

Exit codes: 0 success, 1 violation found, 2 input error, 3 budget exceeded.
Reports are JSON documents with a schema_version field; a human summary goes
to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .constructions import build_corpus, corpus_from_manifest, corpus_manifest, entry_from_record
from .groupfile import ParseError, format_cayley, load_group
from .groups import CapExceededError, GroupError, structure_report
from .help_engine import EnumerationBudgetError, DEFAULT_BUDGET, zc_audit
from .lemmas import run_lemma_suite
from .numutil import divisors

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    try:
        G = load_group(args.input)
    except (ParseError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = structure_report(G)
    doc = {
        "schema_version": 1,
        "order": G.order,
        "exponent": rep.exponent,
        "is_abelian": rep.is_abelian,
        "is_nilpotent": rep.is_nilpotent,
        "is_hamiltonian": rep.is_hamiltonian,
        "center_order": rep.center.order,
        "derived_order": rep.derived_subgroup.order,
        "socle_order": rep.socle.order,
        "sylow_orders": {str(p): P.order for p, P in rep.sylow.items()},
        "class_sizes": sorted(len(c) for c in G.classes()),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_cayley(G))
    _write_json(doc, args.report)
    return EXIT_OK


def _audit_one_order(payload):
    table, m, bound, characters, budget = payload
    from .groups import FiniteGroup

    G = FiniteGroup(table, validate=False)
    rep = zc_audit(G, [m], bound=bound, characters=characters, budget=budget)
    return rep.to_record()["orders"][0]


def cmd_audit(args) -> int:
    try:
        G = load_group(args.input)
    except (ParseError, GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.orders:
        try:
            orders = sorted({int(tok) for tok in args.orders.split(",")})
        except ValueError:
            print("error: --orders must be a comma-separated integer list", file=sys.stderr)
            return EXIT_INPUT
    else:
        orders = list(divisors(G.order))

    if args.workers > 1:
        table = [[int(x) for x in row] for row in G.table]
        payloads = [(table, m, args.bound, args.characters, args.budget) for m in orders]
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            order_records = list(pool.map(_audit_one_order, payloads))
        order_records.sort(key=lambda r: r["m"])
        doc = {
            "schema_version": 1,
            "group_order": G.order,
            "bound": args.bound,
            "characters": args.characters,
            "orders": order_records,
        }
    else:
        rep = zc_audit(G, orders, bound=args.bound, characters=args.characters, budget=args.budget)
        doc = rep.to_record()

    statuses = {o["m"]: o["status"] for o in doc["orders"]}
    for m in sorted(statuses):
        line = next(o for o in doc["orders"] if o["m"] == m)
        print(
            f"order {m}: {line['status']} "
            f"(chains={line['chains']}, survivors={line['survivors']}, "
            f"negative={line['negative_survivors']})"
        )
    _write_json(doc, args.out)
    if any(s == "budget" for s in statuses.values()):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_corpus(args) -> int:
    try:
        entries = build_corpus(args.max_order)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc = corpus_manifest(entries, args.max_order)
    print(f"corpus: {len(entries)} entries up to order {args.max_order}")
    _write_json(doc, args.out)
    return EXIT_OK


def _lemma_worker(payload):
    rec, eq41_samples = payload
    from .lemmas import _suite_for_entry

    entry = entry_from_record(rec)
    return _suite_for_entry(entry, eq41_samples=eq41_samples)


def cmd_lemmas(args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read manifest: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        records_in = manifest["entries"]
        if manifest.get("schema_version") != 1:
            raise GroupError("unsupported manifest schema")
    except (KeyError, TypeError, GroupError) as exc:
        print(f"error: malformed manifest: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.max_order:
        records_in = [r for r in records_in if r["order"] <= args.max_order]
    records_in = sorted(records_in, key=lambda r: (r["order"], r["id"]))

    try:
        if args.workers > 1:
            payloads = [(rec, args.eq41_samples) for rec in records_in]
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                per_entry = list(pool.map(_lemma_worker, payloads))
            ledger_records = [r for recs in per_entry for r in recs]
            for r in ledger_records:
                r.setdefault("elapsed_s", 0.0)
        else:
            entries = [entry_from_record(rec) for rec in records_in]
            ledger_records = run_lemma_suite(entries, eq41_samples=args.eq41_samples)
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    violations = [
        r for r in ledger_records if r["hypotheses_hold"] and r["conclusion_holds"] is False
    ]
    doc = {
        "schema_version": 1,
        "entry_count": len(records_in),
        "checks": len(ledger_records),
        "violations": len(violations),
        "records": ledger_records,
    }
    print(
        f"lemma suite: {len(records_in)} entries, {len(ledger_records)} checks, "
        f"{len(violations)} violations"
    )
    for r in violations[:10]:
        print(f"  VIOLATION {r['entry']} {r['check_id']}: {r['witnesses']}")
    _write_json(doc, args.out)
    return EXIT_VIOLATION if violations else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zcverify", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="parse a group file, emit canonical table and report")
    b.add_argument("--input", required=True, help="group definition file (perm or cayley stanza)")
    b.add_argument("--out", help="path for the canonical cayley file")
    b.add_argument("--report", help="path for the JSON structure report (default stdout)")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("corpus", help="emit the manifest of the default corpus")
    c.add_argument("--max-order", type=int, default=64)
    c.add_argument("--out", help="manifest path (default stdout)")
    c.set_defaults(func=cmd_corpus)

    a = sub.add_parser("audit", help="HeLP audit of one group")
    a.add_argument("--input", required=True, help="group definition file")
    a.add_argument("--orders", help="comma-separated unit orders (default: divisors of |G|)")
    a.add_argument("--bound", type=int, default=5)
    a.add_argument("--characters", choices=["linear", "induced", "all"], default="all")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    a.add_argument("--workers", type=int, default=1)
    a.add_argument("--out", help="JSON report path (default stdout)")
    a.set_defaults(func=cmd_audit)

    l = sub.add_parser("lemmas", help="run the lemma suite over a corpus manifest")
    l.add_argument("--input", required=True, help="corpus manifest path")
    l.add_argument("--max-order", type=int, help="restrict to entries up to this order")
    l.add_argument("--eq41-samples", type=int, default=6, dest="eq41_samples")
    l.add_argument("--workers", type=int, default=1)
    l.add_argument("--out", help="JSON ledger path (default stdout)")
    l.set_defaults(func=cmd_lemmas)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

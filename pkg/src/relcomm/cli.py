"""Command-line interface.

Subcommands: spectrum, classify, verify, scan, audit, counterexample.
Exit codes: 0 success, 1 verdict mismatch or audit violation, 2 input
errors, 3 construction or lattice cap exceeded.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import sys
import time
from pathlib import Path

from . import audits as audits_mod
from .catalog import COPRIME_PRODUCTS, builtin_catalog, resolve_named
from .classify import verify_classification
from .degrees import degree_spectrum, rat_str
from .errors import (
    GroupError,
    Inapplicable,
    LatticeCapExceeded,
    NotAGroup,
    NotCoprime,
    OrderCapExceeded,
    SpecParseError,
    SpecSchemaError,
)
from .gspec import build, parse_group_spec, serialize
from .groups import DEFAULT_ORDER_CAP
from .lattice import DEFAULT_LATTICE_CAP, cached_all_subgroups
from .report import Report, emit, from_classification

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _write_out(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_spec(args):
    if args.group is not None:
        return parse_group_spec(args.group)
    if args.specfile is None:
        raise SpecSchemaError("<args>", "provide a spec file or --group JSON")
    return parse_group_spec(Path(args.specfile).read_text())


def _spec_name(args, group):
    if args.specfile:
        return Path(args.specfile).stem
    return group.name or f"order{group.order}"


def _construction_cap(cap: int) -> int:
    return max(cap, DEFAULT_ORDER_CAP)


# -- subcommand bodies -------------------------------------------------------


def cmd_spectrum(args) -> int:
    spec = _load_spec(args)
    g = build(spec, cap=_construction_cap(args.cap))
    lat = cached_all_subgroups(g, cap=args.cap)
    spectrum = degree_spectrum(g, lat)
    name = _spec_name(args, g)
    if args.format == "json":
        obj = {
            "name": name,
            "order": g.order,
            "spectrum": [rat_str(v) for v in spectrum.values],
            "witnesses": [
                {"value": rat_str(v), "order": w.order, "elements": w.elements()}
                for v, w in zip(spectrum.values, spectrum.witnesses)],
        }
        _write_out(json.dumps(obj, separators=(", ", ": ")) + "\n", args.out)
    else:
        lines = ["value\twitnessOrder\twitnessElements"]
        for v, w in zip(spectrum.values, spectrum.witnesses):
            lines.append(f"{rat_str(v)}\t{w.order}\t"
                         f"{','.join(str(e) for e in w.elements())}")
        _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _classification_output(args) -> tuple[str, str]:
    """Serialized classification report and its verdict."""
    spec = _load_spec(args)
    g = build(spec, cap=_construction_cap(args.cap))
    lat = cached_all_subgroups(g, cap=args.cap)
    rep = verify_classification(g, lat, name=_spec_name(args, g))
    report = from_classification(rep)
    if args.format == "tsv":
        return emit([report], "tsv"), rep.verdict
    obj = report.to_obj()
    del obj["auditResults"], obj["timings"]
    obj["predicted"] = (None if rep.predicted is None else
                        [rat_str(v) for v in sorted(rep.predicted, reverse=True)])
    return json.dumps(obj, separators=(", ", ": ")) + "\n", rep.verdict


def cmd_classify(args) -> int:
    text, _ = _classification_output(args)
    _write_out(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    text, verdict = _classification_output(args)
    _write_out(text, args.out)
    return EXIT_FAIL if verdict == "Mismatch" else EXIT_OK


def _catalog_entries(args):
    if getattr(args, "catalog", None):
        entries = []
        for line in Path(args.catalog).read_text().splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            entries.append((obj["name"],
                            parse_group_spec(json.dumps(obj["spec"]))))
        return entries
    return builtin_catalog(args.max_order)


def _compute_report(name: str, spec_text: str, cap: int,
                    with_audits: bool, with_timings: bool) -> Report:
    spec = parse_group_spec(spec_text)
    timings: dict | None = {} if with_timings else None
    t0 = time.perf_counter()
    g = build(spec, cap=_construction_cap(cap), name=name)
    t1 = time.perf_counter()
    lat = cached_all_subgroups(g, cap=cap)
    t2 = time.perf_counter()
    rep = verify_classification(g, lat, name=name)
    t3 = time.perf_counter()
    audit_results = None
    if with_audits:
        chain = audits_mod.check_chain_bound(g, name=name, cap=cap)
        om = audits_mod.check_omega_bound(g, name=name, cap=cap)
        audit_results = {"chainBound": chain.holds, "omegaBound": om.holds}
    if timings is not None:
        timings["buildMs"] = round((t1 - t0) * 1000, 3)
        timings["latticeMs"] = round((t2 - t1) * 1000, 3)
        timings["classifyMs"] = round((t3 - t2) * 1000, 3)
    return from_classification(rep, audit_results, timings)


def _scan_worker(payload):
    name, spec_text, cap, with_audits, with_timings = payload
    return _compute_report(name, spec_text, cap, with_audits, with_timings)


def cmd_scan(args) -> int:
    if args.max_order > args.cap:
        raise LatticeCapExceeded(
            f"--max-order {args.max_order} exceeds the lattice cap {args.cap}")
    entries = _catalog_entries(args)
    payloads = [(name, serialize(spec), args.cap, args.audits, args.timings)
                for name, spec in entries]
    if args.threads > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.threads) as ex:
            reports = list(ex.map(_scan_worker, payloads, chunksize=4))
    else:
        reports = [_scan_worker(p) for p in payloads]
    reports.sort(key=lambda r: r.name)
    _write_out(emit(reports, args.format), args.out)
    if args.figures:
        from .figures import render_scan_figures
        render_scan_figures(reports, args.figures)
    bad = [r for r in reports if r.verdict == "Mismatch"
           or (r.audit_results and not all(r.audit_results.values()))]
    return EXIT_FAIL if bad else EXIT_OK


def _audit_records(args):
    checks = ([args.check] if args.check != "all" else
              ["chain", "omega", "prime-power", "distinct-prime", "product"])
    records = []
    if any(c in checks for c in ("chain", "omega", "prime-power",
                                 "distinct-prime")):
        for name, spec in _catalog_entries(args):
            g = build(spec, cap=_construction_cap(args.cap), name=name)
            if "chain" in checks:
                records.append(audits_mod.check_chain_bound(g, name=name,
                                                            cap=args.cap))
            if "omega" in checks:
                records.append(audits_mod.check_omega_bound(g, name=name,
                                                            cap=args.cap))
            if "prime-power" in checks:
                try:
                    records.append(audits_mod.check_prime_power_orders(
                        g, name=name, cap=args.cap))
                except Inapplicable:
                    pass
            if "distinct-prime" in checks:
                records.append(audits_mod.check_distinct_prime_degrees(
                    g, name=name))
    if "product" in checks:
        records.extend(_product_records(args))
    return records


def _product_records(args):
    records = []
    if args.pairs:
        entries = _catalog_entries(args)
        built = {}
        for name, spec in entries:
            g = build(spec, cap=_construction_cap(args.cap), name=name)
            built[name] = g
        names = sorted(built)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                ga, gb = built[a], built[b]
                if ga.order * gb.order > args.max_order:
                    continue
                if math.gcd(ga.order, gb.order) != 1:
                    continue
                records.append(audits_mod.product_spectrum(ga, gb, cap=args.cap))
    else:
        for _, left, right in COPRIME_PRODUCTS:
            ga = build(resolve_named(left), cap=_construction_cap(args.cap),
                       name=left)
            gb = build(resolve_named(right), cap=_construction_cap(args.cap),
                       name=right)
            records.append(audits_mod.product_spectrum(ga, gb, cap=args.cap))
    return records


def _audit_obj(record) -> dict:
    return {
        "subject": record.subject,
        "check": record.check,
        "holds": record.holds,
        "witness": record.witness,
        "detail": record.detail,
    }


def cmd_audit(args) -> int:
    records = _audit_records(args)
    if args.format == "json":
        text = "\n".join(json.dumps(_audit_obj(r), separators=(", ", ": "))
                         for r in records) + "\n"
    else:
        lines = ["subject\tcheck\tholds"]
        lines.extend(f"{r.subject}\t{r.check}\t{r.holds}" for r in records)
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return EXIT_FAIL if any(not r.holds for r in records) else EXIT_OK


def cmd_counterexample(args) -> int:
    if args.pair == "s5s5":
        sys.stderr.write(
            "s5s5 is rejected: the product has order 14400, far past the "
            "subgroup-enumeration scale this tool supports.\n")
        return EXIT_INPUT
    if args.pair == "s4s4" and not args.allow_heavy:
        sys.stderr.write(
            "s4s4 enumerates the subgroups of a group of order 576; expect "
            "minutes of runtime. Re-run with --allow-heavy to proceed.\n")
        return EXIT_INPUT
    cap = max(args.cap, 576 if args.pair == "s4s4" else 288)
    if args.pair == "a4s4":
        h = build(resolve_named("A4"), name="A4")
        k = build(resolve_named("S4"), name="S4")
    else:
        h = build(resolve_named("S4"), name="S4")
        k = build(resolve_named("S4"), name="S4")
    size_h = len(degree_spectrum(h, cached_all_subgroups(h, cap=cap)))
    size_k = len(degree_spectrum(k, cached_all_subgroups(k, cap=cap)))
    delta = audits_mod.product_cardinality_delta(h, k, cap=cap)
    obj = {
        "pair": args.pair,
        "sizeH": size_h,
        "sizeK": size_k,
        "sizeProduct": size_h * size_k + delta,
        "delta": delta,
    }
    _write_out(json.dumps(obj, separators=(", ", ": ")) + "\n", args.out)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _add_common(sub, spec_input=False):
    if spec_input:
        sub.add_argument("specfile", nargs="?", help="path to a JSON group spec")
        sub.add_argument("--group", help="inline JSON group spec")
    sub.add_argument("--cap", type=int, default=DEFAULT_LATTICE_CAP,
                     help="lattice cap (default %(default)s)")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker pool size (default 1)")
    sub.add_argument("--format", choices=("json", "tsv"), default="json")
    sub.add_argument("--out", help="write output to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcomm",
        description="Exact relative commutativity degree spectra of finite "
                    "groups: computation, classification, audits.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("spectrum", help="print D(G) with witnesses")
    _add_common(p, spec_input=True)
    p.set_defaults(fn=cmd_spectrum)

    p = subs.add_parser("classify", help="print the classification report")
    _add_common(p, spec_input=True)
    p.set_defaults(fn=cmd_classify)

    p = subs.add_parser("verify", help="classify and check the predicted "
                                       "spectrum; exit 1 on mismatch")
    _add_common(p, spec_input=True)
    p.set_defaults(fn=cmd_verify)

    p = subs.add_parser("scan", help="sweep the catalog, emit a report stream")
    p.add_argument("--max-order", type=int, default=64)
    p.add_argument("--catalog", help="JSON-lines file of {name, spec} entries")
    p.add_argument("--audits", action="store_true",
                   help="include chain/omega audit flags per group")
    p.add_argument("--figures", help="directory for rendered figures")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (non-deterministic)")
    _add_common(p)
    p.set_defaults(fn=cmd_scan)

    p = subs.add_parser("audit", help="sweep the structural-inequality and "
                                      "product-spectrum checks")
    p.add_argument("--check", required=True,
                   choices=("chain", "omega", "product", "prime-power",
                            "distinct-prime", "all"))
    p.add_argument("--max-order", type=int, default=64)
    p.add_argument("--catalog", help="JSON-lines file of {name, spec} entries")
    p.add_argument("--pairs", action="store_true",
                   help="product check: sweep all coprime catalog pairs under "
                        "--max-order instead of the curated list")
    _add_common(p)
    p.set_defaults(fn=cmd_audit)

    p = subs.add_parser("counterexample",
                        help="product-cardinality deltas for the named pairs")
    p.add_argument("--pair", required=True, choices=("a4s4", "s4s4", "s5s5"))
    p.add_argument("--allow-heavy", action="store_true",
                   help="permit the multi-minute s4s4 computation")
    _add_common(p)
    p.set_defaults(fn=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecParseError, SpecSchemaError, NotAGroup, NotCoprime,
            FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (LatticeCapExceeded, OrderCapExceeded) as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except GroupError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

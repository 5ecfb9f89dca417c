"""Command-line interface.

Exit status: 0 on success, 1 for analysis findings (incomplete search,
failed checks, oracle mismatches), 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .algebra.childsel import ChildSelection, cs_matrix
from .algebra.matrix import is_irreducible, is_metzler
from .algebra.spectral import DEFAULT_TAU, perron_root
from .checks import full_check
from .cores import (SearchBounds, classify_cs_core, enumerate_autocatalytic_cores, enumerate_cs_cores,
                    enumerate_mas, extra_as_circuit, hardness, membership_report,
                    reversible_extension_cores, unit_stoich_classify)
from .errors import AutocatError, BoundsRequiredError, InvalidChildSelectionError, ParseError
from .formats import emit_dot, emit_json, format_network, load, rational
from .koenig import build_koenig
from .report import core_dict, document

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE = 0, 1, 2


def worker_count() -> int:
    """Workers for multi-file commands, capped by CORE_THREADS (0 or unset: one per CPU)."""
    raw = os.environ.get("CORE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("search bounds and output")
    g.add_argument("--max-circuit-len", type=int, default=None, metavar="N")
    g.add_argument("--max-superposition-depth", type=int, default=None, metavar="N")
    g.add_argument("--max-core-entities", type=int, default=None, metavar="N")
    g.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    g.add_argument("--json", dest="json_out", default=None, metavar="OUT",
                   help="write a JSON report to OUT ('-' for stdout)")
    g.add_argument("--allow-open", action="store_true",
                   help="accept inflow/outflow reactions with an empty side")
    g.add_argument("--tolerance", type=float, default=DEFAULT_TAU,
                   help="Perron root threshold for the floating-point cross-check")
    g.add_argument("--timing", action="store_true",
                   help="include wall-clock timing in JSON (output is then not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autocat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        return p

    for name, text in (("cores", "enumerate autocatalytic cores"),
                       ("cs-cores", "enumerate CS-cores"),
                       ("hard", "reversible-extension analysis of every core"),
                       ("mas", "minimal autocatalytic sets"),
                       ("analyze", "cores, CS-cores, hardness, unit classes and MAS")):
        cmd(name, text).add_argument("file")
    p = cmd("classify", "membership flags of one child-selection")
    p.add_argument("file")
    p.add_argument("--kappa", required=True, help="child-selection as x1=r1,x2=r2,...")
    p = cmd("graph", "export the König graph as DOT")
    p.add_argument("file")
    p.add_argument("--dot", required=True, metavar="OUT")
    p = cmd("check", "run the invariant suite on a file or on every .rn file of a directory")
    p.add_argument("file")
    p.add_argument("--witness-paper", action="store_true",
                   help="also verify witness directives recorded in the files")
    p.add_argument("--no-oracle", action="store_true", help="skip the brute-force comparison")
    p.add_argument("-v", "--verbose", action="store_true", help="print passing checks too")
    p = cmd("oracle", "compare the search against brute force on a seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--unit", action="store_true", help="unit stoichiometry corpus")
    p.add_argument("--out", default=None, metavar="DIR", help="also write the corpus as .rn files")
    return parser


def _bounds(args) -> SearchBounds:
    return SearchBounds(args.max_core_entities, args.max_circuit_len,
                        args.max_superposition_depth, args.time_budget)


def _write(target: str, text: str) -> None:
    if target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


class _Output:
    """Collects human-readable lines; suppressed when JSON goes to stdout."""

    def __init__(self, args):
        self.quiet = getattr(args, "json_out", None) == "-"
        self.lines: list[str] = []

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if not self.quiet and self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _core_lines(out, cores, heading):
    out(f"{heading}: {len(cores)}")
    for c in cores:
        rn = c.network
        kappa = c.kappa.describe(rn)
        witness = ",".join(rational(v) for v in c.witness)
        extra = []
        if c.is_hard is not None:
            extra.append("hard" if c.is_hard else "not hard")
        if c.unit_class:
            extra.append(c.unit_class)
        tail = f" [{'; '.join(extra)}]" if extra else ""
        out(f"  {c.describe()} kappa: {kappa} kind: {c.kind.value} witness: ({witness}){tail}")


def _annotate(rn, cores, bounds):
    for c in cores:
        c.is_hard = hardness(rn, c, bounds).by_extension
        if rn.is_unit_stoichiometry(c.sub):
            try:
                c.unit_class = unit_stoich_classify(rn, c).unit_class.value
            except AutocatError:
                c.unit_class = None


def _run_single(args, parsed, out) -> tuple[int, dict | None]:
    rn = parsed.network
    bounds = _bounds(args)
    for w in parsed.warnings:
        print(f"warning: {w}", file=sys.stderr)
    start = time.perf_counter()
    cmd = args.command
    status = EXIT_OK
    if cmd == "cores":
        cores = enumerate_autocatalytic_cores(rn, bounds)
        _annotate(rn, cores, bounds)
        _core_lines(out, cores, "autocatalytic cores")
        doc = document(rn, cmd, bounds, cores.complete, cores=cores)
        complete = cores.complete
    elif cmd == "cs-cores":
        cs = enumerate_cs_cores(rn, bounds)
        _core_lines(out, cs, "CS-cores")
        doc = document(rn, cmd, bounds, cs.complete, cs_cores=cs)
        complete = cs.complete
    elif cmd == "mas":
        cores = enumerate_autocatalytic_cores(rn, bounds)
        mas = enumerate_mas(rn, bounds)
        out(f"minimal autocatalytic sets: {len(mas)}")
        for m in mas:
            out(f"  {{{','.join(m.reaction_names)}}} on {{{','.join(m.entity_names)}}}: "
                + "; ".join(c.describe() for c in m.cores))
        doc = document(rn, cmd, bounds, cores.complete, mas=mas)
        complete = cores.complete
    elif cmd == "hard":
        cores = enumerate_autocatalytic_cores(rn, bounds)
        rows = []
        for c in cores:
            h = hardness(rn, c, bounds)
            c.is_hard = h.by_extension
            extras = reversible_extension_cores(rn, c, bounds)
            out(f"  {c.describe()}: {'hard' if h.by_extension else 'not hard'}; "
                f"drainable circuits: {'none' if h.by_circuits else 'present'}; "
                f"extension cores: {len(extras)}")
            entry = {"core": core_dict(c), "hard": h.by_extension, "drainable_free": h.by_circuits,
                     "extension_cores": []}
            for e in extras:
                circ = extra_as_circuit(rn, c, e)
                out(f"    {e.describe()} kappa: {e.kappa.describe(e.network)} matrix: "
                    + str([[rational(v) for v in row] for row in e.matrix.rows]).replace("'", "")
                    + (f" reverses {circ.describe(rn)}" if circ else ""))
                d = core_dict(e)
                d["reversed_circuit"] = circ.describe(rn) if circ else None
                entry["extension_cores"].append(d)
            if not h.consistent:
                status = EXIT_FINDINGS
            rows.append(entry)
        doc = document(rn, cmd, bounds, cores.complete, cores=cores, hardness=rows)
        complete = cores.complete
    elif cmd == "analyze":
        cores = enumerate_autocatalytic_cores(rn, bounds)
        _annotate(rn, cores, bounds)
        cs = enumerate_cs_cores(rn, bounds)
        mas = enumerate_mas(rn, bounds)
        _core_lines(out, cores, "autocatalytic cores")
        _core_lines(out, cs, "CS-cores")
        out(f"minimal autocatalytic sets: {len(mas)}")
        for m in mas:
            out(f"  {{{','.join(m.reaction_names)}}}")
        complete = cores.complete and cs.complete
        doc = document(rn, cmd, bounds, complete, cores=cores, cs_cores=cs, mas=mas)
    elif cmd == "classify":
        pairs = []
        for item in args.kappa.split(","):
            x, sep, r = item.partition("=")
            if not sep:
                raise InvalidChildSelectionError(f"bad --kappa item {item!r}, expected entity=reaction")
            pairs.append((x.strip(), r.strip()))
        k = ChildSelection.from_names(rn, pairs)
        flags = membership_report(rn, k)
        m = cs_matrix(k, rn)
        out("S[kappa] = " + str([[rational(v) for v in row] for row in m.rows]).replace("'", ""))
        for name, value in flags.items():
            out(f"  {name}: {'yes' if value else 'no'}")
        perron = None
        if is_metzler(m) and is_irreducible(m):
            root = perron_root(m)
            perron = {"root": f"{root:.12g}", "unstable": root > args.tolerance}
            out(f"  perron root estimate: {root:.12g}")
        if flags["cs_core"]:
            out(f"  kind: {classify_cs_core(rn, k).value}")
        doc = document(rn, cmd, bounds, True,
                       classification={"kappa": {rn.entities[x]: rn.reactions[r].name for x, r in k.pairs},
                                       "matrix": [[rational(v) for v in row] for row in m.rows],
                                       "flags": flags, "perron": perron})
        complete = True
    elif cmd == "graph":
        cores = enumerate_autocatalytic_cores(rn, bounds)
        marked = set()
        for c in cores:
            marked |= {("x", x) for x in c.sub.entities} | {("r", j) for j in c.sub.reactions}
        _write(args.dot, emit_dot(build_koenig(rn), rn, highlight=marked))
        doc = document(rn, cmd, bounds, cores.complete, cores=cores)
        complete = cores.complete
    else:  # pragma: no cover - argparse restricts the choices
        raise AssertionError(cmd)
    if not complete:
        out("warning: search incomplete (a bound was reached)")
        status = EXIT_FINDINGS
    if args.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return status, doc


def _check_file(path: str, bounds: SearchBounds, allow_open: bool, witness: bool, oracle: bool):
    try:
        parsed = load(path, allow_open)
    except (OSError, ParseError) as exc:
        return path, None, str(exc)
    notes = parsed.witnesses if witness else []
    findings = full_check(parsed.network, bounds, notes, oracle=oracle)
    return path, [(f.name, f.ok, f.detail) for f in findings], None


def _run_check(args, out) -> tuple[int, dict]:
    target = Path(args.file)
    if target.is_dir():
        files = sorted(str(p) for p in target.glob("*.rn"))
    elif target.exists():
        files = [str(target)]
    else:
        raise FileNotFoundError(args.file)
    bounds = _bounds(args)
    jobs = [(f, bounds, args.allow_open, args.witness_paper, not args.no_oracle) for f in files]
    workers = min(worker_count(), max(1, len(jobs)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_file, *zip(*jobs)))
    else:
        results = [_check_file(*job) for job in jobs]
    failures = 0
    per_file = []
    usage_error = False
    for path, findings, error in results:
        name = Path(path).name
        if error is not None:
            out(f"ERROR {name}: {error}")
            usage_error = True
            per_file.append({"file": name, "error": error})
            continue
        bad = [f for f in findings if not f[1]]
        failures += len(bad)
        out(f"{'ok  ' if not bad else 'FAIL'} {name}: {len(findings) - len(bad)}/{len(findings)} checks passed")
        for fname, ok, detail in findings:
            if not ok or args.verbose or (args.witness_paper and fname.startswith("witness")):
                out(f"     {'PASS' if ok else 'FAIL'} {fname}" + (f": {detail}" if detail else ""))
        per_file.append({"file": name, "passed": len(findings) - len(bad), "failed": len(bad),
                         "findings": [{"name": n, "ok": o, "detail": d} for n, o, d in findings]})
    doc = {"schema_version": 1, "command": "check", "files": per_file, "failures": failures}
    if usage_error:
        return EXIT_USAGE, doc
    return (EXIT_FINDINGS if failures else EXIT_OK), doc


def _oracle_job(seed: int, unit: bool):
    from .oracle import OracleBounds, brute_force_cores, brute_force_cs_cores, random_network
    b = OracleBounds(max_coefficient=1 if unit else 3)
    rn = random_network(b, seed=seed)
    cores = {c.sub for c in enumerate_autocatalytic_cores(rn)}
    cs = {c.kappa.key for c in enumerate_cs_cores(rn)}
    return (seed, format_network(rn), len(cores), len(cs),
            cores == brute_force_cores(rn, b), cs == brute_force_cs_cores(rn, b))


def _run_oracle(args, out) -> tuple[int, dict]:
    seeds = list(range(args.seed, args.seed + args.count))
    workers = min(worker_count(), len(seeds)) if seeds else 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_oracle_job, seeds, [args.unit] * len(seeds), chunksize=8))
    else:
        results = [_oracle_job(s, args.unit) for s in seeds]
    mismatches = [r for r in results if not (r[4] and r[5])]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for seed, text, *_ in results:
            with open(os.path.join(args.out, f"seed_{seed:06d}.rn"), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    n_cores = sum(r[2] for r in results)
    n_cs = sum(r[3] for r in results)
    out(f"networks: {len(results)}  cores: {n_cores}  CS-cores: {n_cs}  mismatches: {len(mismatches)}")
    for seed, text, *_ in mismatches:
        out(f"  mismatch at seed {seed}:")
        out("    " + text.strip().replace("\n", "\n    "))
    doc = {"schema_version": 1, "command": "oracle", "seed": args.seed, "count": args.count,
           "unit": args.unit, "cores": n_cores, "cs_cores": n_cs,
           "mismatched_seeds": [r[0] for r in mismatches]}
    return (EXIT_FINDINGS if mismatches else EXIT_OK), doc


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args)
    try:
        if args.command == "check":
            status, doc = _run_check(args, out)
        elif args.command == "oracle":
            status, doc = _run_oracle(args, out)
        else:
            parsed = load(args.file, args.allow_open)
            status, doc = _run_single(args, parsed, out)
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename or exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, BoundsRequiredError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AutocatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    if args.json_out is not None:
        _write(args.json_out, emit_json(doc))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line entry point.

Exit codes: 0 success / verification passed, 1 a checked claim failed,
2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import __version__
from .bounds import asymptotic_average, bound_margin
from .connectivity import (
    all_pairs_report,
    global_connectivity,
    is_degree_partitioned,
    is_minimally_k_connected,
    local_vertex_connectivity,
)
from .constructions import ConstructionError, ConstructionSpec, build, label_table
from .graph import (
    Graph,
    GraphError,
    decode_graph6,
    encode_graph6,
    read_edge_list,
    to_dot,
    write_edge_list,
)
from .paths import PathCheck, assemble_full_witness, verify_psi_paths
from .search import conjecture_evidence, find_optimal
from .separators import verify_gkp_separators

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
THREADS_ENV = "AVGCONN_THREADS"

log = logging.getLogger("avgconn")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    threads: int
    seed: int
    fmt: str


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _emit(cfg: RunConfig, payload: dict, text: str, csv_text: str | None = None) -> None:
    out = getattr(cfg.args, "report", None)
    body = json.dumps(payload, indent=1, sort_keys=True, default=str) + "\n"
    if out:
        write_atomic(out, body)
        meta = {"argv": sys.argv[1:], "finished": time.strftime("%Y-%m-%dT%H:%M:%S")}
        write_atomic(str(out) + ".meta.json", json.dumps(meta, indent=1) + "\n")
    if cfg.fmt == "json":
        sys.stdout.write(body)
    elif cfg.fmt == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _range(text: str | None) -> range | None:
    if text is None:
        return None
    try:
        a, b = text.split(":")
        return range(int(a), int(b) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A:B") from None


def load_graph(path: str, fmt: str = "auto") -> Graph:
    text = Path(path).read_text()
    if fmt == "auto":
        fmt = "edgelist" if len(text.split("\n", 1)[0].split()) == 2 else "graph6"
    if fmt == "edgelist":
        return read_edge_list(text)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise GraphError(f"{path}: expected exactly one graph6 line, found {len(lines)}")
    return decode_graph6(lines[0])


def _graph_from_args(a: argparse.Namespace) -> Graph:
    if getattr(a, "infile", None):
        return load_graph(a.infile, a.input_format)
    if getattr(a, "family", None):
        return build(_spec_from_args(a))
    raise UsageError("give --in FILE or --family with its parameters")


def _spec_from_args(a: argparse.Namespace) -> ConstructionSpec:
    if a.family == "phi":
        if a.r is None:
            raise UsageError("phi needs --r")
        return ConstructionSpec.phi(a.k, a.r)
    if a.p is None:
        raise UsageError(f"{a.family} needs --p")
    return ConstructionSpec(a.family, a.k, a.p, allow_any_k=getattr(a, "allow_any_k", False))


# commands -------------------------------------------------------------------


def cmd_construct(cfg: RunConfig) -> int:
    a = cfg.args
    spec = _spec_from_args(a)
    g = build(spec)
    if a.format == "graph6":
        text = encode_graph6(g) + "\n"
    elif a.format == "edgelist":
        text = write_edge_list(g)
    else:
        text = to_dot(g, spec.family)
    sidecar = {"spec": spec.to_dict(), "n": g.n, "m": g.m, "labels": label_table(g)}
    if a.out:
        write_atomic(a.out, text)
        write_atomic(a.sidecar or a.out + ".json", json.dumps(sidecar, indent=1) + "\n")
    else:
        sys.stdout.write(text)
        if a.sidecar:
            write_atomic(a.sidecar, json.dumps(sidecar, indent=1) + "\n")
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    a = cfg.args
    g = _graph_from_args(a)
    rep = all_pairs_report(g, a.mode, cfg.threads)
    if a.csv:
        write_atomic(a.csv, rep.to_csv())
    payload = rep.to_dict()
    text = (
        f"n={g.n} m={g.m} mode={a.mode} global={rep.minimum} "
        f"total={rep.total} average={rep.average} (~{float(rep.average):.6f})"
    )
    _emit(cfg, payload, text, rep.to_csv())
    return EXIT_OK


def cmd_verify_minimal(cfg: RunConfig) -> int:
    a = cfg.args
    g = _graph_from_args(a)
    res = is_minimally_k_connected(g, a.k, a.mode, method=a.method)
    payload = {
        "check": "minimal",
        "k": a.k,
        "mode": a.mode,
        "passed": res.minimal,
        "global": res.global_value,
        "witness_edge": list(res.edge) if res.edge else None,
    }
    why = "" if res.minimal else (
        f" (global={res.global_value})" if res.edge is None else f" (edge {res.edge} not critical)"
    )
    _emit(cfg, payload, f"minimally {a.k}-{a.mode}-connected: {'PASS' if res.minimal else 'FAIL'}{why}")
    return EXIT_OK if res.minimal else EXIT_FAIL


def cmd_verify_separators(cfg: RunConfig) -> int:
    a = cfg.args
    ConstructionSpec("gkp", a.k, a.p)
    rows, ok = verify_gkp_separators(a.k, a.p, a.max_n)
    payload = {
        "check": "separators",
        "k": a.k,
        "p": a.p,
        "passed": ok,
        "rows": [r.__dict__ for r in rows],
    }
    lines = [f"{'pair':<14}{'count':>6}  sizes     kinds"]
    for r in rows:
        lines.append(
            f"{r.pair[0] + '-' + r.pair[1]:<14}{r.count:>6}  {str(r.sizes):<9} {r.kinds}"
            f"  {'PASS' if r.passed else 'FAIL'}"
        )
    lines.append(f"G_{{{a.k},{a.p}}} separators: {'PASS' if ok else 'FAIL'}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_paths(cfg: RunConfig) -> int:
    a = cfg.args
    if a.k == 5 and a.tier != "long":
        raise UsageError("k=5 path checks run only with --tier long")
    s = a.k**3 - a.k**2
    t_range, r_range = _range(a.t_range), _range(a.r_range)
    samples = [int(x) for x in a.t_samples.split(",")] if a.t_samples else None
    if t_range is None and r_range is None and samples is None:
        checks = verify_psi_paths(a.k, a.p)
    else:
        small = [t for t in (t_range or []) if t < 2 * s]
        big = [t for t in (t_range or []) if t >= 2 * s] + (samples or [])
        checks = verify_psi_paths(a.k, a.p, small, r_range or [], big)
    if a.witness_dir:
        _dump_witnesses(a, checks)
    ok = bool(checks) and all(c.passed for c in checks)
    payload = {
        "check": "paths",
        "k": a.k,
        "p": a.p or 16 * s,
        "passed": ok,
        "checks": [c.__dict__ for c in checks],
    }
    by_kind: dict[str, list[PathCheck]] = {}
    for c in checks:
        by_kind.setdefault(c.kind, []).append(c)
    lines = [
        f"{kind:<8} {len(cs):>4} checks  {sum(c.passed for c in cs):>4} pass"
        + "".join(f"\n  FAIL {kind} {c.param}: {c.detail}" for c in cs if not c.passed)
        for kind, cs in by_kind.items()
    ]
    lines.append(f"Psi_{{{a.k}}} path witnesses: {'PASS' if ok else 'FAIL'}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _dump_witnesses(a: argparse.Namespace, checks: list[PathCheck]) -> None:
    from .constructions import build_psi

    s = a.k**3 - a.k**2
    p = a.p or 16 * s
    spec = ConstructionSpec("psi", a.k, p, allow_any_k=True)
    g = build_psi(a.k, p, allow_any_k=True)
    for c in checks:
        if c.kind in ("small-t", "full") and c.passed:
            system = assemble_full_witness(g, spec, c.param)
            write_atomic(Path(a.witness_dir) / f"psi_k{a.k}_p{p}_t{c.param}.json", system.to_json(g))


def cmd_verify_bound(cfg: RunConfig) -> int:
    a = cfg.args
    g = _graph_from_args(a)
    k = a.k
    if g.min_degree() < k or not is_degree_partitioned(g, k):
        raise UsageError(f"input is not degree-partitioned for k={k}; the bound does not apply")
    if not is_minimally_k_connected(g, k, a.mode, method="degree"):
        raise UsageError(f"input is not minimally {k}-{a.mode}-connected; the bound does not apply")
    if g.n < 2 * k + 1:
        raise UsageError("bound needs n >= 2k+1")
    value = all_pairs_report(g, a.mode, cfg.threads).average
    m = bound_margin(value, k, g.n)
    payload = {
        "check": "bound",
        "k": k,
        "n": g.n,
        "mode": a.mode,
        "passed": m["holds"],
        "value": _frac(value),
        "bound": _frac(m["bound"]),
        "margin": _frac(m["margin"]),
        "limit": _frac(m["limit"]),
    }
    text = (
        f"value={value} bound={m['bound']} margin={m['margin']} limit={m['limit']} "
        f"{'PASS' if m['holds'] else 'FAIL'}"
    )
    _emit(cfg, payload, text)
    return EXIT_OK if m["holds"] else EXIT_FAIL


def cmd_verify_formula(cfg: RunConfig) -> int:
    """Exact average of Gamma (edge) or Psi (vertex) against (9p-3)k/(8p-2)."""
    a = cfg.args
    spec = _spec_from_args(a)
    if spec.family not in ("gamma", "psi"):
        raise UsageError("formula check applies to gamma or psi")
    g = build(spec)
    mode = "edge" if spec.family == "gamma" else "vertex"
    value = all_pairs_report(g, mode, cfg.threads, shortcut=True).average
    want = asymptotic_average(spec.k, spec.p)
    ok = value == want
    payload = {"check": "formula", **spec.to_dict(), "mode": mode, "passed": ok,
               "value": _frac(value), "formula": _frac(want)}
    _emit(cfg, payload, f"{spec.family}: average={value} formula={want} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_phi(cfg: RunConfig) -> int:
    a = cfg.args
    spec = ConstructionSpec.phi(a.k, a.r)
    g = build(spec)
    p = spec.p
    kappa = global_connectivity(g, "vertex")
    pairs = list(combinations(range(p), 2))
    if a.tier != "long":
        pairs = sorted(random.Random(cfg.seed).sample(pairs, min(a.pairs, len(pairs))))
    bad = [(u, v) for u, v in pairs if local_vertex_connectivity(g, u, v) != 3 * a.k]
    ok = kappa == a.k and not bad
    payload = {"check": "phi", **spec.to_dict(), "passed": ok, "global": kappa,
               "pairs_checked": len(pairs), "failures": [list(x) for x in bad[:50]]}
    _emit(cfg, payload, f"Phi_{{{a.k},{p}}}: kappa={kappa}, {len(pairs)} W-pairs, "
          f"{len(bad)} below {3 * a.k}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search_optimal(cfg: RunConfig) -> int:
    a = cfg.args
    source = a.infile or "native"
    rep = find_optimal(a.n, a.k, a.mode, source, cfg.threads)
    if a.optima:
        write_atomic(a.optima, "".join(g6 + "\n" for g6 in rep.optima))
    text = (
        f"n={a.n} k={a.k} mode={a.mode}: {rep.count_candidates} candidates, "
        f"{rep.count_minimal} minimal, best={rep.best_value}, optima={rep.optima}, "
        f"degree-partitioned={rep.all_optima_degree_partitioned}"
    )
    _emit(cfg, rep.to_dict(), text)
    return EXIT_OK


def cmd_search_evidence(cfg: RunConfig) -> int:
    a = cfg.args
    ev = conjecture_evidence(a.k, _range(a.n_range), a.mode, a.infile or "native")
    lines = [f"n={r.n}: best={r.best_value} optima={r.optima} dp={r.all_optima_degree_partitioned}"
             for r in ev.reports]
    lines.append(f"verdict: {ev.verdict}" + (f" ({ev.counterexample})" if ev.counterexample else ""))
    _emit(cfg, ev.to_dict(), "\n".join(lines))
    return EXIT_OK if ev.verdict == "consistent" else EXIT_FAIL


# parser ---------------------------------------------------------------------


def _add_graph_input(p: argparse.ArgumentParser, families: bool = True) -> None:
    p.add_argument("--in", dest="infile", help="graph6 line or 'n m' edge list file")
    p.add_argument("--input-format", choices=["auto", "graph6", "edgelist"], default="auto")
    if families:
        _add_family(p, required=False)


def _add_family(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", choices=["gkp", "gamma", "psi", "phi"], required=required)
    if not any(act.dest == "k" for act in p._actions):
        p.add_argument("--k", type=int, required=required)
    p.add_argument("--p", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--allow-any-k", action="store_true")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None, help=f"worker count (0 = auto; env {THREADS_ENV})")
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--output", dest="fmt", choices=["text", "json", "csv"], default="text")
    p.add_argument("--report", help="write the JSON report here")


def _mode(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=["vertex", "edge"], default="vertex")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="avgconn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a construction graph")
    _add_family(p)
    p.add_argument("--format", choices=["graph6", "edgelist", "dot"], default="graph6")
    p.add_argument("--out", help="graph file; a JSON sidecar is written next to it")
    p.add_argument("--sidecar", help="explicit sidecar path")
    p.set_defaults(func=cmd_construct)
    _common(p)

    p = sub.add_parser("analyze", help="all-pairs connectivity report")
    _add_graph_input(p)
    _mode(p)
    p.add_argument("--csv", help="write the pair table as CSV")
    p.set_defaults(func=cmd_analyze)
    _common(p)

    verify = sub.add_parser("verify", help="verification suites").add_subparsers(
        dest="check", required=True
    )
    p = verify.add_parser("minimal")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["safe", "degree", "endpoint"], default="safe")
    _add_graph_input(p)
    _mode(p)
    p.set_defaults(func=cmd_verify_minimal)
    _common(p)

    p = verify.add_parser("separators")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-n", type=int, default=16)
    p.set_defaults(func=cmd_verify_separators)
    _common(p)

    p = verify.add_parser("paths")
    p.add_argument("--k", type=int, required=True, choices=[3, 4, 5])
    p.add_argument("--p", type=int, help="order parameter (default 16 s)")
    p.add_argument("--t-range", help="inclusive A:B; t < 2s runs the direct check, else the full witness")
    p.add_argument("--r-range", help="inclusive A:B of P-collection offsets")
    p.add_argument("--t-samples", help="comma-separated t values for R/Q/full checks")
    p.add_argument("--tier", choices=["default", "long"], default="default")
    p.add_argument("--witness-dir", help="write JSON witnesses here")
    p.set_defaults(func=cmd_verify_paths)
    _common(p)

    p = verify.add_parser("bound")
    p.add_argument("--k", type=int, required=True)
    _add_graph_input(p)
    _mode(p)
    p.set_defaults(func=cmd_verify_bound)
    _common(p)

    p = verify.add_parser("formula")
    _add_family(p)
    p.set_defaults(func=cmd_verify_formula)
    _common(p)

    p = verify.add_parser("phi")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--r", type=int, default=7)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--tier", choices=["default", "long"], default="default")
    p.set_defaults(func=cmd_verify_phi)
    _common(p)

    search = sub.add_parser("search", help="exhaustive optimum search").add_subparsers(
        dest="what", required=True
    )
    p = search.add_parser("optimal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _mode(p)
    p.add_argument("--source", choices=["native"], default="native")
    p.add_argument("--in", dest="infile", help="graph6 file of candidates instead of native enumeration")
    p.add_argument("--optima", help="write optimal graphs (graph6) here")
    p.set_defaults(func=cmd_search_optimal)
    _common(p)

    p = search.add_parser("evidence")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-range", required=True, help="inclusive A:B")
    _mode(p)
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_search_evidence)
    _common(p)
    return parser


def _threads(value: int | None) -> int:
    if value is None:
        value = int(os.environ.get(THREADS_ENV, "1") or 1)
    if value < 0:
        raise UsageError("--threads must be >= 0")
    return value or (os.cpu_count() or 1)


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = RunConfig(args.command, args, _threads(args.threads), args.seed, args.fmt)
        return args.func(cfg)
    except (UsageError, ConstructionError, ValueError) as exc:
        if isinstance(exc, GraphError) and getattr(args, "infile", None):
            print(f"avgconn: input error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"avgconn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"avgconn: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(dispatch())

"""Command line interface: ``repdim {repnum,embed,spectrum,verify,oracle}``.

Exit status: 0 success, 1 usage error, 2 unparsable input, 3 numerical or
internal-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from .embed import Embedding, minimal_embedding
from .errors import GraphParseError, InapplicableError, RepdimError
from .formats import looks_like_edge_list, parse_edge_list, parse_graph6
from .graph import Graph
from .oracle import brute_force_rep, verify_embedding
from .repnum import representation_number
from .spectral import ToleranceConfig, summarize

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3
SIG_DIGITS = 12
COMMANDS = ("repnum", "embed", "spectrum", "verify", "oracle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("-i", "--input", metavar="PATH", help="read the graph(s) from PATH ('-' for stdin)")
    src.add_argument("--inline", metavar="STR", help="graph given on the command line")
    common.add_argument("--format", choices=("graph6", "edgelist", "auto"), default="auto")
    common.add_argument("--out", choices=("json", "csv", "text"), default="json")
    common.add_argument("--tol-group", type=_positive_float, metavar="X")
    common.add_argument("--tol-equality", type=_positive_float, metavar="X")
    common.add_argument("--jobs", type=_positive_int, default=1, metavar="N", help="batch worker threads")

    parser = _Parser(prog="repdim", description="Minimal two-distance Euclidean representations of graphs.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    sub.add_parser("repnum", parents=[common], help="representation number and certificate")
    sub.add_parser("embed", parents=[common], help="coordinates in the minimal dimension")
    sub.add_parser("spectrum", parents=[common], help="distinct eigenvalues, multiplicities, main angles")
    p = sub.add_parser("verify", parents=[common], help="check coordinates against a graph")
    p.add_argument("--coords", metavar="PATH", required=True, help="embedding as JSON or CSV")
    p = sub.add_parser("oracle", parents=[common], help="brute-force scan over the distance ratio")
    p.add_argument("--grid", type=_positive_int, default=1000, metavar="N")
    return parser


def _clean(obj):
    """Round floats to a fixed number of significant digits for stable output."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(f"{float(obj):.{SIG_DIGITS}g}")
        return 0.0 if v == 0.0 else v
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), allow_nan=False)


def _fmt(x) -> str:
    return f"{float(x):.{SIG_DIGITS}g}"


def _read_coords(path: str) -> Embedding:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        data = data.get("embedding", data)
        pts = np.array(data["points"], dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(len(pts), 0)
        alpha = float(data.get("alpha", 1.0))
        beta = data.get("beta")
        beta = None if beta is None else float(beta)
        return Embedding(pts, alpha, beta, None if beta is None else (beta / alpha) ** 2)
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    pts = np.array([[float(x) for x in r] for r in rows], dtype=float)
    return Embedding(pts, math.nan, math.nan, None)


def _infer_distances(g: Graph, e: Embedding) -> Embedding:
    """Fill in alpha/beta from the points when the coordinates came without them."""
    if not math.isnan(e.alpha):
        return e
    d = np.sqrt(np.sum((e.points[:, None, :] - e.points[None, :, :]) ** 2, axis=-1))
    iu = np.triu_indices(g.n, 1)
    on = g.adj[iu]
    alpha = float(np.median(d[iu][on])) if on.any() else 1.0
    beta = float(np.median(d[iu][~on])) if (~on).any() else None
    return Embedding(e.points, alpha, beta, None)


class _Job:
    def __init__(self, args, cfg):
        self.args = args
        self.cfg = cfg
        self.coords = _read_coords(args.coords) if args.command == "verify" else None

    def run(self, g: Graph) -> dict:
        cmd, cfg = self.args.command, self.cfg
        if cmd == "repnum":
            return representation_number(g, cfg).to_dict()
        if cmd == "embed":
            emb, res = minimal_embedding(g, cfg)
            return {"embedding": emb.to_dict(), "repnum": res.to_dict()}
        if cmd == "spectrum":
            s = summarize(g, cfg)
            d = s.to_dict()
            d["min_gap"] = s.min_gap
            return d
        if cmd == "verify":
            e = _infer_distances(g, self.coords)
            verdict = verify_embedding(g, e)
            return {"ok": verdict.ok, "dim": e.dim, "alpha": e.alpha, "beta": e.beta, "reasons": verdict.reasons}
        if cmd == "oracle":
            return brute_force_rep(g, self.args.grid, cfg).to_dict()
        raise UsageError(f"unknown command {cmd}")


def _as_text(cmd: str, rec: dict) -> str:
    if "error" in rec:
        return f"error: {rec['error']}"
    if cmd == "repnum":
        c = rec["certificate"]
        tail = ""
        if c is not None:
            b = "search" if c["b"] is None else _fmt(c["b"])
            tail = f" via {c['side']} {c['branch']} (b={b})"
        return f"rep {rec['rep']} [{rec['case']}]{tail}"
    if cmd == "embed":
        e = rec["embedding"]
        lines = [f"dim {e['dim']} alpha {_fmt(e['alpha'])} beta {e['beta'] if e['beta'] is None else _fmt(e['beta'])}"]
        lines += [" ".join(_fmt(x) for x in p) for p in e["points"]]
        return "\n".join(lines)
    if cmd == "spectrum":
        lines = [f"{_fmt(d['tau'])} x{d['mult']} beta={_fmt(d['beta'])}" for d in rec["distinct"]]
        gap = rec["min_gap"]
        lines.append(f"min gap {'n/a' if gap is None else _fmt(gap)}")
        return "\n".join(lines)
    if cmd == "verify":
        return "PASS" if rec["ok"] else "FAIL\n" + "\n".join(rec["reasons"])
    if cmd == "oracle":
        return f"rep_oracle {rec['rep_oracle']} critical_only {rec['critical_only']}"
    return dumps(rec)


def _as_csv(cmd: str, rec: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rec = _clean(rec)
    if cmd == "embed":
        for p in rec["embedding"]["points"]:
            w.writerow(p)
    elif cmd == "spectrum":
        w.writerow(["tau", "mult", "beta"])
        for d in rec["distinct"]:
            w.writerow([d["tau"], d["mult"], d["beta"]])
    elif cmd == "repnum":
        c = rec["certificate"] or {}
        keys = ["side", "branch", "b", "m1p", "m2p", "m1p_bar", "m2p_bar"]
        w.writerow(["rep", "case"] + keys)
        w.writerow([rec["rep"], rec["case"]] + [c.get(k, "") for k in keys])
    elif cmd == "verify":
        w.writerow(["ok", "dim", "reasons"])
        w.writerow([rec["ok"], rec["dim"], "; ".join(rec["reasons"])])
    elif cmd == "oracle":
        w.writerow(["side", "kind", "b", "is_edm", "dim", "x_rank"])
        for d in rec["details"]:
            w.writerow([d["side"], d["kind"], d["b"], d["is_edm"], d["dim"], d["x_rank"]])
    return buf.getvalue().rstrip("\n")


def _error_code(exc: BaseException) -> int:
    if isinstance(exc, GraphParseError):
        return EXIT_PARSE
    if isinstance(exc, (InapplicableError, UsageError)):
        return EXIT_USAGE
    return EXIT_NUMERIC


def _load_text(args, stdin) -> str:
    if args.inline is not None:
        return args.inline.replace("\\n", "\n")
    if args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    # an interactive terminal means nothing was piped in
    isatty = getattr(stdin, "isatty", None)
    if isatty is not None and isatty():
        return ""
    return stdin.read()


def _graph_inputs(text: str, fmt: str) -> list[str]:
    """Split raw input into per-graph chunks: an edge list is one graph, graph6 is one per line."""
    if fmt == "auto":
        fmt = "edgelist" if looks_like_edge_list(text) else "graph6"
    if fmt == "edgelist":
        return [("edgelist", text)]
    return [("graph6", ln) for ln in text.splitlines() if ln.strip()]


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def usage(msg):
        parser.print_usage(stderr)
        print(f"repdim: error: {msg}", file=stderr)
        return EXIT_USAGE

    overrides = {}
    if args.tol_group is not None:
        overrides["tol_group"] = args.tol_group
    if args.tol_equality is not None:
        overrides["tol_equality"] = args.tol_equality
    try:
        cfg = ToleranceConfig(**overrides)
    except ValueError as exc:
        return usage(str(exc))

    try:
        text = _load_text(args, stdin)
    except OSError as exc:
        return usage(f"cannot read input: {exc}")
    if not text.strip():
        return usage("no graph given (use --input PATH, --inline STR or stdin)")
    chunks = _graph_inputs(text, args.format)
    if args.out == "csv" and len(chunks) > 1:
        return usage("csv output needs a single graph")

    try:
        job = _Job(args, cfg)
    except (OSError, ValueError, KeyError) as exc:
        return usage(f"cannot read coordinates: {exc}")

    def one(item):
        kind, chunk = item
        try:
            g = parse_edge_list(chunk) if kind == "edgelist" else parse_graph6(chunk)
            return job.run(g), EXIT_OK
        except (RepdimError, ValueError, ArithmeticError) as exc:
            return {"error": str(exc)}, _error_code(exc)

    if args.jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(one, chunks))
    else:
        results = [one(c) for c in chunks]

    status = EXIT_OK
    batch = len(chunks) > 1
    for lineno, (rec, code) in enumerate(results, 1):
        if code != EXIT_OK:
            print(f"repdim: input {lineno}: {rec['error']}", file=stderr)
            status = status or code
            if batch:
                rec = {"line": lineno, **rec}
            else:
                return code
        if args.out == "json":
            print(dumps(rec), file=stdout)
        elif args.out == "csv":
            print(_as_csv(args.command, rec), file=stdout)
        else:
            print(_as_text(args.command, rec), file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

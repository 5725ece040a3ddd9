"""Command-line front end.

Exit codes: 0 decision true / computation done, 1 decision false,
2 usage or input error (no decision is reported).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import isomorphism as iso
from . import metrics, sweep
from .embedding import embed, embed_any
from .graph_model import Graph, GraphFormatError, read_graph, serialize_graph
from .registration import ZERO_TOL, register

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2
COMMANDS = ("embed", "iso", "auto", "subiso", "ggd", "telo", "selfcheck")
FORMATS = ("text", "csv", "json-lines")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[Path] = field(default_factory=list)
    tolerance: float = ZERO_TOL
    restarts: int = 32
    max_iters: int = 200
    seed: int = 0
    output_format: str = "text"
    mode: str = "exact"
    max_n: int = 4

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.tolerance > 0 or not math.isfinite(self.tolerance):
            raise UsageError("--tol must be a positive number")
        if self.restarts < 1:
            raise UsageError("--restarts must be >= 1")
        if self.max_iters < 0:
            raise UsageError("--iters must be >= 0")
        if self.output_format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")
        if self.mode not in ("exact", "heuristic"):
            raise UsageError("--mode must be exact or heuristic")
        for p in self.inputs:
            if not Path(p).is_file():
                raise UsageError(f"cannot read {p}")


@dataclass
class Report:
    """Ordered fields of one result; rendered as text, CSV or JSON."""

    command: str
    fields: dict
    exit_code: int
    extra_lines: list[str] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        present = {k: v for k, v in self.fields.items() if v is not None}
        if fmt == "json-lines":
            return json.dumps({"command": self.command, **present}) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.fields.keys())
            w.writerow(_csv_cell(v) for v in self.fields.values())
            return buf.getvalue()
        lines = [f"{k}: {_text_cell(v)}" for k, v in present.items() if k != "witness"]
        w = present.get("witness")
        if isinstance(w, list):
            lines.append("witness:")
            lines += [f"{i} -> {x}" for i, x in enumerate(w)]
        elif w is not None:
            lines.append(f"witness: {w}")
        return "\n".join(lines + self.extra_lines) + "\n"


def _csv_cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return " ".join(map(str, v))
    return "" if v is None else v


def _text_cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, str) and "\n" in v:
        return "\n  " + v.rstrip("\n").replace("\n", "\n  ")
    return v


def _load(cfg: RunConfig, count: int, simple: bool = True):
    if len(cfg.inputs) != count:
        raise UsageError(f"{cfg.command} takes {count} graph file(s)")
    out = []
    for p in cfg.inputs:
        try:
            g = read_graph(p)
        except OSError as exc:
            raise UsageError(f"cannot read {p}: {exc.strerror}") from None
        except GraphFormatError as exc:
            raise UsageError(f"{p}: {exc}") from None
        if simple and not isinstance(g, Graph):
            raise UsageError(f"{p}: {cfg.command} needs a simple undirected graph")
        out.append(g)
    return out


def _iso_report(res: iso.IsoResult, command: str) -> Report:
    fields = {"decision": res.decision, "residual": _num(res.residual)}
    if not res.decision and res.reason:
        fields["reason"] = res.reason
    fields["witness"] = list(res.witness.map) if res.witness is not None else None
    return Report(command, fields, EXIT_TRUE if res.decision else EXIT_FALSE)


def _num(x: float):
    return None if x is None or (isinstance(x, float) and math.isnan(x)) else float(x)


def _cmd_embed(cfg):
    (g,) = _load(cfg, 1, simple=False)
    return embed_any(g).to_csv()


def _cmd_iso(cfg):
    g1, g2 = _load(cfg, 2)
    if cfg.mode == "exact":
        return _iso_report(iso.is_isomorphic(g1, g2, cfg.tolerance), "iso")
    if g1.n != g2.n or g1.m != g2.m:
        return _iso_report(iso.IsoResult(False, reason="size mismatch"), "iso")
    if g1.n == 0:
        return _iso_report(iso.IsoResult(True, iso.VertexMapping(()), 0.0), "iso")
    r = register(
        embed(g1).full, embed(g2).full, cfg.restarts, cfg.max_iters,
        seed=cfg.seed, stop_below=cfg.tolerance,
    )
    if r.residual > cfg.tolerance:
        res = iso.IsoResult(False, residual=r.residual, reason="no zero-residual registration found")
    else:
        vperm = r.correspondence.perm[: g1.n]
        pi = np.empty(g1.n, dtype=np.intp)
        pi[vperm] = np.arange(g1.n)
        witness = iso.VertexMapping(tuple(pi.tolist()))
        iso.verify_isomorphism(g1, g2, witness, cfg.tolerance)
        res = iso.IsoResult(True, witness, r.residual)
    return _iso_report(res, "iso")


def _cmd_auto(cfg):
    (g,) = _load(cfg, 1)
    count = iso.count_automorphisms(g, cfg.tolerance)
    nontrivial = count > 1
    return Report("auto", {"decision": nontrivial, "count": count}, EXIT_TRUE if nontrivial else EXIT_FALSE)


def _cmd_subiso(cfg):
    host, pattern = _load(cfg, 2)
    return _iso_report(iso.is_subgraph_isomorphic(host, pattern, cfg.tolerance), "subiso")


def _cmd_ggd(cfg):
    g1, g2 = _load(cfg, 2)
    try:
        r = metrics.ggd(g1, g2, cfg.mode, cfg.seed, cfg.restarts, cfg.max_iters)
    except (metrics.SizeMismatchError, metrics.ScaleError) as exc:
        raise UsageError(str(exc)) from None
    fields = {
        "distance": r.distance,
        "exact": r.exact,
        "witness_serialized": " ".join(map(str, r.optimal_mapping.map)),
        "normalized": r.normalized,
    }
    return Report("ggd", fields, EXIT_TRUE)


def _cmd_telo(cfg):
    (g,) = _load(cfg, 1)
    if cfg.mode != "exact":
        raise UsageError("telo supports --mode exact only")
    try:
        d, w = metrics.telomorph_distance(g)
    except metrics.ScaleError as exc:
        raise UsageError(str(exc)) from None
    fields = {"distance": d, "exact": True, "witness_serialized": serialize_graph(w)}
    return Report("telo", fields, EXIT_TRUE)


def _cmd_selfcheck(cfg):
    if cfg.inputs:
        raise UsageError("selfcheck takes no graph files")
    if not 0 <= cfg.max_n <= 7:
        raise UsageError("--max-n must be between 0 and 7")
    rng = np.random.default_rng(cfg.seed)
    total = sweep.SweepReport()
    for n in range(1, cfg.max_n + 1):
        pairs = sweep.exhaustive_pairs(n) if n <= 5 else sweep.random_pairs(n, 2000, rng)
        rep = sweep.run_sweep(pairs, cfg.tolerance)
        total.pairs += rep.pairs
        total.isomorphic += rep.isomorphic
        total.mismatches += rep.mismatches
    fields = {
        "decision": total.ok,
        "pairs": total.pairs,
        "isomorphic_pairs": total.isomorphic,
        "mismatches": len(total.mismatches),
    }
    extra = [sweep.describe_mismatch(*m) for m in total.mismatches[:20]]
    if len(total.mismatches) > 20:
        extra.append(f"... {len(total.mismatches) - 20} more")
    return Report("selfcheck", fields, EXIT_TRUE if total.ok else EXIT_FALSE, extra)


_DISPATCH = {
    "embed": _cmd_embed,
    "iso": _cmd_iso,
    "auto": _cmd_auto,
    "subiso": _cmd_subiso,
    "ggd": _cmd_ggd,
    "telo": _cmd_telo,
    "selfcheck": _cmd_selfcheck,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns ``(exit code, stdout text)``."""
    cfg.validate()
    out = _DISPATCH[cfg.command](cfg)
    if isinstance(out, str):
        return EXIT_TRUE, out
    return out.exit_code, out.render(cfg.output_format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=ZERO_TOL, help="zero-residual threshold")
    common.add_argument("--restarts", type=int, default=32)
    common.add_argument("--iters", type=int, default=200, help="max alternation steps per restart")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    parser = argparse.ArgumentParser(
        prog="simplexgraph",
        description="Graph isomorphism and related problems as point-set registration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("embed", parents=[common], help="dump the point cloud as CSV").add_argument("graph")
    p = sub.add_parser("iso", parents=[common], help="decide isomorphism")
    p.add_argument("graph1")
    p.add_argument("graph2")
    sub.add_parser("auto", parents=[common], help="count automorphisms").add_argument("graph")
    p = sub.add_parser("subiso", parents=[common], help="does HOST contain a copy of PATTERN")
    p.add_argument("host")
    p.add_argument("pattern")
    p = sub.add_parser("ggd", parents=[common], help="graph geometric distance")
    p.add_argument("graph1")
    p.add_argument("graph2")
    sub.add_parser("telo", parents=[common], help="telomorphic distance and witness").add_argument("graph")
    p = sub.add_parser("selfcheck", parents=[common], help="geometric vs oracle sweep")
    p.add_argument("--max-n", type=int, default=4)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    paths = [
        Path(getattr(args, k))
        for k in ("graph", "graph1", "graph2", "host", "pattern")
        if getattr(args, k, None) is not None
    ]
    cfg = RunConfig(
        command=args.command,
        inputs=paths,
        tolerance=args.tol,
        restarts=args.restarts,
        max_iters=args.iters,
        seed=args.seed,
        output_format=args.format,
        mode=args.mode,
        max_n=getattr(args, "max_n", 4),
    )
    start = time.perf_counter()
    try:
        code, text = run(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(text)
    # timing goes to stderr so stdout stays byte-identical across runs
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point ``frameforge``.

Exit codes: 0 when every requested verdict passes, 2 when a verdict fails,
1 on any error (the failing stage is named on stderr).
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
import time
import warnings

import numpy as np
from scipy.spatial import cKDTree

from . import config as cfgmod
from .activations import ActivationSpec, normalize_sigma
from .errors import FrameforgeError, MissingNodes, SchemaMismatch
from .frame import AtomIndex, WaveletExpansion, build_dictionary, eval_expansion
from .greedy import make_synthetic_target, oga, rate_bound, verify_rate
from .kernelcheck import check_kernel, default_constants
from .network import (compare_activations, eval_wbnet, expansion_hash, expansion_to_wbnet,
                      net_from_json, net_to_json)
from .quadrature import make_grid

log = logging.getLogger("frameforge")

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2
NODE_MATCH_TOL = 1e-9


class StageError(Exception):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage '{stage}' failed: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


class _Stage:
    """Context manager that names the stage in errors and records wall time."""

    def __init__(self, name: str, timings: dict):
        self.name, self.timings = name, timings

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.timings[self.name] = time.perf_counter() - self.t0
        if exc is not None and not isinstance(exc, StageError):
            raise StageError(self.name, exc) from exc
        return False


# -- file helpers -------------------------------------------------------------------------

def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        val = float(obj)
        if math.isnan(val):
            return "nan"
        if math.isinf(val):
            return "inf" if val > 0 else "-inf"
        return val
    return obj


def dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_clean(obj), fh, sort_keys=True, indent=2)
        fh.write("\n")


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                             for v in row])


def read_points_csv(path, d: int | None = None) -> tuple[list, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaMismatch(f"{path} is empty")
    header, body = rows[0], rows[1:]
    try:
        data = np.array([[float(v) for v in r] for r in body], dtype=float)
    except ValueError as err:
        raise SchemaMismatch(f"non-numeric entry in {path}: {err}") from err
    if body and data.shape[1] != len(header):
        raise SchemaMismatch(f"{path}: rows and header disagree on column count")
    return header, data.reshape(len(body), len(header))


def ingest_target_csv(path, grid):
    """Target samples aligned to the grid nodes from a CSV ``x_1..x_d,value``.

    Rows that sit on grid nodes are placed directly; scattered rows are binned
    to their nearest node (averaged) with a warning.  Nodes left without a
    value raise :class:`MissingNodes`.
    """
    d = grid.dim
    expected = [f"x_{i + 1}" for i in range(d)] + ["value"]
    header, data = read_points_csv(path)
    if [h.strip() for h in header] != expected:
        raise SchemaMismatch(f"expected columns {expected}, got {header}")
    if len(data) == 0:
        raise MissingNodes("target file has no rows")
    tree = cKDTree(grid.nodes)
    dist, idx = tree.query(data[:, :d])
    exact = dist <= NODE_MATCH_TOL * (1.0 + grid.half_width)
    if not exact.all():
        warnings.warn(f"{int((~exact).sum())} target rows are off-grid; binning to nearest nodes",
                      stacklevel=2)
    sums = np.zeros(grid.size)
    counts = np.zeros(grid.size)
    np.add.at(sums, idx, data[:, d])
    np.add.at(counts, idx, 1.0)
    missing = int((counts == 0).sum())
    if missing:
        raise MissingNodes(f"{missing} of {grid.size} grid nodes have no target value")
    if counts.max() == 1:
        out = np.empty(grid.size)
        out[idx] = data[:, d]
        return out
    return sums / counts


# -- pipeline stages ---------------------------------------------------------------------------

def build_activation(block: dict, grid=None) -> ActivationSpec:
    spec = ActivationSpec.from_dict(block)
    if block.get("normalize", True) and grid is not None:
        spec = normalize_sigma(spec, grid)
    return spec


def build_grid(cfg: dict):
    g = cfg["grid"]
    act = ActivationSpec.from_dict(cfg["activation"])
    rule = g["rule"] or ("gauss_legendre" if act.smooth else "midpoint")
    g["rule"] = rule
    return make_grid(g["d"], g["R"], g["n"], rule)


def stage_kernel(cfg: dict, spec, grid) -> dict:
    k = cfg["kernel"]
    consts = default_constants(spec.dim, c=k["c"], epsilon=k["epsilon"])
    report = check_kernel(spec, consts, grid, sample_radius=k["sample_radius"],
                          n_samples=k["n_samples"], n_decay=k["n_decay"],
                          seed=cfgmod.stage_int(cfg["seed"], "kernel") % (2**31))
    return report.to_dict() | {"certified": report.certified}


def stage_dictionary(cfg: dict, spec, grid, threads: int):
    d = cfg["dictionary"]
    return build_dictionary(spec, d["k_min"], d["k_max"], d["domain"], grid,
                            cap=d["cap"], workers=threads)


def _l1_bound(dictionary, expansion) -> float:
    """sum |c_i| max(1, ||g_i||): an L1 bound valid for the normalized dictionary."""
    total = 0.0
    for atom, c in expansion.terms:
        norm = dictionary.norms[dictionary.index_of(atom)]
        total += abs(c) * max(1.0, float(norm))
    return total


def stage_target(cfg: dict, dictionary, grid):
    """Returns (samples, l1_bound or None, description)."""
    t = cfg["target"]
    if t["kind"] == "synthetic":
        rng = cfgmod.stage_rng(cfg["seed"], "target")
        samples, _, expansion = make_synthetic_target(dictionary, t["n_atoms"],
                                                      t["coeff_law"], rng)
        bound = _l1_bound(dictionary, expansion)
        return samples, bound, {"kind": "synthetic", "terms": expansion.to_list()}
    if t["kind"] == "builtin":
        d = dictionary.spec.dim
        atom = AtomIndex(0, (0,) * d)
        if atom not in dictionary._lookup:
            atom = dictionary.atoms[0]
        expansion = WaveletExpansion([(atom, 1.0)])
        samples = np.array(dictionary.samples[dictionary.index_of(atom)])
        return samples, _l1_bound(dictionary, expansion), {"kind": "builtin", "name": "atom",
                                                           "atom": atom.to_list()}
    samples = ingest_target_csv(t["path"], grid)
    bound = cfg["greedy"]["l1_bound"]
    return samples, bound, {"kind": "csv", "path": os.path.basename(t["path"])}


def stage_approximate(cfg: dict, dictionary, target, l1):
    g = cfg["greedy"]
    expansion, trace = oga(target, dictionary, g["N"], g["tie_break"], g["threshold"])
    bound = g["l1_bound"] if g["l1_bound"] is not None else l1
    trace.l1_bound = bound
    verdict = verify_rate(trace, bound, g["slack"]).to_dict() if bound is not None else None
    curve = [(t, s.residual_norm, rate_bound(bound, t) if bound is not None else float("nan"))
             for t, s in enumerate(trace.steps, start=1)]
    return expansion, trace, verdict, curve


def stage_network(cfg: dict, spec, expansion, grid):
    params = expansion_to_wbnet(expansion, spec.dim)
    rng = cfgmod.stage_rng(cfg["seed"], "network")
    n = cfg["network"]["check_points"]
    x = rng.uniform(-grid.half_width, grid.half_width, size=(n, spec.dim))
    ref = eval_expansion(expansion, spec, x)
    got = eval_wbnet(params, spec, x)
    err = float(np.max(np.abs(ref - got) / (1.0 + np.abs(ref))))
    verdict = {"pass": bool(err <= 1e-12 and params.node_count == 2 * len(expansion)),
               "max_rel_error": err, "node_count": params.node_count,
               "terms": len(expansion)}
    return params, verdict


def stage_compare(cfg: dict, spec, expansion, target, residual, grid) -> dict:
    dg = cfg["dagger"]
    sigma0 = build_activation(dg["sigma0"], grid)
    return compare_activations(spec, sigma0, dg["M"], expansion, target, residual, grid,
                               shift_box=dg["shift_box"])


def run_pipeline(cfg: dict, out_dir: str, threads: int = 1) -> int:
    """Run every enabled stage, write run.json / curve.csv / net.json, return the exit code."""
    os.makedirs(out_dir, exist_ok=True)
    timings: dict = {}
    result: dict = {"resolved_config": cfg, "verdicts": {}}
    outputs = cfg["outputs"]
    try:
        with _Stage("grid", timings):
            grid = build_grid(cfg)
            spec = build_activation(cfg["activation"], grid)
            result["grid"] = grid.describe()
            result["activation"] = spec.to_dict()
        if cfg["kernel"]["enabled"]:
            with _Stage("check-kernel", timings):
                report = stage_kernel(cfg, spec, grid)
                result["kernel_report"] = report
                result["constants"] = report["constants"]
                result["verdicts"]["kernel"] = report["certified"]
        with _Stage("build-dict", timings):
            dictionary = stage_dictionary(cfg, spec, grid, threads)
            result["dictionary"] = dictionary.manifest()
        with _Stage("target", timings):
            target, l1, desc = stage_target(cfg, dictionary, grid)
            result["target"] = desc | {"l1_bound": l1}
        with _Stage("approximate", timings):
            expansion, trace, verdict, curve = stage_approximate(cfg, dictionary, target, l1)
            result["expansion"] = expansion.to_list()
            result["residual_curve"] = [{"N": t, "residual": r, "bound": b} for t, r, b in curve]
            result["trace"] = trace.to_dict()
            if verdict is not None:
                result["verdicts"]["rate"] = verdict["pass"]
                result["rate"] = verdict
            write_csv(os.path.join(out_dir, outputs["curve"]), ["N", "residual", "bound"], curve)
        if cfg["network"]["enabled"]:
            with _Stage("export-net", timings):
                params, verdict = stage_network(cfg, spec, expansion, grid)
                result["network"] = verdict | {"file": outputs["net"],
                                               "source_expansion_hash": expansion_hash(expansion)}
                result["verdicts"]["network"] = verdict["pass"]
                dump_json(net_to_json(params, spec, expansion),
                          os.path.join(out_dir, outputs["net"]))
        if cfg["dagger"]["enabled"]:
            with _Stage("compare-activations", timings):
                cmp = stage_compare(cfg, spec, expansion, target,
                                    trace.steps[-1].residual_norm, grid)
                result["compare"] = cmp
                result["verdicts"]["compare"] = cmp["pass"]
        passed = all(result["verdicts"].values())
        result["status"] = "ok" if passed else "verdict_failed"
        code = EXIT_OK if passed else EXIT_VERDICT
    except StageError as err:
        result["status"] = "error"
        result["error"] = {"stage": err.stage, "type": type(err.cause).__name__,
                           "message": str(err.cause)}
        print(f"frameforge: {err}", file=sys.stderr)
        code = EXIT_ERROR
    dump_json(result, os.path.join(out_dir, outputs["run"]))
    dump_json({"threads": threads, "seconds": timings}, os.path.join(out_dir, "timings.json"))
    return code


# -- subcommands --------------------------------------------------------------------------------

def _load_cfg(args) -> dict:
    if not args.config:
        raise FrameforgeError("--config is required for this command")
    return cfgmod.load(args.config, args.seed)


def cmd_check_kernel(args) -> int:
    cfg = _load_cfg(args)
    grid = build_grid(cfg)
    spec = build_activation(cfg["activation"], grid)
    report = stage_kernel(cfg, spec, grid)
    _emit(args, "kernel.json", report | {"resolved_config": cfg})
    return EXIT_OK if report["certified"] else EXIT_VERDICT


def cmd_build_dict(args) -> int:
    cfg = _load_cfg(args)
    grid = build_grid(cfg)
    spec = build_activation(cfg["activation"], grid)
    dictionary = stage_dictionary(cfg, spec, grid, args.threads)
    _emit(args, "dictionary.json", dictionary.manifest() | {"resolved_config": cfg})
    return EXIT_OK


def cmd_approximate(args) -> int:
    cfg = _load_cfg(args)
    grid = build_grid(cfg)
    spec = build_activation(cfg["activation"], grid)
    dictionary = stage_dictionary(cfg, spec, grid, args.threads)
    target, l1, desc = stage_target(cfg, dictionary, grid)
    expansion, trace, verdict, curve = stage_approximate(cfg, dictionary, target, l1)
    out = {"resolved_config": cfg, "activation": spec.to_dict(), "target": desc,
           "expansion": expansion.to_list(), "trace": trace.to_dict(), "rate": verdict}
    _emit(args, "approximate.json", out)
    if args.out:
        write_csv(os.path.join(_out_dir(args), cfg["outputs"]["curve"]),
                  ["N", "residual", "bound"], curve)
    return EXIT_OK if verdict is None or verdict["pass"] else EXIT_VERDICT


def cmd_export_net(args) -> int:
    with open(args.run, encoding="utf-8") as fh:
        run = json.load(fh)
    if "expansion" not in run or "activation" not in run:
        raise SchemaMismatch(f"{args.run} has no expansion/activation record")
    spec = ActivationSpec.from_dict(run["activation"])
    expansion = WaveletExpansion.from_list(run["expansion"])
    data = net_to_json(expansion_to_wbnet(expansion, spec.dim), spec, expansion)
    if args.out:
        dump_json(data, args.out)
    else:
        print(json.dumps(_clean(data), sort_keys=True, indent=2))
    return EXIT_OK


def cmd_eval_net(args) -> int:
    with open(args.net, encoding="utf-8") as fh:
        params, spec = net_from_json(json.load(fh))
    header, pts = read_points_csv(args.points)
    expected = [f"x_{i + 1}" for i in range(spec.dim)]
    if [h.strip() for h in header] != expected:
        raise SchemaMismatch(f"expected columns {expected}, got {header}")
    vals = eval_wbnet(params, spec, pts) if len(pts) else np.zeros(0)
    rows = [list(p) + [v] for p, v in zip(pts, vals)]
    if args.out:
        write_csv(args.out, expected + ["value"], rows)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(expected + ["value"])
        for r in rows:
            writer.writerow([repr(float(v)) for v in r])
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _load_cfg(args)
    grid = build_grid(cfg)
    spec = build_activation(cfg["activation"], grid)
    dictionary = stage_dictionary(cfg, spec, grid, args.threads)
    target, l1, _ = stage_target(cfg, dictionary, grid)
    expansion, trace, _, _ = stage_approximate(cfg, dictionary, target, l1)
    cmp = stage_compare(cfg, spec, expansion, target, trace.steps[-1].residual_norm, grid)
    _emit(args, "compare.json", cmp | {"resolved_config": cfg})
    return EXIT_OK if cmp["pass"] else EXIT_VERDICT


def cmd_run(args) -> int:
    cfg = _load_cfg(args)
    return run_pipeline(cfg, args.out or ".", args.threads)


def _out_dir(args) -> str | None:
    """``--out`` names a directory, or a report file when it ends in .json."""
    if not args.out:
        return None
    path = os.path.dirname(args.out) if args.out.endswith(".json") else args.out
    path = path or "."
    os.makedirs(path, exist_ok=True)
    return path


def _emit(args, name: str, obj) -> None:
    if not args.out:
        print(json.dumps(_clean(obj), sort_keys=True, indent=2))
        return
    target = args.out if args.out.endswith(".json") else os.path.join(_out_dir(args), name)
    _out_dir(args)
    dump_json(obj, target)


COMMANDS = {
    "check-kernel": (cmd_check_kernel, "certify the kernel conditions for the configured activation"),
    "build-dict": (cmd_build_dict, "build the wavelet dictionary and print its manifest"),
    "approximate": (cmd_approximate, "run the orthogonal greedy algorithm on the target"),
    "export-net": (cmd_export_net, "convert a run's expansion into network parameters"),
    "eval-net": (cmd_eval_net, "evaluate an exported network at points from a CSV"),
    "compare-activations": (cmd_compare, "fit sigma-dagger combinations and test the error bound"),
    "run": (cmd_run, "full pipeline: certify, build, approximate, export, compare"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frameforge", description=__doc__.splitlines()[0])
    parser.add_argument("--print-schema", action="store_true",
                        help="print the config JSON schema and exit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="experiment config (JSON)")
        p.add_argument("--out", help="output directory (a file path for export-net/eval-net)")
        p.add_argument("--seed", type=int, help="override the config seed (unsigned 64-bit)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads; changes speed only, never results")
        p.add_argument("--print-schema", action="store_true", help=argparse.SUPPRESS)
        if name == "export-net":
            p.add_argument("--run", required=True, help="run.json with an expansion")
        if name == "eval-net":
            p.add_argument("--net", required=True, help="net.json from export-net")
            p.add_argument("--points", required=True, help="CSV with columns x_1..x_d")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.print_schema:
        print(json.dumps(cfgmod.SCHEMA, sort_keys=True, indent=2))
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_ERROR
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("frameforge: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_ERROR
    if args.threads < 1:
        print("frameforge: --threads must be positive", file=sys.stderr)
        return EXIT_ERROR
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except (FrameforgeError, ValueError, OSError, KeyError) as err:
        print(f"frameforge: stage '{args.command}' failed: {type(err).__name__}: {err}",
              file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

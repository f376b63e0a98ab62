"""Command line front end for batch augmentation and analysis.

Exit status is 0 on success, 1 on I/O or parse failures and 2 when the
configuration is invalid. Every command writes its reports plus a single
``manifest.json`` into the ``--output`` directory.
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
from pathlib import Path

from . import __version__
from .augment import AugmentConfig
from .datasets import FORMATS, Dataset, read_dataset, read_edge_list, write_dataset
from .errors import ConfigError, DualPrismError, MalformedFile, MissingFile
from .experiments import (
    METHODS,
    analyze_datasets,
    augment_dataset,
    bench,
    compare_dp_dropedge,
    default_workers,
    flip_scan,
    sweep,
)
from .properties import property_profile

log = logging.getLogger("dualprism")

EXIT_OK, EXIT_IO, EXIT_CONFIG = 0, 1, 2

GRID_SIGMAS = [0.1, 0.5, 1.0, 2.0]
GRID_FREQ_RATIOS = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
GRID_AUG_PROBS = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]


def write_csv(path: Path, rows, fieldnames=None) -> None:
    if fieldnames is None:
        fieldnames = []
        for r in rows:
            fieldnames.extend(k for k in r if k not in fieldnames)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(_json_safe(obj), indent=2, sort_keys=True) + "\n")


def _workers(args) -> int:
    if os.environ.get("DP_WORKERS"):
        return default_workers()
    return args.workers or default_workers()


def _config(args) -> AugmentConfig:
    aug_type = args.type if args.type in ("noise", "mask") else "noise"
    return AugmentConfig(
        aug_type=aug_type,
        r_f=args.freq_ratio,
        r_a=args.aug_prob,
        sigma=args.sigma,
        tau=args.tau,
        seed=args.seed,
        band=args.band,
        noise_mode=args.noise_mode,
    )


def _manifest(args, output: Path, config, extra=None) -> None:
    m = {
        "command": args.command,
        "argv": sys.argv[1:],
        "config": config,
        "input": str(getattr(args, "input", None) or getattr(args, "original", "")),
        "output": str(output),
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }
    m.update(extra or {})
    write_json(output / "manifest.json", m)


def _augmented_path(output: Path, fmt: str) -> Path:
    return output / ("augmented.json" if fmt == "json" else "augmented")


def cmd_augment(args) -> int:
    cfg = _config(args)
    workers = _workers(args)
    ds = read_dataset(args.input, args.format)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    records, converged, millis = augment_dataset(ds, args.type, cfg, workers)
    total = (time.perf_counter() - t0) * 1e3
    for k, ok in enumerate(converged):
        if not ok:
            log.warning("graph %d: eigendecomposition did not converge; passed through", k)

    fmt = args.output_format or args.format
    aug = Dataset(ds.name, [r.augmented for r in records], ds.class_count)
    write_dataset(aug, _augmented_path(out, fmt), fmt)
    rows = [
        {
            "graph_id": k,
            "edges_dropped": r.edges_dropped,
            "edges_added": r.edges_added,
            "delta_l2": r.delta_l2,
            "converged": int(ok),
        }
        for k, (r, ok) in enumerate(zip(records, converged))
    ]
    write_csv(out / "records.csv", rows,
              ["graph_id", "edges_dropped", "edges_added", "delta_l2", "converged"])
    n = len(rows)
    write_json(out / "summary.json", {
        "graphs": n,
        "method": args.type,
        "not_converged": n - sum(converged),
        "mean_edges_dropped": sum(r["edges_dropped"] for r in rows) / n if n else 0.0,
        "mean_edges_added": sum(r["edges_added"] for r in rows) / n if n else 0.0,
    })
    config = {**cfg.__dict__, "aug_type": args.type, "format": fmt}
    _manifest(args, out, config, {"workers": workers, "per_graph_ms": millis, "total_ms": total})
    return EXIT_OK


def cmd_analyze(args) -> int:
    workers = _workers(args)
    orig = read_dataset(args.original, args.format)
    aug = read_dataset(args.augmented, args.augmented_format or args.format)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    rows, summary = analyze_datasets(orig, aug, workers)
    rows = [{"graph_id": r.pop("graph_id"), **r} for r in rows]
    write_csv(out / "analysis.csv", rows)
    write_json(out / "summary.json", summary)
    _manifest(args, out, {"augmented": str(args.augmented)}, {"workers": workers})
    return EXIT_OK


def _pairs(text):
    if not text:
        return None
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        sep = "-" if "-" in tok else ":"
        a, b = tok.split(sep)
        out.append((int(a), int(b)))
    return out


def cmd_flip_scan(args) -> int:
    if args.format == "edgelist" and Path(args.input).is_file():
        g = read_edge_list(args.input)
    else:
        g = read_dataset(args.input, args.format)[args.graph_index]
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    adds, drops = _pairs(args.add), _pairs(args.drop)
    if adds is not None or drops is not None:
        rows = flip_scan(g, adds or [], drops or [])
    else:
        rows = flip_scan(g)
    write_csv(out / "flips.csv", rows)
    prof = property_profile(g)
    write_json(out / "summary.json", {
        "n": g.n,
        "edges": g.num_edges,
        "additions": sum(r["op"] == "add" for r in rows),
        "deletions": sum(r["op"] == "drop" for r in rows),
        "original": {**prof.as_dict(), "inv_fiedler": 1 / prof.fiedler if prof.fiedler > 1e-6 else math.inf},
    })
    _manifest(args, out, {"add": args.add, "drop": args.drop})
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.type not in ("noise", "mask"):
        raise ConfigError("sweep supports --type noise or mask")
    sigmas = args.sigma_grid or (GRID_SIGMAS if args.full_grid else [args.sigma])
    r_fs = args.freq_ratio_grid or (GRID_FREQ_RATIOS if args.full_grid else [args.freq_ratio])
    r_as = args.aug_prob_grid or (GRID_AUG_PROBS if args.full_grid else [args.aug_prob])
    for v in (*r_fs, *r_as):
        if not 0 <= v <= 1:
            raise ConfigError(f"ratio {v} outside [0, 1]")
    if any(s < 0 for s in sigmas):
        raise ConfigError("sigma must be non-negative")
    workers = _workers(args)
    ds = read_dataset(args.input, args.format)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    rows = sweep(ds, sigmas, r_fs, r_as, args.type, args.bands, args.seeds, args.seed,
                 args.tau, args.noise_mode, workers)
    write_csv(out / "sweep.csv", rows)
    _manifest(args, out, {
        "type": args.type, "sigma": sigmas, "freq_ratio": r_fs, "aug_prob": r_as,
        "bands": args.bands, "seeds": args.seeds, "tau": args.tau, "noise_mode": args.noise_mode,
    }, {"workers": workers})
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args)
    if args.repeats < 1:
        raise ConfigError("--repeats must be at least 1")
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    rows = bench(args.sizes, args.repeats, args.p, cfg, args.seed)
    write_csv(out / "bench.csv", rows)
    _manifest(args, out, {**cfg.__dict__, "sizes": args.sizes, "repeats": args.repeats, "p": args.p})
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.type not in ("noise", "mask"):
        raise ConfigError("compare needs a DP --type (noise or mask)")
    cfg = _config(args)
    ds = read_dataset(args.input, args.format)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    res = compare_dp_dropedge(ds.graphs, cfg, args.seeds, args.seed)
    rows = [res["dp"], res["drop_edge"]]
    write_csv(out / "comparison.csv", rows,
              ["method", "ratio", "preservation_rate", "mean_edge_changes"])
    write_json(out / "summary.json", res)
    _manifest(args, out, {**cfg.__dict__, "seeds": args.seeds})
    return EXIT_OK


def _add_aug_args(p, with_type=True):
    if with_type:
        p.add_argument("--type", choices=METHODS, default="noise")
    p.add_argument("--sigma", type=float, default=1.0, help="noise standard deviation")
    p.add_argument("--freq-ratio", type=float, default=0.5, help="fraction of the spectrum eligible (r_f)")
    p.add_argument("--aug-prob", type=float, default=0.5,
                   help="per-eigenvalue augmentation probability (r_a); drop ratio for baselines")
    p.add_argument("--tau", type=float, default=0.5, help="binarization threshold")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--band", choices=("low", "high"), default="high")
    p.add_argument("--noise-mode", choices=("additive", "relative"), default="additive")


def _add_io_args(p, input_name="--input"):
    p.add_argument(input_name, required=True)
    p.add_argument("--output", required=True, help="output directory")
    p.add_argument("--format", choices=FORMATS, default="tud")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default: CPU count; DP_WORKERS overrides)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualprism", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("augment", help="augment every graph of a dataset")
    _add_io_args(p)
    _add_aug_args(p)
    p.add_argument("--output-format", choices=FORMATS, default=None)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("analyze", help="compare properties of two paired datasets")
    _add_io_args(p, "--original")
    p.add_argument("--augmented", required=True)
    p.add_argument("--augmented-format", choices=FORMATS, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("flip-scan", help="spectral response to every single-edge flip")
    _add_io_args(p)
    p.set_defaults(format="edgelist")
    p.add_argument("--graph-index", type=int, default=0)
    p.add_argument("--add", default=None, help="comma separated additions, e.g. 3-5,1-6")
    p.add_argument("--drop", default=None, help="comma separated deletions, e.g. 0-4,3-4")
    p.set_defaults(func=cmd_flip_scan)

    p = sub.add_parser("sweep", help="aggregate effects over a sigma x r_f x r_a grid")
    _add_io_args(p)
    _add_aug_args(p)
    p.add_argument("--sigma-grid", type=float, nargs="+")
    p.add_argument("--freq-ratio-grid", type=float, nargs="+")
    p.add_argument("--aug-prob-grid", type=float, nargs="+")
    p.add_argument("--full-grid", action="store_true",
                   help="sigma {0.1,0.5,1,2} x r_f {0.1..0.8} x r_a {0..1 step 0.2}")
    p.add_argument("--bands", choices=("low", "high"), nargs="+", default=["high"])
    p.add_argument("--seeds", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="time DP augmentation on random graphs")
    p.add_argument("--output", required=True)
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 100, 200, 500])
    p.add_argument("--repeats", type=int, default=100)
    p.add_argument("--p", type=float, default=0.1, help="edge probability of the random graphs")
    _add_aug_args(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="DP vs DropEdge connectivity preservation at matched edge change")
    _add_io_args(p)
    _add_aug_args(p)
    p.set_defaults(type="mask")
    p.add_argument("--seeds", type=int, default=10)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (MissingFile, MalformedFile, OSError) as exc:
        log.error("%s", exc)
        return EXIT_IO
    except (ConfigError, DualPrismError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

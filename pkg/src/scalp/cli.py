"""Command-line front end.

Subcommands: decompose, prior, hc, metrics, decompose3d. A JSON config file
(--config) may supply any flag under its long name with dashes replaced by
underscores; explicit flags override the config.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import _accel, fileio
from .clustering import run_scalp
from .contour_prior import (DEFAULT_SCALES, load_contour_map,
                            multiscale_boundary_prior)
from .core import ScalpParams, add_gaussian_noise, rgb_to_lab
from .hard_constraint import run_scalp_hc
from .metrics import evaluate
from .supervoxel import run_scalp_3d

_PARAM_DEFAULTS = {
    "k": 250,
    "m2_scale": 0.075,
    "lam": 0.5,
    "gamma": 50.0,
    "n": 3,
    "sigma": 40.0,
    "iters": 5,
    "seed": 0,
    "noise_var": 0.0,
}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, help="target superpixel count")
    p.add_argument("--m2-scale", dest="m2_scale", type=float,
                   help="regularity coefficient (m^2 = m2_scale * r^2)")
    p.add_argument("--lambda", dest="lam", type=float,
                   help="path color weight in [0, 1]")
    p.add_argument("--gamma", type=float, help="contour weight coefficient")
    p.add_argument("--n", type=int, help="neighborhood radius")
    p.add_argument("--sigma", type=float, help="neighborhood weight bandwidth")
    p.add_argument("--iters", type=int, help="clustering iterations")
    p.add_argument("--seed", type=int, help="RNG seed")
    p.add_argument("--noise-var", dest="noise_var", type=float,
                   help="additive Gaussian noise variance (0-255 scale)")


def _merge(args: argparse.Namespace, defaults: dict) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        cfg = json.loads(Path(args.config).read_text())
    out = dict(defaults)
    for key in defaults:
        if key in cfg:
            out[key] = cfg[key]
    for key, val in vars(args).items():
        if key in defaults and val is not None:
            out[key] = val
    return out


def _params(opts: dict) -> ScalpParams:
    return ScalpParams(K=int(opts["k"]), m2_scale=float(opts["m2_scale"]),
                       lam=float(opts["lam"]), gamma=float(opts["gamma"]),
                       n=int(opts["n"]), sigma=float(opts["sigma"]),
                       iterations=int(opts["iters"]),
                       rng_seed=int(opts["seed"]))


def _load_rgb(path: str, opts: dict) -> np.ndarray:
    rgb = fileio.load_image(path)
    if opts.get("noise_var", 0.0) > 0:
        rgb = add_gaussian_noise(rgb, float(opts["noise_var"]),
                                 int(opts["seed"]))
    return rgb


def _cmd_decompose(args) -> int:
    opts = _merge(args, {**_PARAM_DEFAULTS, "contour": None,
                         "out_labels": None, "out_overlay": None})
    rgb = _load_rgb(args.input, opts)
    lab = rgb_to_lab(rgb)
    contour = None
    if opts["contour"]:
        contour = load_contour_map(opts["contour"], shape=lab.shape[:2])
    labels = run_scalp(lab, _params(opts), contour=contour)
    if opts["out_labels"]:
        fileio.save_labels(opts["out_labels"], labels)
    if opts["out_overlay"]:
        fileio.save_overlay(opts["out_overlay"], rgb, labels)
    print(f"{args.input}: {labels.max() + 1} superpixels")
    return 0


def _cmd_prior(args) -> int:
    opts = _merge(args, {**_PARAM_DEFAULTS, "scales": None,
                         "threshold": 0.5, "out": None})
    rgb = _load_rgb(args.input, opts)
    lab = rgb_to_lab(rgb)
    scales = DEFAULT_SCALES if opts["scales"] is None else \
        [int(s) for s in str(opts["scales"]).split(",")]
    params = _params({**opts, "k": scales[0]})
    prior = multiscale_boundary_prior(lab, scales, params,
                                      threshold=float(opts["threshold"]))
    out = opts["out"] or (Path(args.input).stem + "_prior.pgm")
    fileio.save_pgm16(out, np.round(prior * 65535).astype(np.uint16))
    print(f"{args.input}: prior written to {out}")
    return 0


def _cmd_hc(args) -> int:
    opts = _merge(args, {**_PARAM_DEFAULTS, "contour": None, "ucm": None,
                         "tau": 0.4, "t": 0.15, "soft_init": False,
                         "out_labels": None, "out_overlay": None})
    if not opts["ucm"]:
        raise SystemExit("hc requires --ucm")
    rgb = _load_rgb(args.input, opts)
    lab = rgb_to_lab(rgb)
    ucm = load_contour_map(opts["ucm"], shape=lab.shape[:2])
    contour = None
    if opts["contour"]:
        contour = load_contour_map(opts["contour"], shape=lab.shape[:2])
    labels = run_scalp_hc(lab, _params(opts), contour, ucm,
                          tau=float(opts["tau"]), t=float(opts["t"]),
                          hard=not opts["soft_init"])
    if opts["out_labels"]:
        fileio.save_labels(opts["out_labels"], labels)
    if opts["out_overlay"]:
        fileio.save_overlay(opts["out_overlay"], rgb, labels)
    print(f"{args.input}: {labels.max() + 1} superpixels (constrained)")
    return 0


def _cmd_metrics(args) -> int:
    opts = _merge(args, {"epsilon": 2.0, "out_csv": None, "out_json": None})
    gts = [fileio.load_labels(p) for p in args.gt]
    rows = []
    for path in args.labels:
        labels = fileio.load_labels(path)
        row = {"labels_file": str(path),
               **evaluate(labels, gts, epsilon=float(opts["epsilon"]))}
        rows.append(row)
    keys = ["asa", "br", "cd", "src"]
    mean = {k: float(np.mean([r[k] for r in rows])) for k in keys}
    report = {"rows": rows, "mean": mean}
    if opts["out_json"]:
        Path(opts["out_json"]).write_text(json.dumps(report, indent=2) + "\n")
    if opts["out_csv"]:
        cols = ["labels_file", "n_superpixels", *keys]
        with open(opts["out_csv"], "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=cols)
            writer.writeheader()
            for r in rows:
                writer.writerow({c: r[c] for c in cols})
            writer.writerow({"labels_file": "mean", "n_superpixels": "",
                             **{k: mean[k] for k in keys}})
    for r in rows:
        print(f"{r['labels_file']}: asa={r['asa']:.4f} br={r['br']:.4f} "
              f"cd={r['cd']:.4f} src={r['src']:.4f}")
    return 0


def _cmd_decompose3d(args) -> int:
    opts = _merge(args, {**_PARAM_DEFAULTS, "gamma": 0.0, "out_labels": None})
    vol = fileio.load_volume(args.input)
    labels = run_scalp_3d(vol, int(opts["k"]), params=_params(opts))
    if opts["out_labels"]:
        fileio.save_labels_3d(opts["out_labels"], labels)
    print(f"{args.input}: {labels.max() + 1} supervoxels")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalp",
        description="Superpixel/supervoxel decomposition and evaluation")
    parser.add_argument("--backend", choices=("auto", "numba", "numpy"),
                        default="auto", help="kernel backend")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose an image")
    p.add_argument("input")
    _add_param_flags(p)
    p.add_argument("--contour", help="contour prior file (grayscale)")
    p.add_argument("--out-labels", dest="out_labels")
    p.add_argument("--out-overlay", dest="out_overlay")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("prior", help="multi-scale boundary contour prior")
    p.add_argument("input")
    _add_param_flags(p)
    p.add_argument("--scales", help="comma-separated superpixel counts")
    p.add_argument("--threshold", type=float)
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_prior)

    p = sub.add_parser("hc", help="decompose under a hierarchical-map constraint")
    p.add_argument("input")
    _add_param_flags(p)
    p.add_argument("--ucm", help="hierarchical contour map file")
    p.add_argument("--tau", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--contour")
    p.add_argument("--soft-init", dest="soft_init", action="store_true",
                   default=None, help="seed from regions without constraining")
    p.add_argument("--out-labels", dest="out_labels")
    p.add_argument("--out-overlay", dest="out_overlay")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_hc)

    p = sub.add_parser("metrics", help="evaluate label maps against ground truth")
    p.add_argument("--labels", nargs="+", required=True)
    p.add_argument("--gt", nargs="+", required=True)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--out-csv", dest="out_csv")
    p.add_argument("--out-json", dest="out_json")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("decompose3d", help="decompose a raw+JSON volume")
    p.add_argument("input")
    _add_param_flags(p)
    p.add_argument("--out-labels", dest="out_labels")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_decompose3d)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.backend != "auto":
        _accel.set_backend(args.backend)
    try:
        return args.func(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

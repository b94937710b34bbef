"""Command-line interface: noise injection, denoising, evaluation, benchmarks.

Exit codes: 0 success, 1 usage/config error, 2 I/O-or-data error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from .baselines import adaptive_median_filter, median_filter
from .filtering import FilterConfig, denoise
from .image import ImageFormatError, load_image_file, save_image_file
from .matching import FULL_WINDOW, MatchConfig
from .metrics import mse, psnr
from .noise import NoiseConfig, inject_noise

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

DEFAULT_DENSITIES = tuple(round(0.1 * i, 1) for i in range(1, 10))


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit status 2 for usage errors; this CLI reserves 2
    # for I/O-and-data failures and uses 1 for usage problems.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _window_arg(text: str):
    if text == FULL_WINDOW:
        return FULL_WINDOW
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be an odd integer or 'full', got {text!r}")


def _density_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad density list {text!r}")
    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("densities must lie in [0, 1]")
    return values


def _load(path: str) -> np.ndarray:
    return load_image_file(path)


def _psnr_json(value: float):
    return "inf" if math.isinf(value) else round(value, 4)


def cmd_add_noise(args) -> int:
    try:
        cfg = NoiseConfig(density=args.density, salt_ratio=args.salt_ratio,
                          delta=args.delta, seed=args.seed)
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        img = _load(args.input)
    except (OSError, ImageFormatError) as exc:
        return _fail(EXIT_DATA, str(exc))
    noisy, corrupted = inject_noise(img, cfg)
    try:
        save_image_file(noisy, args.output)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_DATA, str(exc))
    realized = corrupted.sum() / corrupted.size
    print(f"corrupted {int(corrupted.sum())}/{corrupted.size} pixels "
          f"(realized density {realized:.4f})")
    return EXIT_OK


def cmd_denoise(args) -> int:
    try:
        cfg = FilterConfig(
            sigma=args.sigma,
            match=MatchConfig(patch_size=args.patch_size, neighbors=args.mm,
                              search_window=args.window),
            delta=args.delta,
        )
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        img = _load(args.input)
    except (OSError, ImageFormatError) as exc:
        return _fail(EXIT_DATA, str(exc))
    restored, report = denoise(img, cfg, workers=args.workers)
    try:
        save_image_file(restored, args.output)
        if args.report:
            Path(args.report).write_text(report.to_json() + "\n")
    except (OSError, ValueError) as exc:
        return _fail(EXIT_DATA, str(exc))
    print(f"repaired {report.repaired_count} pixels "
          f"({report.fallback_count} fallbacks) in {report.elapsed_ms} ms")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        ref = _load(args.reference)
        test = _load(args.test)
    except (OSError, ImageFormatError) as exc:
        return _fail(EXIT_DATA, str(exc))
    try:
        err = mse(ref, test)
        value = psnr(ref, test)
    except ValueError as exc:
        return _fail(EXIT_DATA, str(exc))
    print(f"PSNR: {'inf' if math.isinf(value) else f'{value:.4f}'} dB")
    print(f"MSE: {err:.6f}")
    return EXIT_OK


def _run_method(name: str, noisy: np.ndarray) -> np.ndarray:
    if name == "median":
        return median_filter(noisy, 3)
    if name == "amf":
        return adaptive_median_filter(noisy, 11)
    return denoise(noisy)[0]


def cmd_benchmark(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    valid = ("median", "amf", "contour")
    unknown = [m for m in methods if m not in valid]
    if unknown or not methods:
        return _fail(EXIT_USAGE,
                     f"unknown method(s) {unknown}; valid methods: {', '.join(valid)}")
    try:
        clean = _load(args.input)
    except (OSError, ImageFormatError) as exc:
        return _fail(EXIT_DATA, str(exc))

    rows = []
    for di, density in enumerate(args.densities):
        for mi, method in enumerate(methods):
            cell_seed = args.seed + 1000 * di + mi
            noisy, _ = inject_noise(clean, NoiseConfig(density=density, seed=cell_seed))
            t0 = time.perf_counter()
            restored = _run_method(method, noisy)
            elapsed_ms = int(round((time.perf_counter() - t0) * 1000.0))
            rows.append({
                "density": density,
                "method": method,
                "psnr_db": _psnr_json(psnr(clean, restored)),
                "elapsed_ms": elapsed_ms,
                "seed": cell_seed,
            })

    if args.out:
        try:
            Path(args.out).write_text(json.dumps(rows, indent=2) + "\n")
        except OSError as exc:
            return _fail(EXIT_DATA, str(exc))

    # densities as rows, methods as columns
    width = max(10, *(len(m) for m in methods))
    print("density  " + "  ".join(f"{m:>{width}}" for m in methods))
    by_cell = {(r["density"], r["method"]): r["psnr_db"] for r in rows}
    for density in args.densities:
        cells = []
        for method in methods:
            v = by_cell[(density, method)]
            cells.append(f"{v:>{width}}" if isinstance(v, str) else f"{v:>{width}.4f}")
        print(f"{density:>7.2f}  " + "  ".join(cells))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="contourdenoise",
                     description="Salt-and-pepper denoising with contour-guided patch regression")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("add-noise", help="inject salt-and-pepper noise into an image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--salt-ratio", type=float, default=0.5)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_add_noise)

    p = sub.add_parser("denoise", help="restore an impulse-corrupted image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--sigma", type=float, default=math.e)
    p.add_argument("--patch-size", type=int, default=7)
    p.add_argument("--mm", type=int, default=16,
                   help="number of similar patches used per repair")
    p.add_argument("--window", type=_window_arg, default=39,
                   help="search window side, or 'full'")
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--report", metavar="PATH", help="write a JSON run report")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_denoise)

    p = sub.add_parser("evaluate", help="print PSNR/MSE between two images")
    p.add_argument("reference")
    p.add_argument("test")
    p.set_defaults(run=cmd_evaluate)

    p = sub.add_parser("benchmark", help="PSNR grid over densities and methods")
    p.add_argument("input")
    p.add_argument("--densities", type=_density_list, default=list(DEFAULT_DENSITIES))
    p.add_argument("--methods", default="median,amf,contour")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH", help="write rows as JSON")
    p.set_defaults(run=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())

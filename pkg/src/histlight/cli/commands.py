from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

from histlight.cli.config import RunConfig, resolve_threads
from histlight.cli.reports import (
    BENCH_COLUMNS,
    METRIC_COLUMNS,
    BenchRecord,
    metric_row,
    render_csv,
    render_json,
    with_average_row,
    write_csv,
    write_json,
    write_text,
)
from histlight.errors import ConfigError
from histlight.histogram import uniform_locations
from histlight.imaging import (
    EnhancementEngine,
    RgbImage,
    channel_histogram,
    equalize_image,
    quantize_value_channel,
    read_image,
    reflectance_prior_histogram,
    resize_nearest,
    rgb_to_hsv,
    write_image,
)
from histlight.logging import get_logger
from histlight.metrics import evaluate
from histlight.retinex import decompose

IMAGE_SUFFIXES = frozenset({".png", ".jpg", ".jpeg"})
HISTOGRAM_COLUMNS = ("bin", "location", "observed", "prior", "reflectance", "illumination")
TRACE_COLUMNS = ("iteration", "step", "objective_before", "objective_after")
SWEEP_COLUMNS = ("gamma", "mean_v", "iterations", "psnr", "ssim", "loe")

Command = Callable[[RunConfig], int]


def cmd_enhance(cfg: RunConfig) -> int:
    source = _require_input(cfg)
    output = _require_output(cfg)
    if cfg.sidecar is not None:
        _require_parent(cfg.sidecar)
    image = read_image(source)
    logger = get_logger(__name__)

    sidecar: dict[str, Any] = {
        "input": str(source),
        "output": str(output),
        "method": cfg.method,
        "width": image.width,
        "height": image.height,
    }
    if cfg.method == "he":
        enhanced = equalize_image(image, cfg.levels)
        sidecar["levels"] = cfg.levels
    else:
        result = _engine(cfg).run(image, params=cfg.opt_params(), gamma=cfg.gamma_param())
        enhanced = result.image
        sidecar.update(
            {
                "params": cfg.opt_params().to_canonical_dict(),
                "gamma": cfg.gamma,
                "gradient": cfg.gradient,
                "prior": cfg.prior,
                "matching_target": cfg.matching_target,
                "iterations": result.decomposition.iterations,
                "converged": result.decomposition.converged,
                "fit_distance": result.decomposition.fit_distance,
            }
        )

    write_image(enhanced, output)
    if cfg.sidecar is not None:
        write_json("enhance", sidecar, cfg.sidecar)
    logger.info("cli.enhance.written", extra={"output": str(output), "method": cfg.method})
    return 0


def cmd_decompose(cfg: RunConfig) -> int:
    """Write reflectance/illumination histograms (one row per bin) and the objective trace."""
    source = _require_input(cfg)
    output = _require_output(cfg)
    trace_path = cfg.trace_output or output.with_name(f"{output.stem}_trace{output.suffix}")
    _require_parent(trace_path)

    channel = quantize_value_channel(rgb_to_hsv(read_image(source)), cfg.levels)
    observed = channel_histogram(channel)
    prior = reflectance_prior_histogram(channel, operator=cfg.gradient, orientation=cfg.prior)
    result = decompose(observed, prior, cfg.opt_params())

    locations = uniform_locations(cfg.levels).locs
    histogram_rows = [
        {
            "bin": k,
            "location": float(locations[k]),
            "observed": float(observed.bins[k]),
            "prior": float(prior.bins[k]),
            "reflectance": float(result.reflectance.bins[k]),
            "illumination": float(result.illumination.bins[k]),
        }
        for k in range(cfg.levels)
    ]
    trace_rows = [
        {
            "iteration": entry.iteration,
            "step": entry.step,
            "objective_before": entry.objective_before,
            "objective_after": entry.objective_after,
        }
        for entry in result.steps
    ]

    if cfg.report == "json":
        write_json(
            "decompose",
            {
                "iterations": result.iterations,
                "converged": result.converged,
                "fit_distance": result.fit_distance,
                "histograms": histogram_rows,
            },
            output,
        )
        write_json("decompose_trace", {"steps": trace_rows}, trace_path)
    else:
        write_csv(histogram_rows, HISTOGRAM_COLUMNS, output)
        write_csv(trace_rows, TRACE_COLUMNS, trace_path)
    return 0


def cmd_bench(cfg: RunConfig) -> int:
    """Resize one source image across the sweep and time each pipeline stage."""
    source = _require_input(cfg)
    output = _require_output(cfg)
    image = read_image(source)
    reference = read_image(cfg.reference) if cfg.reference is not None else None
    engine = _engine(cfg)
    params = cfg.bench_params()
    gamma = cfg.gamma_param()
    logger = get_logger(__name__)

    records: list[BenchRecord] = []
    for width, height in cfg.resolutions:
        resized = resize_nearest(image, width, height)
        result = engine.run(resized, params=params, gamma=gamma)
        metrics = None
        if reference is not None:
            metrics = evaluate(resize_nearest(reference, width, height), result.image)
        record = BenchRecord.from_run(
            width=width,
            height=height,
            timings=result.timings,
            iterations=result.decomposition.iterations,
            metrics=metrics,
        )
        records.append(record)
        logger.info(
            "bench.resolution_timed",
            extra={
                "width": width,
                "height": height,
                "iterations": record.iterations,
                "total_ms": record.total_ms,
            },
        )

    rows = [record.to_canonical_dict() for record in records]
    if cfg.report == "json":
        write_json("bench", {"budget_ms": cfg.budget_ms, "records": rows}, output)
    else:
        write_csv(rows, BENCH_COLUMNS, output)

    stage_ms = [record.histogram_stage_ms for record in records]
    largest = max(records, key=lambda record: record.width * record.height)
    logger.info(
        "bench.finished",
        extra={
            "resolutions": len(records),
            "stage_ratio": max(stage_ms) / max(min(stage_ms), 1e-9),
            "largest_total_ms": largest.total_ms,
            "min_iterations": min(record.iterations for record in records),
            "max_iterations": max(record.iterations for record in records),
            "max_iter": params.max_iter,
        },
    )
    if largest.total_ms > cfg.budget_ms:
        logger.warning(
            "bench.budget_exceeded",
            extra={
                "width": largest.width,
                "height": largest.height,
                "total_ms": largest.total_ms,
                "budget_ms": cfg.budget_ms,
            },
        )
    return 0


def cmd_metrics(cfg: RunConfig) -> int:
    """Score one enhanced/reference pair, or every same-named pair across two folders."""
    candidate = _require_input(cfg)
    if cfg.reference is None:
        raise ConfigError("a reference image or folder is required")
    reference = cfg.reference
    if cfg.output is not None:
        _require_parent(cfg.output)

    if candidate.is_dir() and reference.is_dir():
        pairs = pair_folders(candidate, reference)
        workers = min(resolve_threads(cfg.threads), len(pairs))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_score_pair, pairs))
        rows = with_average_row(rows)
    elif candidate.is_file() and reference.is_file():
        rows = [_score_pair((candidate, reference))]
    else:
        raise ConfigError(
            "input and reference must both be files or both be folders",
            context={"input": str(candidate), "reference": str(reference)},
        )

    if cfg.report == "json":
        text = render_json("metrics", {"rows": rows})
    else:
        text = render_csv(rows, METRIC_COLUMNS)
    _emit(text, cfg.output)
    return 0


def cmd_gamma_sweep(cfg: RunConfig) -> int:
    """Enhance once per gamma and report brightness and quality against the input."""
    source = _require_input(cfg)
    output = _require_output(cfg)
    image = read_image(source)
    engine = _engine(cfg)
    params = cfg.opt_params()

    rows: list[dict[str, Any]] = []
    for gamma in cfg.gammas:
        result = engine.run(image, params=params, gamma=cfg.gamma_param(gamma))
        report = evaluate(image, result.image)
        rows.append(
            {
                "gamma": gamma,
                "mean_v": float(np.mean(result.enhanced_channel.levels)),
                "iterations": result.decomposition.iterations,
                "psnr": report.psnr_display,
                "ssim": report.ssim,
                "loe": report.loe,
            }
        )

    if cfg.report == "json":
        write_json("gamma_sweep", {"rows": rows}, output)
    else:
        write_csv(rows, SWEEP_COLUMNS, output)
    return 0


def pair_folders(candidates: Path, references: Path) -> list[tuple[Path, Path]]:
    """Match images by file name; every candidate needs a reference."""
    images = sorted(
        path for path in candidates.iterdir() if path.suffix.lower() in IMAGE_SUFFIXES
    )
    if not images:
        raise ConfigError("no images found", context={"folder": str(candidates)})
    missing = [path.name for path in images if not (references / path.name).is_file()]
    if missing:
        raise ConfigError(
            "reference images are missing",
            context={"folder": str(references), "missing": missing},
        )
    return [(path, references / path.name) for path in images]


COMMANDS: Mapping[str, Command] = {
    "enhance": cmd_enhance,
    "decompose": cmd_decompose,
    "bench": cmd_bench,
    "metrics": cmd_metrics,
    "gamma-sweep": cmd_gamma_sweep,
}


def _score_pair(pair: tuple[Path, Path]) -> dict[str, Any]:
    candidate, reference = pair
    return metric_row(candidate.name, evaluate(read_image(reference), read_image(candidate)))


def _engine(cfg: RunConfig) -> EnhancementEngine:
    return EnhancementEngine(
        gradient_operator=cfg.gradient,
        prior_orientation=cfg.prior,
        matching_target=cfg.matching_target,
    )


def _require_input(cfg: RunConfig) -> Path:
    if cfg.input is None:
        raise ConfigError("an input path is required")
    if not cfg.input.exists():
        raise ConfigError("input path does not exist", context={"path": str(cfg.input)})
    return cfg.input


def _require_output(cfg: RunConfig) -> Path:
    if cfg.output is None:
        raise ConfigError("an output path is required")
    _require_parent(cfg.output)
    return cfg.output


def _require_parent(path: Path) -> None:
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        raise ConfigError("output folder does not exist", context={"path": str(path)})


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_text(text, output)


__all__ = [
    "COMMANDS",
    "cmd_bench",
    "cmd_decompose",
    "cmd_enhance",
    "cmd_gamma_sweep",
    "cmd_metrics",
    "pair_folders",
]

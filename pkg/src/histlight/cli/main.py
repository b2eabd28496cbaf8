from __future__ import annotations

import argparse
import sys
from typing import Sequence

from histlight.cli.commands import COMMANDS
from histlight.cli.config import load_run_config
from histlight.errors import HistLightError
from histlight.logging import get_logger, log_error, set_log_level

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_FAILED = 2


def build_parser() -> argparse.ArgumentParser:
    """Subcommand parser; options left unset stay absent so config files can fill them."""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with default options")
    common.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper)
    common.add_argument("--alpha", type=float, help="illumination smoothness weight")
    common.add_argument("--beta", type=float, help="reflectance prior weight")
    common.add_argument("--epsilon", type=float, help="convergence threshold")
    common.add_argument("--max-iter", type=int, help="iteration cap T")
    common.add_argument("--levels", type=int, help="histogram bin count")
    common.add_argument("--update-form", help="gradient or paper (alias: ratio)")
    common.add_argument("--gradient", choices=("forward", "sobel"))
    common.add_argument("--prior", choices=("inverted", "direct"))
    common.add_argument("--matching-target", choices=("anchored", "composed"))
    common.add_argument("--threads", type=int, help="batch worker count")

    reporting = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    reporting.add_argument("-o", "--output", help="output file")
    reporting.add_argument("--report", choices=("csv", "json"))

    parser = argparse.ArgumentParser(
        prog="histlight", description="Histogram-domain Retinex low-light enhancement."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enhance = sub.add_parser(
        "enhance", parents=[common], argument_default=argparse.SUPPRESS, help="enhance one image"
    )
    enhance.add_argument("input", help="low-light image")
    enhance.add_argument("-o", "--output", help="enhanced PNG")
    enhance.add_argument("--gamma", type=float)
    enhance.add_argument("--method", choices=("histretinex", "he"))
    enhance.add_argument("--sidecar", help="JSON file with parameters and iteration count")

    decompose = sub.add_parser(
        "decompose",
        parents=[common, reporting],
        argument_default=argparse.SUPPRESS,
        help="write reflectance and illumination histograms",
    )
    decompose.add_argument("input")
    decompose.add_argument("--trace-output", help="objective trace file")

    bench = sub.add_parser(
        "bench",
        parents=[common, reporting],
        argument_default=argparse.SUPPRESS,
        help="time the pipeline across resolutions",
    )
    bench.add_argument("input")
    bench.add_argument("--resolutions", help="WxH,WxH,...")
    bench.add_argument("--reference", help="reference image for quality columns")
    bench.add_argument("--gamma", type=float)
    bench.add_argument("--budget-ms", type=float, help="total-time budget at the largest size")

    metrics = sub.add_parser(
        "metrics",
        parents=[common, reporting],
        argument_default=argparse.SUPPRESS,
        help="PSNR, SSIM and LOE for an image pair or paired folders",
    )
    metrics.add_argument("input", help="enhanced image or folder")
    metrics.add_argument("reference", help="reference image or folder")

    sweep = sub.add_parser(
        "gamma-sweep",
        parents=[common, reporting],
        argument_default=argparse.SUPPRESS,
        help="enhance with several gammas",
    )
    sweep.add_argument("input")
    sweep.add_argument("--gammas", help="comma-separated gamma values")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config", None)
    set_log_level(args.pop("log_level", "INFO"))
    logger = get_logger("histlight.cli")

    try:
        cfg = load_run_config(args, config_path)
        status = COMMANDS[command](cfg)
    except HistLightError as exc:
        log_error(logger, exc)
        print(f"histlight {command}: {exc.message}", file=sys.stderr)
        return EXIT_FAILED
    except Exception:
        logger.exception("cli.command_failed", extra={"command": command})
        return EXIT_UNEXPECTED
    logger.info("cli.command_finished", extra={"command": command, "status": status})
    return status


if __name__ == "__main__":
    sys.exit(main())

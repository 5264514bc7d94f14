"""``qcorr-lab <experiment> [--config PATH] [--key value ...]``

Exit status: 0 success, 2 invalid input or state, 3 the run did not
reproduce its reference fixture.
"""

import argparse
import json
import logging
import sys

from ..errors import InvalidState, InvalidStateInSweep
from .config import EXPERIMENTS, FIELD_TYPES, load_config
from .runner import RUNNERS

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcorr-lab", description="Run a correlation-measure experiment.")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--config", help="flat key = value file")
    p.add_argument("-v", "--verbose", action="store_true")
    for key in FIELD_TYPES:
        if key != "experiment":
            p.add_argument(f"--{key}", dest=key, default=None, metavar="VALUE")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    overrides = {k: v for k, v in vars(args).items() if k in FIELD_TYPES and k != "experiment" and v is not None}
    try:
        cfg = load_config(args.experiment, args.config, overrides)
        summary = RUNNERS[cfg.experiment](cfg)
    except (InvalidState, InvalidStateInSweep, ValueError, KeyError, OSError) as exc:
        print(f"qcorr-lab: {exc}", file=sys.stderr)
        return EXIT_INVALID
    brief = {k: v for k, v in summary.items() if not isinstance(v, list)}
    print(json.dumps(brief, indent=2))
    return EXIT_OK if summary["acceptance_ok"] else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())

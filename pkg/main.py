"""hwpl - Main Entry Point.

Exact Hall polynomials for coherent sheaves on weighted projective lines,
their tame-quiver counterparts and the brute-force tube oracle that
cross-checks them.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

# Add project root to path for module imports
PROJECT_ROOT = Path(__file__).parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from cli.formatters import render  # noqa: E402
from cli.grammar import UsageError  # noqa: E402
from cli.parser import parse_args  # noqa: E402
from cli.runner import execute  # noqa: E402
from core.errors import HallEngineError  # noqa: E402
from models.schemas import Command  # noqa: E402
from utils.constants import EXIT_OK, EXIT_REFUSED, EXIT_USAGE, PROG_NAME  # noqa: E402

logger = logging.getLogger(PROG_NAME)


def setup_logging(level: str = "INFO") -> None:
    """Configure application logging on stderr."""
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )
    # Quieter libraries
    logging.getLogger("numpy").setLevel(logging.WARNING)
    logging.getLogger("sympy").setLevel(logging.WARNING)


def run(argv: Sequence[str], stdout: Optional[TextIO] = None) -> int:
    """Parse, execute and print one command; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    try:
        job = parse_args(argv)
        setup_logging(job.log_level)
        report = execute(job)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HallEngineError as exc:
        logger.debug("refused: %r", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except SystemExit as exc:
        # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    text = render(report, job.output_format)
    if job.out is not None:
        job.out.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", job.out)
    else:
        stdout.write(text)

    if job.command is Command.VERIFY and not report.verdict:
        return EXIT_REFUSED
    return EXIT_OK


def main() -> None:
    """Application entry point."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

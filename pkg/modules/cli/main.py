"""
Command-line entry point
"""
import logging
import sys
from typing import List, Optional

from modules.config.exceptions import TreeLearningError
from modules.config.log_setup import configure_logging
from modules.config.settings import settings
from .commands import COMMANDS
from .parser import build_parser

logger = logging.getLogger(__name__)

def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand

    Returns 0 on success and 1 when the library rejects the inputs; usage
    errors exit with status 2 from argparse.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    key = args.command
    try:
        settings.validate()
        return COMMANDS[key](args)
    except TreeLearningError as e:
        logger.debug(f"{key} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e.strerror or e}: {e.filename}" if e.filename else f"error: {e}", file=sys.stderr)
        return 1

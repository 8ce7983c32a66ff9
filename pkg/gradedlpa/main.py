"""Command-line entry point"""
import logging
import sys
from typing import List, Optional

from gradedlpa.cli.commands import run
from gradedlpa.config import settings

# Configure logging
logging.basicConfig(
    level=(settings.log_level or ("INFO" if settings.debug else "WARNING")).upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code"""
    logger.info(f"Starting gradedlpa {' '.join(argv if argv is not None else sys.argv[1:])}")
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

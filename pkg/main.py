"""
Knots: simple minimal knots K(N,p,q,phase) from the command line.

Main entry point. Configures logging from the environment, checks that the
numeric stack is importable, and hands the arguments to the CLI.

Usage:
    python main.py invariants 4 13 5
    python main.py scan 3 4 --p 5..29
    python main.py verify 3 5 4 --phase 1/8
"""

import logging
import os
import sys

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.core.config import get_settings


def setup_logging() -> None:
    """Root logger on stderr so reports on stdout stay machine-readable."""
    logging.basicConfig(
        level=getattr(logging, get_settings().log_level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def check_dependencies() -> bool:
    """
    Verifies the required packages are installed.

    Returns:
        bool: True if all packages import, False otherwise
    """
    logger = logging.getLogger(__name__)
    required_packages = [
        'numpy',
        'pandas',
        'matplotlib',
        'fpdf',
        'pydantic',
        'dotenv',
        'colorama',
        'psutil',
        'sympy',
    ]

    missing = []
    for package in required_packages:
        try:
            __import__(package)
        except ImportError:
            missing.append(package)

    if missing:
        logger.error(f"Missing required packages: {', '.join(missing)}")
        logger.error("Please run: pip install -r requirements.txt")
        return False
    return True


def main() -> int:
    setup_logging()
    if not check_dependencies():
        return 1

    from src.cli import main as cli_main
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

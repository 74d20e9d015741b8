#!/usr/bin/env python3
"""
ComplexCompose - command-line entry point
"""

import sys
import os
import logging
from datetime import datetime

# Add project root to path for imports
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

def setup_logging():
    """Setup logging configuration for the application.

    Log records go to a dated file and to stderr; stdout carries only CSV.
    """
    from config.settings import LOG_DIR, LOG_LEVEL

    os.makedirs(LOG_DIR, exist_ok=True)
    log_file = os.path.join(LOG_DIR, f'complexcompose_{datetime.now().strftime("%Y%m%d")}.log')

    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(sys.stderr)
        ]
    )

    return logging.getLogger(__name__)

def check_dependencies():
    """Check if required packages are available."""
    logger = logging.getLogger(__name__)

    required_packages = ['numpy', 'scipy', 'dotenv']
    missing_packages = []

    for package in required_packages:
        try:
            __import__(package)
            logger.debug(f"{package} is available")
        except ImportError:
            missing_packages.append(package)
            logger.error(f"{package} is missing")

    if missing_packages:
        print(f"Missing required packages: {', '.join(missing_packages)}", file=sys.stderr)
        print(f"\nTo install: pip install -r requirements.txt", file=sys.stderr)
        sys.exit(1)

def main():
    """Main application entry point."""
    check_dependencies()
    logger = setup_logging()
    logger.debug(f"argv: {sys.argv[1:]}")

    from cli.commands import main as run_cli

    sys.exit(run_cli(sys.argv[1:]))

if __name__ == "__main__":
    main()

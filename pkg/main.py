#!/usr/bin/env python3
"""
WeightedCurves

Main entry point for the WeightedCurves command-line tools.
"""

import sys
import os
import logging
from datetime import datetime

from cli.commands import main as run_cli


def setup_logging(verbose=False, log_dir=None):
    """Set up logging for the application"""
    logger = logging.getLogger('weightedcurves')
    logger.setLevel(logging.DEBUG if log_dir else logging.INFO)

    # Console handler
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.INFO if verbose else logging.WARNING)
    console_format = logging.Formatter('%(levelname)s: %(message)s')
    console_handler.setFormatter(console_format)
    logger.addHandler(console_handler)

    # File handler, only when a log directory was asked for
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f'weightedcurves_{datetime.now().strftime("%Y%m%d_%H%M%S")}.log')
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_format = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        file_handler.setFormatter(file_format)
        logger.addHandler(file_handler)

    return logger


def main():
    """Main function to run the command-line tools"""
    return run_cli(sys.argv[1:], setup=setup_logging)


if __name__ == "__main__":
    sys.exit(main())

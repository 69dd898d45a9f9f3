#!/usr/bin/env python
"""Simple entry point for running the CLI."""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())

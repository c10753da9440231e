"""
Tropicalization Moduli Toolkit - Main Entry Point
=================================================

Runs the tropmod command line from a source checkout:

    python src/main.py strata --graph theta --format dot
"""

import sys

from tropmod.cli import main

if __name__ == "__main__":
    sys.exit(main())

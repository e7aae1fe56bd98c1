#!/usr/bin/env python3
"""
main.py
Punto de entrada del laboratorio de circuitos monitorizados Z₂

    python main.py repro fig6a --out-dir data/outputs
    python main.py decode-sweep --config barrido.cfg --workers 8
"""

import sys

from cli_runner.cli import main

if __name__ == "__main__":
    sys.exit(main())

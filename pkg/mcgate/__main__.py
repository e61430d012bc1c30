#!/usr/bin/env python3
"""
mcgate CLI Entry Point
Allows running: python -m mcgate [command]
"""

from .cli import main

if __name__ == "__main__":
    main()

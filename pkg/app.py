"""
Main entry point for the aloof-trees command line

Usage: python app.py <command> [flags]; see `python app.py --help`.
"""
import sys

from modules.cli import main

if __name__ == "__main__":
    sys.exit(main())

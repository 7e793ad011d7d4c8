"""
Entry point for running the command-line tool.
This is a convenience script that can be used instead of: python -m app.main
"""
import sys

from app.main import main

if __name__ == "__main__":
    sys.exit(main())

"""Main entry point for the overtune command-line tool."""

import sys

from overtune.cli import run


def main() -> None:
    """Run the CLI with the process arguments and exit with its code."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

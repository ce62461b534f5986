"""Critical-point moment coefficients for gamma in {0, 0.25, 0.5, 0.75} at N = 2^16."""

import sys

from lmg_coherence.cli import main as cli_main

if __name__ == "__main__":
    sys.exit(cli_main(["table1", *sys.argv[1:]]))

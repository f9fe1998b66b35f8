"""
Reproduction from the command line
==================================

Everything above is also reachable through the ``fracstefan`` command.  Here
the entry point is called in-process; from a shell the equivalent is e.g.
``fracstefan table1`` or ``fracstefan error-grid --alpha 0.25 --out err.csv``.
"""

from fracstefan.cli import main

main(["table1"])
main(["predict-phi", "--alpha", "0.5", "--lambda", "2", "--m", "200"])
main(["profile", "--alpha", "0.75", "--m", "10", "--n", "40", "--phi", "1"])

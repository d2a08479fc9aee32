"""Locate an external CDCL solver for the tests that need one."""

import importlib.util
import os
import shutil
import subprocess
import sys
from pathlib import Path

TOOLS = Path(__file__).parent / "tools"
KNOWN = ("kissat", "cadical", "cryptominisat5")  # competition-format output


def solver_command():
    """Command prefix taking a CNF path, or None when no solver is available.

    $CAPSETS_SAT_SOLVER wins, then known binaries on PATH, then picosat
    through pycosat.
    """
    env = os.environ.get("CAPSETS_SAT_SOLVER")
    if env:
        return env.split()
    for name in KNOWN:
        path = shutil.which(name)
        if path:
            return [path]
    if importlib.util.find_spec("pycosat"):
        return [sys.executable, str(TOOLS / "picosat_solve.py")]
    return None


def run_solver(cmd, cnf_path, timeout=300):
    proc = subprocess.run(cmd + [str(cnf_path)], capture_output=True, text=True, timeout=timeout)
    if proc.returncode not in (0, 10, 20):
        raise RuntimeError(f"solver failed ({proc.returncode}): {proc.stderr[:500]}")
    return proc.stdout

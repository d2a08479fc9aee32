"""
From CNF to an admissible set
=============================

Encode "an I(m, w) exists" as CNF, hand it to a solver, and decode the
model. The package never runs a solver itself; this demo uses pycosat if
it is installed and otherwise stops after writing the DIMACS file.
"""

import sys
import tempfile
from pathlib import Path

from capsets.patterns import build_low_weight
from capsets.satgen import (
    assignment_from_set,
    brute_force_admissible,
    decode_model,
    emit_dimacs,
    encode,
    evaluate,
)

m, w = 6, 3
f, vm = encode(m, w)
print(f"I({m},{w}): {vm.num_cell_vars} cell vars, {len(vm.pairs)} pair vars, {len(f.clauses)} clauses")

out = Path(tempfile.gettempdir()) / f"i_{m}_{w}.cnf"
out.write_bytes(emit_dimacs(f))
print("wrote", out)

# Without a solver: a known I(6,3) must satisfy the formula.
known = build_low_weight(m, w)
print("known set satisfies the CNF:", evaluate(f, assignment_from_set(known, vm)))

try:
    import pycosat
except ImportError:
    sys.exit("pycosat not installed; run any DIMACS solver on the file above")

model = pycosat.solve(f.clauses)
found = decode_model(model, vm)  # raises if the set fails verification
for v in found:
    print("".join(map(str, v)))

print("backtracking oracle:", brute_force_admissible(m, w).status)

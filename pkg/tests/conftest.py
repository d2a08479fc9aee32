import os
import random

import pytest

from capsets.constructions import ExtendableTriple
from capsets.gf3 import VectorSet, all_vectors, is_cap_set, is_extendable
from capsets.patterns import is_admissible, is_recursively_admissible

# criterion number -> list of (label, status)
ACCEPTANCE = {}


def record(criterion: int, label: str, status: str) -> None:
    """status is PASS, FAIL or SKIP."""
    ACCEPTANCE.setdefault(criterion, []).append((label, status))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("CAPSETS_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow; set CAPSETS_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        for label, status in ACCEPTANCE[crit]:
            terminalreporter.write_line(f"criterion {crit}: {status}  {label}")


# -- small random instances ---------------------------------------------------

def greedy_cap(rng: random.Random, n: int, limit=None) -> VectorSet:
    pts = list(all_vectors(n))
    rng.shuffle(pts)
    chosen = []
    forbidden = set()
    for p in pts:
        if p in forbidden:
            continue
        forbidden |= {tuple((-a - b) % 3 for a, b in zip(p, q)) for q in chosen}
        chosen.append(p)
        if limit and len(chosen) >= limit:
            break
    s = VectorSet(chosen, n)
    assert is_cap_set(s)
    return s


def greedy_triple(rng: random.Random, n: int) -> ExtendableTriple:
    """Random extendable triple in F_3^n with every part nonempty."""
    pts = list(all_vectors(n))
    while True:
        rng.shuffle(pts)
        parts = [[], [], []]
        for p in pts:
            # targets: A0, A1, A2, or A1 and A2 together
            k = rng.randrange(4)
            trial = [list(x) for x in parts]
            for j in ((k,) if k < 3 else (1, 2)):
                trial[j].append(p)
            if is_extendable(*(VectorSet(x, n) for x in trial)):
                parts = trial
        if all(parts):
            return ExtendableTriple(*(VectorSet(x, n) for x in parts))


def greedy_pattern(rng: random.Random, m: int, recursive=False, limit=None) -> VectorSet:
    def check(s):
        # a singleton is never recursively admissible, so grow through it
        if recursive and len(s) > 1:
            return is_recursively_admissible(s)
        return is_admissible(s)

    pts = [v for v in all_vectors(m) if any(v)]
    rng.shuffle(pts)
    chosen = []
    for p in pts:
        if check(VectorSet(chosen + [p], m)):
            chosen.append(p)
            if limit and len(chosen) >= limit:
                break
    return VectorSet(chosen, m)

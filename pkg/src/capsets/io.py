"""Reading and writing vector-set files.

One vector per line as a string of digits 0/1/2. Blank lines and lines
starting with '#' are ignored. Admissible-set files may carry a header
``# admissible m=<m> w=<w>`` which is checked on load.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional, Union

from .gf3 import VectorSet, weight

_HEADER = re.compile(r"#\s*admissible\s+m=(\d+)(?:\s+w=(\d+))?")


class FormatError(ValueError):
    pass


def parse_vectors(text: str, source: str = "<string>"):
    """Parse file contents into ``(VectorSet, header)``.

    ``header`` is ``(m, w)`` from an admissible header line, or None; ``w``
    may itself be None when the header omits it.
    """
    vectors = []
    header = None
    dimension = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER.match(line)
            if match and header is None:
                m = int(match.group(1))
                w = int(match.group(2)) if match.group(2) else None
                header = (m, w)
            continue
        if any(c not in "012" for c in line):
            raise FormatError(f"{source}:{lineno}: invalid characters in {line!r}")
        if dimension is None:
            dimension = len(line)
        elif len(line) != dimension:
            raise FormatError(
                f"{source}:{lineno}: length {len(line)}, expected {dimension}"
            )
        vectors.append(tuple(int(c) for c in line))
    if dimension is None:
        if header is None:
            raise FormatError(f"{source}: no vectors and no header")
        dimension = header[0]
    try:
        vs = VectorSet(vectors, dimension)
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None
    if header is not None:
        m, w = header
        if m != dimension:
            raise FormatError(f"{source}: header m={m} but vectors have length {dimension}")
        if w is not None and any(weight(v) != w for v in vs):
            raise FormatError(f"{source}: header w={w} but weights are {sorted(vs.weights())}")
    return vs, header


def read_vectors(path: Union[str, Path]) -> VectorSet:
    path = Path(path)
    return parse_vectors(path.read_text(), str(path))[0]


def format_vectors(s: VectorSet, header: Optional[str] = None) -> str:
    lines = [header] if header else []
    lines.extend("".join(map(str, v)) for v in s)
    return "\n".join(lines) + "\n"


def admissible_header(s: VectorSet) -> str:
    ws = s.weights()
    if len(ws) == 1:
        return f"# admissible m={s.dimension} w={next(iter(ws))}"
    return f"# admissible m={s.dimension}"


def write_vectors(path: Union[str, Path], s: VectorSet, header: Optional[str] = None) -> None:
    Path(path).write_text(format_vectors(s, header))


def write_admissible(path: Union[str, Path], s: VectorSet) -> None:
    write_vectors(path, s, admissible_header(s))

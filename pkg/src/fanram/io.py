"""Reading and writing colorings.

Native format ".2col": line 1 is ``p 2col N``; the rest of the file is
exactly N(N-1)/2 characters ``B``/``W`` separated by arbitrary whitespace,
in canonical pair order (0,1), (0,2), ..., (0,N-1), (1,2), ...

Standard graph6 is also accepted for the black subgraph; the white pairs
are the complement.
"""

from __future__ import annotations

import os

from .coloring import BLACK, Coloring, all_pairs
from .errors import ColoringFormatError


def write_2col(c: Coloring) -> str:
    """Canonical text form: header plus one line per upper-triangle row."""
    lines = [f"p 2col {c.N}"]
    for u in range(c.N - 1):
        row = "".join(
            "B" if c.pair_color(u, v) is BLACK else "W" for v in range(u + 1, c.N)
        )
        lines.append(row)
    return "\n".join(lines) + "\n"


def parse_2col(text: str) -> Coloring:
    lines = text.splitlines()
    if not lines:
        raise ColoringFormatError("empty file", line=1)
    header = lines[0].split()
    if len(header) != 3 or header[0] != "p" or header[1] != "2col":
        raise ColoringFormatError("expected header 'p 2col N'", line=1)
    try:
        N = int(header[2])
    except ValueError:
        raise ColoringFormatError(f"bad vertex count {header[2]!r}", line=1) from None
    if N < 1:
        raise ColoringFormatError(f"bad vertex count {N}", line=1)

    need = N * (N - 1) // 2
    pairs = all_pairs(N)
    bits = 0
    k = 0
    for lineno, line in enumerate(lines[1:], start=2):
        for offset, ch in enumerate(line):
            if ch.isspace():
                continue
            if ch not in "BW":
                raise ColoringFormatError(
                    f"unexpected character {ch!r}", line=lineno, offset=offset
                )
            if k >= need:
                raise ColoringFormatError(
                    f"more than {need} pair entries", line=lineno, offset=offset
                )
            if ch == "B":
                bits |= 1 << k
            k += 1
    if k < need:
        u, v = pairs[k] if need else (0, 0)
        raise ColoringFormatError(
            f"only {k} of {need} pair entries; first missing pair is ({u},{v})",
            line=len(lines),
        )
    return Coloring.from_pair_bits(N, bits)


def parse_graph6(text: str) -> Coloring:
    """Decode one graph6 line; its edges become the black pairs."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ColoringFormatError("empty graph6 input", line=1)
    data = [ord(ch) - 63 for ch in s]
    for offset, value in enumerate(data):
        if not 0 <= value <= 63:
            raise ColoringFormatError("byte out of graph6 range", line=1, offset=offset)
    if data[0] < 63:
        N = data[0]
        body = data[1:]
    elif len(data) >= 4 and data[1] < 63:
        N = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise ColoringFormatError("unsupported graph6 size prefix", line=1)
    if N < 1:
        raise ColoringFormatError("graph6 graph needs at least one vertex", line=1)
    npairs = N * (N - 1) // 2
    if len(body) != (npairs + 5) // 6:
        raise ColoringFormatError(
            f"graph6 body length {len(body)} does not match n={N}", line=1
        )
    bitstream = 0
    for value in body:
        bitstream = bitstream << 6 | value
    bitstream >>= len(body) * 6 - npairs

    # graph6 bit order is column-major: (0,1), (0,2), (1,2), (0,3), ...
    adj = [0] * N
    k = npairs - 1
    for v in range(1, N):
        for u in range(v):
            if bitstream >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k -= 1
    return Coloring._raw(N, tuple(adj))


def parse_coloring(text: str) -> Coloring:
    """Sniff the format: a 'p 2col' header wins, otherwise try graph6."""
    stripped = text.lstrip()
    if stripped.startswith("p "):
        return parse_2col(text)
    return parse_graph6(text)


def load_coloring(path: str | os.PathLike) -> Coloring:
    with open(path, "r", encoding="ascii") as fh:
        return parse_coloring(fh.read())


def save_2col(c: Coloring, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write_2col(c))

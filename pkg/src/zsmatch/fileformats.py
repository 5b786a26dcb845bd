"""Line-oriented text formats for instances and witnesses.

Instance::

    p d n
    u v c_1 ... c_d        # one line per ordered pair u != v, lexicographic order

Witness::

    cycle v_0 v_1 ... v_{l-1}
    sum c_1 ... c_d

ASCII, single spaces, LF line endings.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec, GroupVector
from .zerosum import LabelledDigraph


class FormatError(ValueError):
    pass


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in line.split(" ")]
    except ValueError:
        raise FormatError(f"line {lineno}: expected single-space separated integers: {line!r}") from None


def render_instance(dg: LabelledDigraph) -> str:
    spec = dg.spec
    lines = [f"{spec.p} {spec.d} {dg.n}"]
    for u in range(dg.n):
        for v in range(dg.n):
            if u != v:
                lines.append(" ".join(map(str, (u, v, *dg.w[u, v].tolist()))))
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> LabelledDigraph:
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    header = _ints(lines[0], 1)
    if len(header) != 3:
        raise FormatError("header must be 'p d n'")
    p, d, n = header
    try:
        spec = FieldSpec(p, d)
    except ValueError as exc:
        raise FormatError(f"header: {exc}") from None
    if n < 1:
        raise FormatError("n must be positive")
    expected = [(u, v) for u in range(n) for v in range(n) if u != v]
    body = lines[1:]
    if len(body) != len(expected):
        raise FormatError(f"expected {len(expected)} arc lines, found {len(body)}")
    w = np.zeros((n, n, d), dtype=np.int64)
    for i, (line, (u, v)) in enumerate(zip(body, expected), start=2):
        vals = _ints(line, i)
        if len(vals) != d + 2:
            raise FormatError(f"line {i}: expected {d + 2} fields, found {len(vals)}")
        if (vals[0], vals[1]) != (u, v):
            raise FormatError(f"line {i}: expected arc {u} {v}, found {vals[0]} {vals[1]}")
        coords = vals[2:]
        if any(not 0 <= c < p for c in coords):
            raise FormatError(f"line {i}: residues must lie in [0, {p})")
        w[u, v] = coords
    return LabelledDigraph(spec, w)


def render_witness(vertices, total: GroupVector) -> str:
    return "cycle " + " ".join(map(str, vertices)) + "\nsum " + " ".join(map(str, total.coords)) + "\n"


def parse_witness(text: str) -> tuple[list[int], list[int]]:
    lines = text.split("\n")
    if len(lines) != 3 or lines[2] != "":
        raise FormatError("witness must have exactly two LF-terminated lines")
    cyc, tot = lines[0].split(" "), lines[1].split(" ")
    if cyc[0] != "cycle" or tot[0] != "sum":
        raise FormatError("witness lines must start with 'cycle' and 'sum'")
    vertices = _ints(" ".join(cyc[1:]), 1) if len(cyc) > 1 else []
    total = _ints(" ".join(tot[1:]), 2) if len(tot) > 1 else []
    if len(vertices) < 2:
        raise FormatError("a cycle needs at least two vertices")
    if len(set(vertices)) != len(vertices):
        raise FormatError("cycle repeats a vertex")
    return vertices, total

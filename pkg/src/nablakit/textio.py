"""Line-oriented UTF-8 text formats.

Complex files: one `simplex v0 v1 ...` line per simplex, vertices sorted
strictly increasing; `#` starts a comment.  Map files: `source: <path>` and
`target: <path>` headers (relative to the map file), then `map v -> w`
lines.  Tower files: `levels: k`, then `level i` ... `end` complex blocks,
then `bond i` ... `end` map blocks (bond i maps level i+1 to level i).
Certificates: `collapse start=<id> finish=<id>`, then one
`step <free-face> < <cofacet>` line per elementary collapse.

Label tokens: a plain simplex is `v0.v1.v2`; a resolution vertex is
`v0.v1@level` and a resolution simplex joins its vertices with `/`; a
staircase cell joins its blocks with `|`, levels inside a block with `.`.
"""

from __future__ import annotations

import os
from pathlib import Path

from .cells import Cell, validate_cell
from .collapse import CollapseSequence, CollapseStep
from .complexes import SimplicialComplex, SimplicialMap, as_simplex, make_complex
from .errors import InputError
from .towers import SubcomplexFamily, Tower
from .resolution import sort_label_simplex


# ---------------------------------------------------------------------------
# complexes


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_complex(text: str) -> SimplicialComplex:
    gens = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] != "simplex":
            raise InputError(f"line {lineno}: expected 'simplex ...', got {line!r}")
        try:
            verts = [int(p) for p in parts[1:]]
        except ValueError:
            raise InputError(f"line {lineno}: non-integer vertex in {line!r}")
        gens.append(as_simplex(verts))
    return make_complex(gens)


def format_complex(K: SimplicialComplex, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    for s in K.sorted_simplexes():
        lines.append("simplex " + " ".join(str(v) for v in s))
    return "\n".join(lines) + "\n"


def read_complex(path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"))


def write_complex(K: SimplicialComplex, path, comments=None):
    atomic_write(path, format_complex(K, comments))


# ---------------------------------------------------------------------------
# maps


def parse_vertex_map_lines(lines) -> dict[int, int]:
    assignment = {}
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "map" or parts[2] != "->":
            raise InputError(f"line {lineno}: expected 'map v -> w', got {line!r}")
        try:
            v, w = int(parts[1]), int(parts[3])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer vertex in {line!r}")
        if v in assignment:
            raise InputError(f"line {lineno}: vertex {v} mapped twice")
        assignment[v] = w
    return assignment


def read_map(path) -> SimplicialMap:
    path = Path(path)
    source = target = None
    body = []
    for lineno, line in _content_lines(path.read_text(encoding="utf-8")):
        if line.startswith("source:"):
            source = line.split(":", 1)[1].strip()
        elif line.startswith("target:"):
            target = line.split(":", 1)[1].strip()
        else:
            body.append((lineno, line))
    if source is None or target is None:
        raise InputError("map file needs 'source:' and 'target:' headers")
    K = read_complex(path.parent / source)
    L = read_complex(path.parent / target)
    return SimplicialMap(K, L, parse_vertex_map_lines(body))


def format_map(f: SimplicialMap, source_name: str, target_name: str) -> str:
    lines = [f"source: {source_name}", f"target: {target_name}"]
    for v in f.source.vertices:
        lines.append(f"map {v} -> {f.assignment[v]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# towers and families


def format_tower(T: Tower) -> str:
    lines = [f"levels: {len(T.levels)}"]
    for i, K in enumerate(T.levels):
        lines.append(f"level {i}")
        for s in K.sorted_simplexes():
            lines.append("simplex " + " ".join(str(v) for v in s))
        lines.append("end")
    for i, p in enumerate(T.bonds):
        lines.append(f"bond {i}")
        for v in p.source.vertices:
            lines.append(f"map {v} -> {p.assignment[v]}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_blocks(text: str, kind: str):
    """Yield (header, [(lineno, line), ...]) blocks delimited by 'end'."""
    lines = list(_content_lines(text))
    if not lines:
        raise InputError(f"empty {kind} file")
    header_line = lines[0][1]
    if not header_line.startswith("levels:"):
        raise InputError(f"{kind} file must start with 'levels: k'")
    try:
        count = int(header_line.split(":", 1)[1])
    except ValueError:
        raise InputError(f"bad level count {header_line!r}")
    blocks = []
    current = None
    for lineno, line in lines[1:]:
        parts = line.split()
        if parts[0] in ("level", "bond"):
            if current is not None:
                raise InputError(f"line {lineno}: unterminated block")
            current = ((parts[0], int(parts[1])), [])
        elif line == "end":
            if current is None:
                raise InputError(f"line {lineno}: stray 'end'")
            blocks.append(current)
            current = None
        else:
            if current is None:
                raise InputError(f"line {lineno}: content outside a block")
            current[1].append((lineno, line))
    if current is not None:
        raise InputError("unterminated block at end of file")
    return count, blocks


def parse_tower(text: str) -> Tower:
    count, blocks = _parse_blocks(text, "tower")
    levels: dict[int, SimplicialComplex] = {}
    bonds_raw: dict[int, dict[int, int]] = {}
    for (kind, idx), body in blocks:
        if kind == "level":
            gens = []
            for lineno, line in body:
                parts = line.split()
                if parts[0] != "simplex":
                    raise InputError(f"line {lineno}: expected 'simplex ...'")
                gens.append(as_simplex(int(p) for p in parts[1:]))
            levels[idx] = make_complex(gens)
        else:
            bonds_raw[idx] = parse_vertex_map_lines(body)
    if sorted(levels) != list(range(count)):
        raise InputError(f"expected levels 0..{count - 1}, got {sorted(levels)}")
    if sorted(bonds_raw) != list(range(count - 1)):
        raise InputError(f"expected bonds 0..{count - 2}, got {sorted(bonds_raw)}")
    level_list = [levels[i] for i in range(count)]
    bonds = [
        SimplicialMap(level_list[i + 1], level_list[i], bonds_raw[i])
        for i in range(count - 1)
    ]
    return Tower(levels=tuple(level_list), bonds=tuple(bonds))


def read_tower(path) -> Tower:
    return parse_tower(Path(path).read_text(encoding="utf-8"))


def write_tower(T: Tower, path):
    atomic_write(path, format_tower(T))


def format_family(F: SubcomplexFamily) -> str:
    lines = [f"levels: {len(F.members)}"]
    for i, K in enumerate(F.members):
        lines.append(f"level {i}")
        for s in K.sorted_simplexes():
            lines.append("simplex " + " ".join(str(v) for v in s))
        lines.append("end")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SubcomplexFamily:
    count, blocks = _parse_blocks(text, "family")
    members: dict[int, SimplicialComplex] = {}
    for (kind, idx), body in blocks:
        if kind != "level":
            raise InputError("family files contain level blocks only")
        gens = []
        for lineno, line in body:
            parts = line.split()
            if parts[0] != "simplex":
                raise InputError(f"line {lineno}: expected 'simplex ...'")
            gens.append(as_simplex(int(p) for p in parts[1:]))
        members[idx] = make_complex(gens)
    if sorted(members) != list(range(count)):
        raise InputError(f"expected levels 0..{count - 1}, got {sorted(members)}")
    return SubcomplexFamily(members=tuple(members[i] for i in range(count)))


def read_family(path) -> SubcomplexFamily:
    return parse_family(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# certificate labels


def format_simplex_token(s) -> str:
    return ".".join(str(v) for v in s)


def parse_simplex_token(token: str):
    try:
        return as_simplex(int(p) for p in token.split("."))
    except ValueError:
        raise InputError(f"bad simplex token {token!r}")


def format_label_vertex(label) -> str:
    base, level = label
    return f"{format_simplex_token(base)}@{level}"


def format_label_simplex(ls) -> str:
    return "/".join(format_label_vertex(lab) for lab in ls)


def parse_label_simplex(token: str):
    labels = []
    for part in token.split("/"):
        if "@" not in part:
            raise InputError(f"bad resolution vertex token {part!r}")
        base, level = part.rsplit("@", 1)
        try:
            labels.append((parse_simplex_token(base), int(level)))
        except ValueError:
            raise InputError(f"bad level in token {part!r}")
    return sort_label_simplex(labels)


def format_cell_token(C: Cell) -> str:
    return "|".join(".".join(str(x) for x in A) for A in C)


def parse_cell_token(token: str) -> Cell:
    try:
        cell = tuple(
            tuple(int(x) for x in block.split(".")) for block in token.split("|")
        )
    except ValueError:
        raise InputError(f"bad cell token {token!r}")
    return validate_cell(cell)


def format_item(kind: str, item) -> str:
    if kind == "cells":
        return format_cell_token(item)
    return format_label_simplex(item)


def parse_item(kind: str, token: str):
    if kind == "cells":
        return parse_cell_token(token)
    return parse_label_simplex(token)


# ---------------------------------------------------------------------------
# certificates


def format_certificate(seq: CollapseSequence) -> str:
    lines = [f"collapse start={seq.start} finish={seq.finish}"]
    for st in seq.steps:
        lines.append(
            f"step {format_item(seq.kind, st.free_face)} < "
            f"{format_item(seq.kind, st.cofacet)}"
        )
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, kind: str) -> CollapseSequence:
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty certificate")
    header = lines[0][1]
    parts = header.split()
    if parts[0] != "collapse":
        raise InputError("certificate must start with a 'collapse' header")
    fields = dict(p.split("=", 1) for p in parts[1:] if "=" in p)
    steps = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "step" or parts[2] != "<":
            raise InputError(
                f"line {lineno}: expected 'step <free> < <cofacet>', got {line!r}"
            )
        steps.append(
            CollapseStep(
                free_face=parse_item(kind, parts[1]),
                cofacet=parse_item(kind, parts[3]),
            )
        )
    return CollapseSequence(
        kind=kind,
        start=fields.get("start", "?"),
        finish=fields.get("finish", "?"),
        steps=tuple(steps),
    )


def read_certificate(path, kind: str) -> CollapseSequence:
    return parse_certificate(Path(path).read_text(encoding="utf-8"), kind)


def write_certificate(seq: CollapseSequence, path):
    atomic_write(path, format_certificate(seq))


# ---------------------------------------------------------------------------


def atomic_write(path, text: str):
    """Write via a temporary file and rename, so readers never see partials."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)

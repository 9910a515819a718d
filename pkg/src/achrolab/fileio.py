"""Plain-text matrix files and canonical JSON reports.

File format::

    # optional comment lines
    p q
    tok tok ... tok      (p lines of q whitespace-separated tokens)

Rendering uses single spaces and LF line endings.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .matrix import ColourMatrix, MatrixError, build_matrix


class ParseError(ValueError):
    pass


def parse_matrix(text: str) -> ColourMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("missing header line 'p q'")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ParseError(f"bad header {lines[0]!r}, expected 'p q'")
    p, q = int(head[0]), int(head[1])
    if p < 1 or q < 1:
        raise ParseError("p and q must be positive")
    body = lines[1:]
    if len(body) != p:
        raise ParseError(f"expected {p} data lines, found {len(body)}")
    rows = []
    for n, ln in enumerate(body, 1):
        toks = ln.split()
        if len(toks) != q:
            raise ParseError(f"data line {n} has {len(toks)} tokens, expected {q}")
        rows.append(toks)
    try:
        return build_matrix(rows, p=p, q=q)
    except MatrixError as e:
        raise ParseError(str(e)) from e


def render_matrix(m: ColourMatrix) -> str:
    out = [f"{m.p} {m.q}"]
    out += [" ".join(row) for row in m.rows_as_tokens()]
    return "\n".join(out) + "\n"


def read_matrix(path: str | Path) -> ColourMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def write_matrix(m: ColourMatrix, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_matrix(m))


def _latex_token(tok: str) -> str:
    head = tok.rstrip("0123456789")
    tail = tok[len(head):]
    if head and tail and head.isalpha():
        return f"{head}_{{{tail}}}"
    return tok


def render_latex(m: ColourMatrix) -> str:
    """The matrix as a LaTeX pmatrix, tokens like ``x3`` rendered as ``x_{3}``."""
    body = " \\\\\n".join(" & ".join(_latex_token(t) for t in row) for row in m.rows_as_tokens())
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


def dumps(doc: dict) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

"""Textual group-definition files.

Two stanza kinds, one group per file.  Blank lines and `#` comments are
ignored everywhere.  The exact grammar:

  file      = { comment | blank } , stanza ;
  stanza    = perm-stanza | cayley-stanza ;

  perm-stanza
            = "perm" NEWLINE , generator-line , { generator-line } ;
  generator-line
            = cycle , { cycle } ;    e.g.  (1 2 3)(4 5)
  cycle     = "(" , point , { point } , ")" ;   points are 1-based integers,
              cycles of one line must be disjoint; omitted points are fixed.

  cayley-stanza
            = "cayley" NEWLINE , row , { row } ;
  row       = n space-separated integers in 0..n-1 ;  entry (g, h) of row g,
              column h is the index of g*h.  The table must be a group table
              (checked on load).

`perm` files build the group generated by the listed permutations; element
indices follow the sorted one-line forms of the elements, so output is
deterministic.
"""

from __future__ import annotations

import re

from .groups import FiniteGroup, GroupError, closure

__all__ = ["ParseError", "parse_group_text", "load_group", "format_cayley", "save_group"]


class ParseError(GroupError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_perm_line(line: str, lineno: int, degree: int) -> tuple[int, ...]:
    stripped = _CYCLE_RE.sub("", line).strip()
    if stripped:
        raise ParseError(f"unexpected text {stripped!r} in generator", lineno)
    perm = list(range(degree))
    used = set()
    for m in _CYCLE_RE.finditer(line):
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            pts = [int(tok) - 1 for tok in body]
        except ValueError:
            raise ParseError(f"non-integer point in cycle {m.group(0)!r}", lineno) from None
        if any(p < 0 or p >= degree for p in pts):
            raise ParseError("cycle point out of range", lineno)
        if used & set(pts):
            raise ParseError("cycles on one line must be disjoint", lineno)
        used |= set(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def parse_group_text(text: str) -> FiniteGroup:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty group definition", 1)
    lineno, head = lines[0]
    if head == "perm":
        body = lines[1:]
        if not body:
            raise ParseError("perm stanza needs at least one generator line", lineno)
        degree = 0
        for ln, line in body:
            for m in _CYCLE_RE.finditer(line):
                for tok in m.group(1).replace(",", " ").split():
                    try:
                        degree = max(degree, int(tok))
                    except ValueError:
                        raise ParseError(f"non-integer point {tok!r}", ln) from None
        if degree == 0:
            raise ParseError("no points named in any cycle", lineno)
        gens = [_parse_perm_line(line, ln, degree) for ln, line in body]
        return closure(gens)
    if head == "cayley":
        body = lines[1:]
        if not body:
            raise ParseError("cayley stanza needs table rows", lineno)
        n = None
        rows = []
        for ln, line in body:
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError:
                raise ParseError("non-integer table entry", ln) from None
            if n is None:
                n = len(row)
            if len(row) != n:
                raise ParseError(f"expected {n} entries, got {len(row)}", ln)
            if any(x < 0 or x >= n for x in row):
                raise ParseError("table entry out of range", ln)
            rows.append(row)
        if len(rows) != n:
            raise ParseError(f"expected {n} rows, got {len(rows)}", body[-1][0])
        try:
            return FiniteGroup(rows, validate=True)
        except GroupError as exc:
            raise ParseError(str(exc), lineno) from None
    raise ParseError(f"unknown stanza {head!r} (expected 'perm' or 'cayley')", lineno)


def load_group(path) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_text(fh.read())


def format_cayley(G: FiniteGroup) -> str:
    width = len(str(G.order - 1))
    out = ["cayley"]
    for g in range(G.order):
        out.append(" ".join(str(int(x)).rjust(width) for x in G.table[g]))
    return "\n".join(out) + "\n"


def save_group(G: FiniteGroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_cayley(G))

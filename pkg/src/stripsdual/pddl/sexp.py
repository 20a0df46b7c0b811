"""S-expression reader that keeps source positions for diagnostics."""
from __future__ import annotations

from ..errors import PddlError


class Sym(str):
    """A lower-cased symbol carrying its source line and column."""

    line: int
    column: int

    def __new__(cls, text, line, column):
        obj = super().__new__(cls, text.lower())
        obj.line = line
        obj.column = column
        return obj


class SList(list):
    def __init__(self, items=(), line=0, column=0):
        super().__init__(items)
        self.line = line
        self.column = column


def pos(node):
    return getattr(node, "line", None), getattr(node, "column", None)


def parse_sexp(text: str) -> SList:
    """Parse exactly one top-level s-expression; ``;`` starts a comment."""
    stack: list[SList] = []
    result = None
    line, col = 1, 0
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 0
            i += 1
            continue
        col += 1
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "(":
            if result is not None:
                raise PddlError("trailing content after top-level expression", line, col)
            stack.append(SList(line=line, column=col))
            i += 1
        elif ch == ")":
            if not stack:
                raise PddlError("unbalanced ')'", line, col)
            done = stack.pop()
            if stack:
                stack[-1].append(done)
            else:
                result = done
            i += 1
        else:
            start, start_col = i, col
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
            col = start_col + (i - start) - 1
            if not stack:
                raise PddlError(f"unexpected symbol {text[start:i]!r} outside parentheses", line, start_col)
            stack[-1].append(Sym(text[start:i], line, start_col))
    if stack:
        raise PddlError("unexpected end of input: unclosed '('", *pos(stack[-1]))
    if result is None:
        raise PddlError("empty input", 1, 1)
    return result

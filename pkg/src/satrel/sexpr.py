"""A small s-expression reader/writer shared by all file formats.

Files may begin with a TOML header fenced by ``+++`` lines::

    +++
    signature = "s"
    +++
    (forall u (= u u))

``;`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at offset {pos})")


class Sym(str):
    """An atom token remembering where it started."""

    pos: int = -1

    def __new__(cls, text: str, pos: int = -1):
        obj = super().__new__(cls, text)
        obj.pos = pos
        return obj


class SList(list):
    pos: int = -1

    def __init__(self, items=(), pos: int = -1):
        super().__init__(items)
        self.pos = pos


_DELIMS = set("() \t\r\n;")


def read_all(text: str, offset: int = 0) -> list:
    """Read every top-level s-expression in ``text``."""
    out = []
    stack: list = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "(":
            stack.append(SList(pos=i + offset))
            i += 1
        elif ch == ")":
            if not stack:
                raise ParseError("unbalanced ')'", i + offset)
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
            i += 1
        elif ch == "{":
            # HF set literal: one token up to the matching brace
            depth, j = 0, i
            while j < n:
                if text[j] == "{":
                    depth += 1
                elif text[j] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                elif text[j] in "();":
                    raise ParseError("bad character inside set literal", j + offset)
                j += 1
            if depth:
                raise ParseError("unterminated set literal", i + offset)
            tok = Sym(text[i : j + 1], i + offset)
            (stack[-1] if stack else out).append(tok)
            i = j + 1
        else:
            j = i
            while j < n and text[j] not in _DELIMS:
                j += 1
            tok = Sym(text[i:j], i + offset)
            (stack[-1] if stack else out).append(tok)
            i = j
    if stack:
        raise ParseError("unterminated '('", stack[-1].pos)
    return out


def read_one(text: str, offset: int = 0):
    items = read_all(text, offset)
    if len(items) != 1:
        raise ParseError(f"expected exactly one expression, found {len(items)}", offset)
    return items[0]


def write(x) -> str:
    parts: list = []

    def emit(y):
        if isinstance(y, (list, tuple)):
            parts.append("(")
            for k, z in enumerate(y):
                if k:
                    parts.append(" ")
                emit(z)
            parts.append(")")
        elif isinstance(y, bool):
            parts.append("true" if y else "false")
        else:
            parts.append(str(y))

    emit(x)
    return "".join(parts)


def split_header(text: str):
    """Return (header dict, body text, body offset)."""
    stripped = text.lstrip()
    if not stripped.startswith("+++"):
        return {}, text, 0
    start = text.index("+++") + 3
    end = text.find("+++", start)
    if end < 0:
        raise ParseError("unterminated +++ header", start - 3)
    try:
        header = tomllib.loads(text[start:end])
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"bad header: {exc}", start) from None
    return header, text[end + 3 :], end + 3

"""ASPARTIX-style text interchange for finite frameworks.

A document is a sequence of ``arg(NAME).`` and ``att(NAME,NAME).``
statements; ``%`` and ``#`` start comments.  Indices follow declaration
order, and ``emit_apx`` produces the canonical form (arguments first, then
attacks sorted by source and target).
"""

from __future__ import annotations

import re

from .core import FiniteAF, InputError

_STATEMENT = re.compile(
    r"\s*(arg|att)\s*\(\s*([A-Za-z0-9_]+)\s*(?:,\s*([A-Za-z0-9_]+)\s*)?\)\s*\."
)


def parse_apx(text: str) -> tuple[FiniteAF, list[str]]:
    """Parse a document into a framework plus its names in index order."""
    names: list[str] = []
    index: dict[str, int] = {}
    attacks: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = re.split(r"[%#]", raw, maxsplit=1)[0]
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _STATEMENT.match(line, pos)
            if m is None:
                raise InputError(f"line {lineno}: cannot parse {line[pos:].strip()!r}")
            kind, first, second = m.group(1), m.group(2), m.group(3)
            if kind == "arg":
                if second is not None:
                    raise InputError(f"line {lineno}: arg takes one name")
                if first in index:
                    raise InputError(f"line {lineno}: duplicate argument {first!r}")
                index[first] = len(names)
                names.append(first)
            else:
                if second is None:
                    raise InputError(f"line {lineno}: att takes two names")
                for name in (first, second):
                    if name not in index:
                        raise InputError(f"line {lineno}: undeclared name {name!r}")
                attacks.add((index[first], index[second]))
            pos = m.end()
    return FiniteAF(len(names), frozenset(attacks)), names


def default_names(n: int) -> list[str]:
    return [f"a{i}" for i in range(n)]


def emit_apx(af: FiniteAF, names: list[str] | None = None) -> str:
    """Canonical document for a framework."""
    if names is None:
        names = default_names(af.n_args)
    if len(names) != af.n_args:
        raise InputError(f"expected {af.n_args} names, got {len(names)}")
    if len(set(names)) != len(names):
        raise InputError("names must be distinct")
    lines = [f"arg({name})." for name in names]
    lines += [f"att({names[a]},{names[b]})." for a, b in sorted(af.attacks)]
    return "\n".join(lines) + "\n"

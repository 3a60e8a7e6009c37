"""Finite argumentation frameworks and their extension semantics.

An argumentation framework is a directed graph whose vertices are arguments
and whose edges are attacks.  Arguments are identified by integers
``0 .. n_args-1``.  This module holds the definitional versions of the
semantics checks; :mod:`finaf.oracle` layers brute-force enumeration on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

#: Semantics over finite frameworks.
FINITE_SEMANTICS = ("cf", "na", "ad", "co", "stb")

#: Variants selecting only the infinite extensions of a semantics.
INFINITE_SEMANTICS = ("inf-cf", "inf-na", "inf-ad", "inf-co", "inf-stb")

ALL_SEMANTICS = FINITE_SEMANTICS + INFINITE_SEMANTICS


class InputError(ValueError):
    """A malformed input: bad argument index, unknown tag, broken precondition."""


class ResourceLimitError(RuntimeError):
    """An enumeration or search exceeded its configured cap.

    ``partial`` carries whatever progress marker the failing operation had
    (e.g. a frontier size), purely for diagnostics.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def check_semantics(sigma: str, *, finite_only: bool = False) -> str:
    allowed = FINITE_SEMANTICS if finite_only else ALL_SEMANTICS
    if sigma not in allowed:
        raise InputError(f"unknown semantics tag {sigma!r}; expected one of {allowed}")
    return sigma


@dataclass(frozen=True)
class FiniteAF:
    """An immutable finite attack graph over arguments ``0 .. n_args-1``."""

    n_args: int
    attacks: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n_args < 0:
            raise InputError(f"n_args must be >= 0, got {self.n_args}")
        pairs = frozenset((int(a), int(b)) for a, b in self.attacks)
        for a, b in pairs:
            if not (0 <= a < self.n_args and 0 <= b < self.n_args):
                raise InputError(f"attack ({a},{b}) out of range for {self.n_args} arguments")
        object.__setattr__(self, "attacks", pairs)

    @cached_property
    def attacker_sets(self) -> tuple[frozenset[int], ...]:
        """Per argument, the set of its attackers."""
        sets: list[set[int]] = [set() for _ in range(self.n_args)]
        for a, b in self.attacks:
            sets[b].add(a)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def target_sets(self) -> tuple[frozenset[int], ...]:
        """Per argument, the set of arguments it attacks."""
        sets: list[set[int]] = [set() for _ in range(self.n_args)]
        for a, b in self.attacks:
            sets[a].add(b)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def attacker_masks(self) -> tuple[int, ...]:
        """Attacker sets as bitmasks, for brute-force scans."""
        masks = [0] * self.n_args
        for a, b in self.attacks:
            masks[b] |= 1 << a
        return tuple(masks)

    @cached_property
    def target_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n_args
        for a, b in self.attacks:
            masks[a] |= 1 << b
        return tuple(masks)

    def attacks_arg(self, a: int, b: int) -> bool:
        return (a, b) in self.attacks


def _check_members(af: FiniteAF, members: Iterable[int]) -> frozenset[int]:
    s = frozenset(int(m) for m in members)
    for m in s:
        if not 0 <= m < af.n_args:
            raise InputError(f"argument {m} out of range for {af.n_args} arguments")
    return s


def attackers(af: FiniteAF, members: Iterable[int]) -> frozenset[int]:
    """All arguments attacking some member (the set S^-)."""
    s = _check_members(af, members)
    out: set[int] = set()
    for m in s:
        out |= af.attacker_sets[m]
    return frozenset(out)


def attacked_by(af: FiniteAF, members: Iterable[int]) -> frozenset[int]:
    """All arguments attacked by some member (the set S^+)."""
    s = _check_members(af, members)
    out: set[int] = set()
    for m in s:
        out |= af.target_sets[m]
    return frozenset(out)


def characteristic(af: FiniteAF, members: Iterable[int]) -> frozenset[int]:
    """Arguments defended by the set: every attacker is counter-attacked."""
    s = _check_members(af, members)
    splus = attacked_by(af, s)
    return frozenset(x for x in range(af.n_args) if af.attacker_sets[x] <= splus)


def is_conflict_free(af: FiniteAF, members: Iterable[int]) -> bool:
    s = _check_members(af, members)
    return all(not (af.attacker_sets[m] & s) for m in s)


def is_extension(af: FiniteAF, members: Iterable[int], sigma: str) -> bool:
    """Definitional membership test for each semantics.

    The ``inf-*`` tags select infinite extensions only, so they are always
    false on a finite framework.
    """
    check_semantics(sigma)
    s = _check_members(af, members)
    if sigma in INFINITE_SEMANTICS:
        return False
    if not is_conflict_free(af, s):
        return False
    if sigma == "cf":
        return True
    if sigma == "na":
        # Maximality, checked by testing every one-element superset.
        return all(not is_conflict_free(af, s | {y}) for y in range(af.n_args) if y not in s)
    splus = attacked_by(af, s)
    if sigma == "ad":
        return all(af.attacker_sets[m] <= splus for m in s)
    if sigma == "co":
        return s == characteristic(af, s)
    # stb: everything outside is attacked.
    return all(y in splus for y in range(af.n_args) if y not in s)

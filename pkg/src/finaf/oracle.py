"""Brute-force ground truth for finite frameworks.

Everything here is an exhaustive powerset scan, deliberately independent of
the definitional checks in :mod:`finaf.core` so the two can validate each
other.  The scan is bitmask-based and capped at 24 arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteAF, InputError, ResourceLimitError, check_semantics

DEFAULT_ENUMERATION_CAP = 24

PROBLEM_TAGS = ("cred", "skep", "exists", "ne", "uni")


@dataclass(frozen=True)
class DecisionProblem:
    """A query about the extension set: acceptance of one argument or a
    global property (non-emptiness of the family, existence of a non-empty
    extension, uniqueness)."""

    tag: str
    argument: int | None = None

    def __post_init__(self):
        if self.tag not in PROBLEM_TAGS:
            raise InputError(f"unknown problem tag {self.tag!r}; expected one of {PROBLEM_TAGS}")
        needs_arg = self.tag in ("cred", "skep")
        if needs_arg and self.argument is None:
            raise InputError(f"problem {self.tag!r} needs an argument")
        if not needs_arg and self.argument is not None:
            raise InputError(f"problem {self.tag!r} takes no argument")


def cred(a: int) -> DecisionProblem:
    return DecisionProblem("cred", a)


def skep(a: int) -> DecisionProblem:
    return DecisionProblem("skep", a)


EXISTS = DecisionProblem("exists")
NE = DecisionProblem("ne")
UNI = DecisionProblem("uni")


def _mask_is_extension(af: FiniteAF, mask: int, sigma: str) -> bool:
    amask = af.attacker_masks
    tmask = af.target_masks
    n = af.n_args
    splus = 0
    rest = mask
    while rest:
        low = rest & -rest
        splus |= tmask[low.bit_length() - 1]
        rest ^= low
    if splus & mask:
        return False  # not conflict-free
    if sigma == "cf":
        return True
    if sigma == "na":
        for y in range(n):
            bit = 1 << y
            if mask & bit:
                continue
            # adding y must break conflict-freeness
            if not (amask[y] & (mask | bit) or tmask[y] & mask):
                return False
        return True
    if sigma == "ad":
        rest = mask
        while rest:
            low = rest & -rest
            if amask[low.bit_length() - 1] & ~splus:
                return False
            rest ^= low
        return True
    if sigma == "co":
        fixed = 0
        for x in range(n):
            if not (amask[x] & ~splus):
                fixed |= 1 << x
        return mask == fixed
    # stb
    return (mask | splus) == (1 << n) - 1


def enumerate_extensions(
    af: FiniteAF, sigma: str, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[frozenset[int]]:
    """All extensions of the given semantics, in ascending bitmask order."""
    check_semantics(sigma, finite_only=True)
    if af.n_args > cap:
        raise ResourceLimitError(
            f"powerset scan over {af.n_args} arguments exceeds cap {cap}", partial=cap
        )
    found: list[frozenset[int]] = []
    for mask in range(1 << af.n_args):
        if _mask_is_extension(af, mask, sigma):
            found.append(frozenset(i for i in range(af.n_args) if mask >> i & 1))
    return found


def grounded(af: FiniteAF) -> frozenset[int]:
    """Least fixed point of the defense operator, reached by iteration from
    the empty set (at most ``n_args`` rounds)."""
    from .core import characteristic

    current: frozenset[int] = frozenset()
    while True:
        nxt = characteristic(af, current)
        if nxt == current:
            return current
        current = nxt


def decide_finite(
    af: FiniteAF,
    problem: DecisionProblem,
    sigma: str,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> bool:
    """Answer a decision problem by full enumeration."""
    if problem.argument is not None and not 0 <= problem.argument < af.n_args:
        raise InputError(
            f"argument {problem.argument} out of range for {af.n_args} arguments"
        )
    exts = enumerate_extensions(af, sigma, cap)
    if problem.tag == "cred":
        return any(problem.argument in e for e in exts)
    if problem.tag == "skep":
        return all(problem.argument in e for e in exts)
    if problem.tag == "exists":
        return bool(exts)
    if problem.tag == "ne":
        return any(e for e in exts)
    return len(exts) == 1

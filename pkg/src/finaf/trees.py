"""Trees of finite codes whose infinite paths are the extensions.

For a framework with argument set 0, 1, 2, ... and a semantics kind, the
nodes of the tree are finite integer strings; a string codes partial
membership decisions ("in the set" / "kept out, and here is the finite
witness why that is consistent").  The coding is chosen so that the paths
of the tree are exactly the extensions that contain ``include`` and avoid
``exclude``, and so that every level is finitely branching.  Searching the
tree level by level therefore turns extension existence into a plain
finitely-branching reachability question.

Level layout per kind:

* ``ad``   even level 2j decides membership of argument j (labels 0/1);
           odd level 2j+1 handles the j-th attack pair (u, t): label 0 means
           the target t is out, label k+1 names the least defender k of t
           (an attacker of u) inside the set.
* ``stb``  level j: label 0 puts argument j in the set, label k+1 names the
           least attacker k of j inside the set.
* ``co``   even level 2n: label 0 puts n in the set, label k+1 names the
           least attacker k of n that is NOT attacked by the set; odd level
           2n+1: label 0 asserts n is not attacked by the set, label k+1
           names the least attacker k of n inside the set.
* ``inf-na`` even level 2j names the least member above j (so paths are
           infinite sets); odd level 2j+1: label 0 puts j in, label k+1
           names the least member k that conflicts with j.

Attack pairs are enumerated by ascending target, then ascending attacker.
Finite frameworks are padded: arguments past ``n_args`` behave as isolated
self-attackers (for ``stb``: as isolated unattacked arguments that join
every extension and are stripped on decoding), which preserves the coded
extension sets and keeps every level's choice forced beyond a computable
depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .core import FiniteAF, InputError, ResourceLimitError
from .finitary import FinitaryAF

TREE_KINDS = ("ad", "stb", "co", "inf-na")

DEFAULT_NODE_BUDGET = 10**6

#: How far past the requested attack-pair rank the target scan may run, as a
#: multiplier.  All built-in generators have attack targets densely enough
#: packed that this is never binding; a framework sparser than this would
#: get its late pairs treated as absent.
PAIR_SCAN_FACTOR = 8
PAIR_SCAN_FLOOR = 64

CodeString = tuple[int, ...]


@dataclass(frozen=True)
class TreeSpec:
    """A tree of partial extension codes for one framework and kind.

    ``include`` members are forced into every coded set, ``exclude`` members
    are forced out.  The two must be disjoint; the infinite-naive kind
    supports neither.
    """

    af: FiniteAF | FinitaryAF
    kind: str
    include: frozenset[int] = frozenset()
    exclude: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind not in TREE_KINDS:
            raise InputError(f"unknown tree kind {self.kind!r}; expected one of {TREE_KINDS}")
        inc = frozenset(int(a) for a in self.include)
        exc = frozenset(int(a) for a in self.exclude)
        for a in inc | exc:
            if a < 0:
                raise InputError(f"argument index must be >= 0, got {a}")
            if isinstance(self.af, FiniteAF) and a >= self.af.n_args:
                raise InputError(
                    f"argument index {a} out of range for {self.af.n_args} arguments"
                )
        if inc & exc:
            raise InputError(f"include and exclude overlap on {sorted(inc & exc)}")
        if self.kind == "inf-na" and (inc or exc):
            raise InputError("the infinite-naive tree takes no include/exclude sets")
        object.__setattr__(self, "include", inc)
        object.__setattr__(self, "exclude", exc)


class _Universe:
    """Kind-aware attacker access: pads finite frameworks, caches sets."""

    def __init__(self, af: FiniteAF | FinitaryAF, kind: str):
        self.finite = isinstance(af, FiniteAF)
        self.n_real = af.n_args if self.finite else None
        self._af = af
        self._kind = kind
        self._sets: dict[int, frozenset[int]] = {}

    def attackers(self, j: int) -> frozenset[int]:
        got = self._sets.get(j)
        if got is None:
            if self.finite:
                if j < self.n_real:
                    got = self._af.attacker_sets[j]
                elif self._kind == "stb":
                    got = frozenset()
                else:
                    got = frozenset((j,))
            else:
                got = frozenset(self._af.attackers_of(j))
            self._sets[j] = got
        return got

    def attacks(self, i: int, j: int) -> bool:
        return i in self.attackers(j)

    def conflict(self, i: int, j: int) -> bool:
        return self.attacks(i, j) or self.attacks(j, i)


class _Context:
    """Shared per-spec state: universe and the attack-pair enumeration."""

    def __init__(self, spec: TreeSpec):
        self.spec = spec
        self.uni = _Universe(spec.af, spec.kind)
        self._pairs: list[tuple[int, int]] = []  # (attacker, target), rank order
        self._next_target = 0
        self._exhausted_at: int | None = None

    def pair(self, rank: int) -> tuple[int, int] | None:
        """The rank-th attack pair, or None when the supply has run out
        within the scan window (the level is then padding)."""
        limit = max(PAIR_SCAN_FLOOR, PAIR_SCAN_FACTOR * (rank + 1))
        while len(self._pairs) <= rank and self._next_target < limit:
            t = self._next_target
            self._next_target += 1
            for a in sorted(self.uni.attackers(t)):
                self._pairs.append((a, t))
        if len(self._pairs) > rank:
            return self._pairs[rank]
        return None


@lru_cache(maxsize=512)
def _context(spec: TreeSpec) -> _Context:
    return _Context(spec)


_EMPTY: frozenset[int] = frozenset()


def _position_additions(
    ctx: _Context, pos: int, label: int
) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]] | None:
    """What one code entry contributes to (In, Out, InS+, OutS+).

    Returns None when the label is structurally invalid at this position.
    """
    kind = ctx.spec.kind
    uni = ctx.uni
    if label < 0:
        return None

    if kind == "stb":
        j = pos
        if label == 0:
            return (frozenset((j,)), _EMPTY, _EMPTY, _EMPTY)
        k = label - 1
        if not uni.attacks(k, j):
            return None
        lower = frozenset(i for i in uni.attackers(j) if i < k)
        return (frozenset((k,)), frozenset((j,)) | lower, _EMPTY, _EMPTY)

    if kind == "ad":
        if pos % 2 == 0:
            j = pos // 2
            if label == 0:
                return (_EMPTY, frozenset((j,)), _EMPTY, _EMPTY)
            if label == 1:
                return (frozenset((j,)), _EMPTY, _EMPTY, _EMPTY)
            return None
        rank = (pos - 1) // 2
        pr = ctx.pair(rank)
        if pr is None:
            return (_EMPTY, _EMPTY, _EMPTY, _EMPTY) if label == 0 else None
        u, t = pr
        if label == 0:
            return (_EMPTY, frozenset((t,)), _EMPTY, _EMPTY)
        k = label - 1
        if not uni.attacks(k, u):
            return None
        lower = frozenset(i for i in uni.attackers(u) if i < k)
        return (frozenset((k, t)), lower, _EMPTY, _EMPTY)

    if kind == "co":
        n = pos // 2
        if pos % 2 == 0:
            if label == 0:
                return (frozenset((n,)), _EMPTY, _EMPTY, _EMPTY)
            k = label - 1
            if not uni.attacks(k, n):
                return None
            lower = frozenset(i for i in uni.attackers(n) if i < k)
            return (_EMPTY, frozenset((n,)), lower, frozenset((k,)))
        if label == 0:
            return (_EMPTY, _EMPTY, _EMPTY, frozenset((n,)))
        k = label - 1
        if not uni.attacks(k, n):
            return None
        lower = frozenset(i for i in uni.attackers(n) if i < k)
        return (frozenset((k,)), lower, frozenset((n,)), _EMPTY)

    # inf-na
    j = pos // 2
    if pos % 2 == 0:
        if label <= j:
            return None
        skipped = frozenset(range(j + 1, label))
        return (frozenset((label,)), skipped, _EMPTY, _EMPTY)
    if label == 0:
        return (frozenset((j,)), _EMPTY, _EMPTY, _EMPTY)
    k = label - 1
    if not uni.conflict(k, j):
        return None
    lower = frozenset(i for i in range(k) if uni.conflict(i, j))
    return (_EMPTY, frozenset((j,)) | lower, _EMPTY, _EMPTY)


def ins_out_sets(
    spec: TreeSpec, entries: Iterable[int]
) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]:
    """The four decision sets coded by a string: members, non-members,
    attacked-by-the-set, not-attacked-by-the-set.  The latter two are only
    populated for the complete-semantics tree."""
    ctx = _context(spec)
    code = tuple(int(e) for e in entries)
    ins = set(spec.include)
    outs = set(spec.exclude)
    inp: set[int] = set()
    outp: set[int] = set()
    for pos, label in enumerate(code):
        add = _position_additions(ctx, pos, label)
        if add is None:
            raise InputError(f"label {label} is not valid at position {pos}")
        ins |= add[0]
        outs |= add[1]
        inp |= add[2]
        outp |= add[3]
    return frozenset(ins), frozenset(outs), frozenset(inp), frozenset(outp)


def _conditions_ok(
    ctx: _Context,
    length: int,
    ins: frozenset[int],
    outs: frozenset[int],
    inp: frozenset[int],
    outp: frozenset[int],
) -> bool:
    """The node conditions, checked from scratch at the given code length."""
    uni = ctx.uni
    kind = ctx.spec.kind
    if kind == "inf-na":
        visible_in = ins
        visible_out = outs
    else:
        visible_in = frozenset(x for x in ins if x < length)
        visible_out = frozenset(x for x in outs if x < length)
    if visible_in & visible_out:
        return False
    # one pass over targets covers both attack directions within the set
    for y in visible_in:
        if uni.attackers(y) & visible_in:
            return False
    if kind != "co":
        return True
    if inp & outp:
        return False
    visible_outp = frozenset(x for x in outp if x < length)
    for k in visible_outp:
        att_k = uni.attackers(k)
        for j in visible_in:
            if j in att_k or uni.attacks(k, j):
                return False
    return True


def is_node(spec: TreeSpec, entries: Iterable[int]) -> bool:
    """Whether the string is a node of the tree."""
    ctx = _context(spec)
    code = tuple(int(e) for e in entries)
    ins = set(spec.include)
    outs = set(spec.exclude)
    inp: set[int] = set()
    outp: set[int] = set()
    for pos, label in enumerate(code):
        if label < 0:
            raise InputError(f"labels are naturals, got {label}")
        add = _position_additions(ctx, pos, label)
        if add is None:
            return False
        ins |= add[0]
        outs |= add[1]
        inp |= add[2]
        outp |= add[3]
    return _conditions_ok(
        ctx, len(code), frozenset(ins), frozenset(outs), frozenset(inp), frozenset(outp)
    )


def _candidate_labels(ctx: _Context, pos: int, label_cap: int | None) -> list[int]:
    kind = ctx.spec.kind
    uni = ctx.uni
    if kind == "stb":
        return [0] + [k + 1 for k in sorted(uni.attackers(pos))]
    if kind == "ad":
        if pos % 2 == 0:
            return [0, 1]
        pr = ctx.pair((pos - 1) // 2)
        if pr is None:
            return [0]
        u, _ = pr
        return [0] + [k + 1 for k in sorted(uni.attackers(u))]
    if kind == "co":
        return [0] + [k + 1 for k in sorted(uni.attackers(pos // 2))]
    # inf-na needs a cap: both level forms range over all naturals
    if label_cap is None:
        raise InputError("the infinite-naive tree needs an explicit label cap for children")
    j = pos // 2
    if pos % 2 == 0:
        return list(range(j + 1, label_cap + 1))
    return [0] + [k + 1 for k in range(label_cap + 1) if uni.conflict(k, j)]


def children(
    spec: TreeSpec, entries: Iterable[int], label_cap: int | None = None
) -> list[CodeString]:
    """All one-step extensions of a node, in ascending label order."""
    code = tuple(int(e) for e in entries)
    if not is_node(spec, code):
        return []
    ctx = _context(spec)
    out = []
    for label in _candidate_labels(ctx, len(code), label_cap):
        child = code + (label,)
        if is_node(spec, child):
            out.append(child)
    return out


class _Node:
    __slots__ = ("entries", "ins", "outs", "inp", "outp")

    def __init__(self, entries, ins, outs, inp, outp):
        self.entries = entries
        self.ins = ins
        self.outs = outs
        self.inp = inp
        self.outp = outp

    def visible_ins(self) -> frozenset[int]:
        length = len(self.entries)
        return frozenset(x for x in self.ins if x < length)


class Frontier:
    """Level-by-level exploration with incremental validity checks.

    Maintains the set of alive nodes at the current depth for the ``ad``,
    ``stb`` and ``co`` trees.  ``node_filter`` (when given) prunes nodes on
    creation; it is how families of pruned trees are intersected.
    """

    def __init__(
        self,
        spec: TreeSpec,
        node_filter: Callable[[_Node], bool] | None = None,
    ):
        if spec.kind == "inf-na":
            raise InputError("frontier search applies to the ad/stb/co trees only")
        self.spec = spec
        self.ctx = _context(spec)
        self.depth = 0
        self.node_filter = node_filter
        root = _Node((), spec.include, spec.exclude, _EMPTY, _EMPTY)
        self.nodes: list[_Node] = [root]
        if node_filter is not None:
            self.nodes = [n for n in self.nodes if node_filter(n)]

    @property
    def alive(self) -> bool:
        return bool(self.nodes)

    @property
    def width(self) -> int:
        return len(self.nodes)

    def _child(self, node: _Node, pos: int, label: int) -> _Node | None:
        ctx = self.ctx
        uni = ctx.uni
        kind = self.spec.kind
        add = _position_additions(ctx, pos, label)
        if add is None:
            return None
        d_in, d_out, d_inp, d_outp = add
        ins = node.ins | d_in if d_in else node.ins
        outs = node.outs | d_out if d_out else node.outs
        inp = node.inp | d_inp if d_inp else node.inp
        outp = node.outp | d_outp if d_outp else node.outp
        length = pos + 1

        # Scoped checks: new additions below the new length, plus the index
        # that just became visible (== pos).
        to_check = set(x for x in d_in if x < length and x not in node.ins)
        if pos in ins:
            to_check.add(pos)
        for x in to_check:
            if x in outs:
                return None
            att_x = uni.attackers(x)
            for y in ins:
                if y >= length:
                    continue
                if y in att_x or uni.attacks(x, y):
                    return None
        for x in d_out:
            if x < length and x in ins:
                return None
        if pos in outs and pos in ins:
            return None

        if kind == "co":
            if (d_inp and d_inp & outp) or (d_outp and d_outp & inp):
                return None
            new_outp = set(x for x in d_outp if x < length and x not in node.outp)
            if pos in outp:
                new_outp.add(pos)
            for k in new_outp:
                att_k = uni.attackers(k)
                for j in ins:
                    if j >= length:
                        continue
                    if j in att_k or uni.attacks(k, j):
                        return None
            new_in_vis = [x for x in d_in if x < length] + ([pos] if pos in ins else [])
            for j in set(new_in_vis):
                att_j = uni.attackers(j)
                for k in outp:
                    if k >= length:
                        continue
                    if k in att_j or uni.attacks(j, k):
                        return None

        return _Node(node.entries + (label,), ins, outs, inp, outp)

    def advance(self, levels: int = 1, node_budget: int | None = None, meter=None) -> bool:
        """Extend the frontier; returns aliveness.

        ``node_budget`` counts child candidates examined in this call and
        raises when exhausted; ``meter`` (anything with ``spend_nodes``)
        charges the same counts against a caller-owned budget.
        """
        spent = 0
        for _ in range(levels):
            pos = self.depth
            nxt: list[_Node] = []
            for node in self.nodes:
                for label in _candidate_labels(self.ctx, pos, None):
                    spent += 1
                    if node_budget is not None and spent > node_budget:
                        raise ResourceLimitError(
                            f"node budget {node_budget} exhausted at depth {pos}",
                            partial=len(nxt),
                        )
                    if meter is not None:
                        meter.spend_nodes(1)
                    child = self._child(node, pos, label)
                    if child is not None and (
                        self.node_filter is None or self.node_filter(child)
                    ):
                        nxt.append(child)
            self.nodes = nxt
            self.depth += 1
            if not self.nodes:
                return False
        return True


def alive_at_depth(
    spec: TreeSpec, depth: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> bool:
    """Whether any node survives at the given depth (level-order search)."""
    if depth < 0:
        raise InputError(f"depth must be >= 0, got {depth}")
    f = Frontier(spec)
    if depth == 0:
        return f.alive
    return f.advance(depth, node_budget=node_budget)


def decision_depth(af: FiniteAF, kind: str) -> int:
    """Depth by which every real coding decision of a finite framework has
    been made; beyond it the frontier continues forced and unchanged."""
    n = af.n_args
    if kind == "stb":
        return n
    if kind == "co":
        return 2 * n
    if kind == "ad":
        return max(2 * n, 2 * len(af.attacks))
    raise InputError(f"no finite decision depth for kind {kind!r}")


def extensions_via_tree(
    af: FiniteAF,
    kind: str,
    include: Iterable[int] = (),
    exclude: Iterable[int] = (),
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[frozenset[int]]:
    """Read a finite framework's extensions off its tree.

    Explores to the forced depth, decodes each surviving node's membership
    entries, and returns the distinct sets in ascending bitmask order.  The
    result equals the brute-force enumeration filtered to supersets of
    ``include`` that avoid ``exclude``.
    """
    if not isinstance(af, FiniteAF):
        raise InputError("extensions_via_tree reads finite frameworks only")
    if kind not in ("ad", "stb", "co"):
        raise InputError(f"extensions_via_tree handles ad/stb/co, got {kind!r}")
    inc = frozenset(int(a) for a in include)
    exc = frozenset(int(a) for a in exclude)
    for a in inc | exc:
        if not 0 <= a < af.n_args:
            raise InputError(f"argument {a} out of range for {af.n_args} arguments")
    spec = TreeSpec(af, kind, inc, exc)
    f = Frontier(spec)
    depth = decision_depth(af, kind)
    if depth:
        f.advance(depth, node_budget=node_budget)
    seen: set[frozenset[int]] = set()
    for node in f.nodes:
        e = node.entries
        if kind == "ad":
            s = frozenset(j for j in range(af.n_args) if e[2 * j] == 1)
        elif kind == "stb":
            s = frozenset(j for j in range(af.n_args) if e[j] == 0)
        else:
            s = frozenset(j for j in range(af.n_args) if e[2 * j] == 0)
        seen.add(s)
    return sorted(seen, key=lambda s: sum(1 << i for i in s))

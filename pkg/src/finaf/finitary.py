"""Infinite frameworks presented by a computable attacker oracle.

A finitary framework has argument set 0, 1, 2, ... and every argument has a
finite attacker set, returned by a total function.  All built-in generators
compact their natural "family" coordinates (chains, blocks, grids, ...) into
a dense integer indexing; ``name_of`` renders the family coordinate of an
index and ``index_of`` inverts it, so tests and the CLI can speak in family
terms.
"""

from __future__ import annotations

import bisect
import itertools
from typing import Callable, Iterable

from .core import FiniteAF, InputError


class StageSet:
    """A decidable set of naturals with optional finiteness information.

    ``bound`` is an inclusive upper bound on the members when the set is
    known to be finite; ``None`` means the set is genuinely infinite (a
    finite set passed without a bound would make generators that need
    member counts loop forever, so the constructors always attach one).
    """

    def __init__(self, contains: Callable[[int], bool], bound: int | None, label: str):
        self._contains = contains
        self.bound = bound
        self.label = label

    def __repr__(self) -> str:
        return f"StageSet({self.label})"

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "StageSet":
        elems = frozenset(int(e) for e in elements)
        for e in elems:
            if e < 0:
                raise InputError(f"stage sets hold naturals, got {e}")
        bound = max(elems) if elems else -1
        label = "{" + ",".join(str(e) for e in sorted(elems)) + "}"
        return cls(lambda n: n in elems, bound, label)

    @classmethod
    def empty(cls) -> "StageSet":
        return cls.from_elements(())

    @classmethod
    def always(cls) -> "StageSet":
        return cls(lambda n: True, None, "all")

    @classmethod
    def arithmetic(cls, start: int, step: int) -> "StageSet":
        if start < 0 or step <= 0:
            raise InputError(f"bad progression {start}+{step}k")
        return cls(
            lambda n: n >= start and (n - start) % step == 0, None, f"{start}+{step}k"
        )

    def contains(self, n: int) -> bool:
        return n >= 0 and bool(self._contains(n))

    @property
    def is_finite(self) -> bool:
        return self.bound is not None

    def member_count(self) -> int | None:
        """Number of members, or None when infinite."""
        if self.bound is None:
            return None
        return sum(1 for n in range(self.bound + 1) if self.contains(n))

    def kth_member(self, k: int) -> int | None:
        """The k-th member in ascending order (0-based); None when the set
        is finite and has at most k members."""
        if k < 0:
            raise InputError(f"member rank must be >= 0, got {k}")
        seen = 0
        n = 0
        while self.bound is None or n <= self.bound:
            if self.contains(n):
                if seen == k:
                    return n
                seen += 1
            n += 1
        return None

    def members_below(self, limit: int) -> list[int]:
        return [n for n in range(limit) if self.contains(n)]


def parse_stage_set(text: str) -> StageSet:
    """Parse a stage-set literal: ``none``, ``all``, ``1,4,9``, or ``2+3k``."""
    text = text.strip()
    if text in ("none", "empty", "{}"):
        return StageSet.empty()
    if text == "all":
        return StageSet.always()
    if "+" in text and text.endswith("k"):
        start_s, step_s = text[:-1].split("+", 1)
        try:
            return StageSet.arithmetic(int(start_s), int(step_s))
        except ValueError as exc:
            raise InputError(f"bad stage-set literal {text!r}") from exc
    try:
        elems = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise InputError(f"bad stage-set literal {text!r}") from exc
    return StageSet.from_elements(elems)


class FinitaryAF:
    """An infinite framework given by a total finite-attacker function.

    ``attackers_fn`` must be pure and total; results are cached.  ``name_fn``
    maps an index to a human-readable family name.
    """

    def __init__(
        self,
        attackers_fn: Callable[[int], Iterable[int]],
        description: str = "",
        name_fn: Callable[[int], str] | None = None,
    ):
        self._attackers_fn = attackers_fn
        self._name_fn = name_fn
        self._cache: dict[int, tuple[int, ...]] = {}
        self.description = description

    def __repr__(self) -> str:
        return f"FinitaryAF({self.description or 'anonymous'})"

    def attackers_of(self, m: int) -> tuple[int, ...]:
        """The finite attacker set of argument m, sorted ascending."""
        if m < 0:
            raise InputError(f"argument index must be >= 0, got {m}")
        got = self._cache.get(m)
        if got is None:
            raw = sorted(set(int(a) for a in self._attackers_fn(m)))
            for a in raw:
                if a < 0:
                    raise InputError(f"attacker {a} of {m} is not a natural")
            got = tuple(raw)
            self._cache[m] = got
        return got

    def attacks(self, a: int, b: int) -> bool:
        return a in self.attackers_of(b)

    def name_of(self, m: int) -> str:
        if self._name_fn is None:
            return f"x{m}"
        return self._name_fn(m)

    def index_of(self, name: str, search_limit: int = 100_000) -> int:
        """Invert name_of by bounded scan."""
        for m in range(search_limit):
            if self.name_of(m) == name:
                return m
        raise InputError(f"no argument named {name!r} within the first {search_limit} indices")


def truncate(faf: FinitaryAF, n: int) -> FiniteAF:
    """The induced finite sub-framework on arguments 0..n-1."""
    if n < 0:
        raise InputError(f"truncation size must be >= 0, got {n}")
    attacks = set()
    for j in range(n):
        for i in faf.attackers_of(j):
            if i < n:
                attacks.add((i, j))
    return FiniteAF(n, frozenset(attacks))


def truncation_names(faf: FinitaryAF, n: int) -> list[str]:
    return [faf.name_of(i) for i in range(n)]


def embed_finite(af: FiniteAF, pad: str = "spiky") -> FinitaryAF:
    """View a finite framework as a finitary one.

    Indices past ``n_args`` are padding.  With ``pad="spiky"`` every padding
    argument attacks itself, which preserves the conflict-free, naive,
    admissible and complete extensions exactly.  With ``pad="guarded"`` one
    unattacked guard at index ``n_args`` attacks all later (self-attacking)
    padding arguments; every stable extension of the embedding is then a
    stable extension of ``af`` plus the guard, which preserves all
    stable-semantics answers about real arguments.
    """
    if pad not in ("spiky", "guarded"):
        raise InputError(f"unknown padding style {pad!r}")
    n = af.n_args
    att = af.attacker_sets

    if pad == "spiky":

        def attackers_fn(m: int) -> tuple[int, ...]:
            return tuple(sorted(att[m])) if m < n else (m,)

        def name_fn(m: int) -> str:
            return f"x{m}" if m < n else f"pad{m}"

    else:

        def attackers_fn(m: int) -> tuple[int, ...]:
            if m < n:
                return tuple(sorted(att[m]))
            if m == n:
                return ()
            return (n, m)

        def name_fn(m: int) -> str:
            if m < n:
                return f"x{m}"
            return "guard" if m == n else f"pad{m}"

    return FinitaryAF(attackers_fn, f"embedded({n} args, {pad})", name_fn)


def disjoint_union(x: FinitaryAF, y: FinitaryAF) -> FinitaryAF:
    """Interleave two frameworks: even indices host x, odd indices host y."""

    def attackers_fn(m: int) -> tuple[int, ...]:
        if m % 2 == 0:
            return tuple(2 * a for a in x.attackers_of(m // 2))
        return tuple(2 * a + 1 for a in y.attackers_of(m // 2))

    def name_fn(m: int) -> str:
        if m % 2 == 0:
            return "L." + x.name_of(m // 2)
        return "R." + y.name_of(m // 2)

    return FinitaryAF(
        attackers_fn, f"union({x.description}, {y.description})", name_fn
    )


# ---------------------------------------------------------------------------
# Generator family 1: a descending chain with conditional blockers.
#
# Family coordinates: chain arguments a_k (k >= 0) with a_{k+1} attacking
# a_k, plus, for every k in ``stages``, a self-attacking blocker b_k that
# attacks a_{2k} and a_{2k+1}.
#
# Index map: blocks laid out in order k = 0, 1, 2, ...; block k is
# [a_{2k}, a_{2k+1}] followed by b_k when present.


def gadget_fig1(stages: StageSet) -> FinitaryAF:
    """Chain-with-blockers family.

    With finitely many blockers the chain has an undisturbed tail, so
    admissible sets can climb it forever; with blockers at every stage each
    tail segment is eventually poisoned and only the empty set is admissible.
    """
    block_starts: list[int] = [0]  # block k is [a_2k, a_2k+1] (+ b_k if present)

    def _grow_past(index: int) -> None:
        while block_starts[-1] <= index:
            k = len(block_starts) - 1
            block_starts.append(block_starts[-1] + (3 if stages.contains(k) else 2))

    def _grow_to_block(k: int) -> int:
        while len(block_starts) <= k:
            _grow_past(block_starts[-1])
        return block_starts[k]

    def coord(m: int) -> tuple[str, int]:
        """('a', k) for chain element a_k, ('b', k) for blocker b_k."""
        _grow_past(m)
        k = bisect.bisect_right(block_starts, m) - 1
        off = m - block_starts[k]
        if off < 2:
            return ("a", 2 * k + off)
        return ("b", k)

    def index_of_a(j: int) -> int:
        return _grow_to_block(j // 2) + (j % 2)

    def index_of_b(k: int) -> int:
        return _grow_to_block(k) + 2

    def attackers_fn(m: int) -> list[int]:
        fam, j = coord(m)
        if fam == "b":
            return [m]
        out = [index_of_a(j + 1)]
        k = j // 2
        if stages.contains(k):
            out.append(index_of_b(k))
        return out

    def name_fn(m: int) -> str:
        fam, j = coord(m)
        return f"{fam}{j}"

    return FinitaryAF(attackers_fn, f"fig1(stages={stages.label})", name_fn)


# ---------------------------------------------------------------------------
# Generator family 2: disjoint stars.
#
# One unconditional star plus one star per member of ``count``; each star is
# an unattacked center attacking infinitely many leaves.  With finitely many
# stars (S of them) indices go round-robin: index i belongs to star i mod S
# and is its center when i < S.  With infinitely many stars the pairs
# (star, position) are laid out by ascending star+position, then star.


def gadget_stars(count: StageSet | int) -> FinitaryAF:
    if isinstance(count, int):
        if count < 1:
            raise InputError(f"need at least one star, got {count}")
        total: int | None = count
        label = str(count)
    else:
        cnt = count.member_count()
        total = None if cnt is None else cnt + 1
        label = f"1+{count.label}"

    if total is not None:
        S = total

        def coord(m: int) -> tuple[int, int]:
            return (m % S, m // S)

        def index(s: int, p: int) -> int:
            return p * S + s

    else:

        def coord(m: int) -> tuple[int, int]:
            # invert the diagonal layout: d-th diagonal holds pairs with
            # star+position == d, ordered by star
            d = 0
            while (d + 1) * (d + 2) // 2 <= m:
                d += 1
            s = m - d * (d + 1) // 2
            return (s, d - s)

        def index(s: int, p: int) -> int:
            d = s + p
            return d * (d + 1) // 2 + s

    def attackers_fn(m: int) -> list[int]:
        s, p = coord(m)
        if p == 0:
            return []
        return [index(s, 0)]

    def name_fn(m: int) -> str:
        s, p = coord(m)
        return f"c{s}" if p == 0 else f"l{s}_{p}"

    return FinitaryAF(attackers_fn, f"stars({label})", name_fn)


# ---------------------------------------------------------------------------
# Generator family 3: an ascending spine with finite or infinite ladders.
#
# Spine arguments a_i with a_i attacking a_{i+1} and every odd a_i
# self-attacking.  For each i >= 1 a ladder d^i_0, d^i_1, ... hangs off the
# spine: a_{2i} and d^i_0 attack each other, a_{2i-1} attacks d^i_0, each
# rung attacks the next, odd rungs self-attack.  Ladder i has as many rungs
# as ``card(i)`` has members (so at least one, by the precondition).
#
# Index map: spine argument a_i sits at 2i; existing rungs are enumerated by
# ascending i+j then i, and packed into the odd indices in that order.


def gadget_fig2(card: Callable[[int], StageSet]) -> FinitaryAF:
    counts: dict[int, int | None] = {}

    def rung_count(i: int) -> int | None:
        if i not in counts:
            cs = card(i)
            if not cs.contains(0):
                raise InputError(f"card({i}) must contain 0")
            counts[i] = cs.member_count()
        return counts[i]

    def rung_exists(i: int, j: int) -> bool:
        c = rung_count(i)
        return c is None or j < c

    def _diagonal_pairs():
        """All existing rungs (i, j) in layout order."""
        for w in itertools.count(1):
            for i in range(1, w + 1):
                j = w - i
                if rung_exists(i, j):
                    yield (i, j)

    rung_order: list[tuple[int, int]] = []  # cache of the diagonal enumeration
    rung_rank: dict[tuple[int, int], int] = {}
    rung_iter = _diagonal_pairs()

    def _extend_rungs(upto_rank: int) -> None:
        while len(rung_order) <= upto_rank:
            pair = next(rung_iter)
            rung_rank[pair] = len(rung_order)
            rung_order.append(pair)

    def rung_at(rank: int) -> tuple[int, int]:
        _extend_rungs(rank)
        return rung_order[rank]

    def rank_of(i: int, j: int) -> int:
        while (i, j) not in rung_rank:
            _extend_rungs(len(rung_order))
        return rung_rank[(i, j)]

    def spine_index(i: int) -> int:
        return 2 * i

    def rung_index(i: int, j: int) -> int:
        return 2 * rank_of(i, j) + 1

    def attackers_fn(m: int) -> list[int]:
        if m % 2 == 0:
            i = m // 2
            out = []
            if i >= 1:
                out.append(spine_index(i - 1))
            if i % 2 == 1:
                out.append(m)
            if i >= 2 and i % 2 == 0:
                out.append(rung_index(i // 2, 0))
            return out
        i, j = rung_at((m - 1) // 2)
        if j == 0:
            return [spine_index(2 * i - 1), spine_index(2 * i)]
        out = [rung_index(i, j - 1)]
        if j % 2 == 1:
            out.append(m)
        return out

    def name_fn(m: int) -> str:
        if m % 2 == 0:
            return f"a{m // 2}"
        i, j = rung_at((m - 1) // 2)
        return f"d{i}_{j}"

    return FinitaryAF(attackers_fn, "fig2", name_fn)


# ---------------------------------------------------------------------------
# Generator family 4: one ascending chain per natural, cut at enumeration
# time.
#
# Chain n has elements a_{n,0} <- a_{n,1} <- a_{n,2} <- ...; when n belongs
# to ``w`` (canonically enumerated at stage n+1) the chain stops at a_{n,2n},
# an even, unattacked top, so a_{n,0} is defended all the way up; otherwise
# the chain is infinite and a_{n,0} is never settled.
#
# Index map: existing coordinates (n, m) laid out by ascending n+m, then n.


def gadget_chain_w(w: StageSet) -> FinitaryAF:
    def elem_exists(n: int, m: int) -> bool:
        if m == 0:
            return True
        if w.contains(n):
            return m <= 2 * n
        return True

    def _diagonal():
        for s in itertools.count(0):
            for n in range(s + 1):
                m = s - n
                if elem_exists(n, m):
                    yield (n, m)

    order: list[tuple[int, int]] = []
    rank: dict[tuple[int, int], int] = {}
    it = _diagonal()

    def _extend(upto: int) -> None:
        while len(order) <= upto:
            pair = next(it)
            rank[pair] = len(order)
            order.append(pair)

    def coord(idx: int) -> tuple[int, int]:
        _extend(idx)
        return order[idx]

    def index(n: int, m: int) -> int:
        while (n, m) not in rank:
            _extend(len(order))
        return rank[(n, m)]

    def attackers_fn(idx: int) -> list[int]:
        n, m = coord(idx)
        if elem_exists(n, m + 1):
            return [index(n, m + 1)]
        return []

    def name_fn(idx: int) -> str:
        n, m = coord(idx)
        return f"a{n}_{m}"

    return FinitaryAF(attackers_fn, f"chains(w={w.label})", name_fn)


# ---------------------------------------------------------------------------
# Generator family 5: mutually attacking pairs with delayed downward attacks.
#
# Arguments a_i (at 2i) and b_i (at 2i+1); a_i and b_i attack each other,
# and a_i attacks both a_{i+j} and b_{i+j} for every j >= 1 that is NOT a
# member of ``exp(i)``.  When exp(i) is infinite, {a_i} plus the b_j it
# spares grows into an infinite stable extension; the all-b set is always
# stable.


def gadget_unistb(exp: Callable[[int], StageSet]) -> FinitaryAF:
    sets: dict[int, StageSet] = {}

    def exp_at(i: int) -> StageSet:
        if i not in sets:
            sets[i] = exp(i)
        return sets[i]

    def attackers_fn(m: int) -> list[int]:
        i = m // 2
        out = [2 * i + 1 if m % 2 == 0 else 2 * i]
        for lo in range(i):
            if not exp_at(lo).contains(i - lo):
                out.append(2 * lo)
        return out

    def name_fn(m: int) -> str:
        return f"{'a' if m % 2 == 0 else 'b'}{m // 2}"

    return FinitaryAF(attackers_fn, "unistb", name_fn)


# ---------------------------------------------------------------------------
# Generator family 6: incomparability graph of a decidable tree.
#
# Nodes of a tree of finite integer strings, enumerated in a graded order
# (by length plus entry sum, then length, then lexicographically), with an
# attack from the earlier of every incomparable pair to the later one.
# Conflict-free sets of the graph are exactly the chains, i.e. the paths.


def _graded_strings():
    yield ()
    for weight in itertools.count(1):
        for length in range(1, weight + 1):
            rest = weight - length
            for body in _compositions(rest, length):
                yield body


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` naturals summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def gadget_tree_cf(tree_membership: Callable[[tuple[int, ...]], bool]) -> FinitaryAF:
    """Incomparability graph of an infinite decidable tree.

    The membership function must accept the empty string and be prefix
    closed; a violation is reported when enumeration first hits it.  The
    tree must be infinite for the node enumeration to be total.
    """
    nodes: list[tuple[int, ...]] = []
    it = _graded_strings()

    def _extend(upto: int) -> None:
        while len(nodes) <= upto:
            s = next(it)
            if tree_membership(s):
                if s and not tree_membership(s[:-1]):
                    raise InputError(f"tree is not prefix-closed at {s}")
                nodes.append(s)

    def node_at(idx: int) -> tuple[int, ...]:
        _extend(idx)
        return nodes[idx]

    def comparable(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
        k = min(len(x), len(y))
        return x[:k] == y[:k]

    def attackers_fn(m: int) -> list[int]:
        mine = node_at(m)
        return [i for i in range(m) if not comparable(nodes[i], mine)]

    def name_fn(m: int) -> str:
        s = node_at(m)
        return "n" + "".join(f"_{e}" for e in s) if s else "n"

    return FinitaryAF(attackers_fn, "tree-cf", name_fn)


def spine_tree(spines: int = 1) -> Callable[[tuple[int, ...]], bool]:
    """Membership function for ``spines`` disjoint infinite unary branches
    below the root: strings i, ii, iii, ... for i < spines."""
    if spines < 1:
        raise InputError(f"need at least one branch, got {spines}")

    def member(s: tuple[int, ...]) -> bool:
        if not s:
            return True
        return s[0] < spines and all(e == s[0] for e in s)

    return member


def full_tree(branching: int) -> Callable[[tuple[int, ...]], bool]:
    """Membership function for the full ``branching``-ary tree."""
    if branching < 1:
        raise InputError(f"need branching >= 1, got {branching}")

    def member(s: tuple[int, ...]) -> bool:
        return all(0 <= e < branching for e in s)

    return member

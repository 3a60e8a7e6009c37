"""Stagewise decision engine for finitary frameworks.

Fast characterization-based answers where a finite check settles the
problem, and resumable anytime processes for everything else.  Stage ``s``
exposes, in lockstep: the truncation to ``s`` arguments, tree frontiers of
depth ``s``, and candidate indices up to ``s``.

Convergence classes and their limit laws
----------------------------------------
``computable``
    the verdict is correct from stage 0 and never changes.
``sigma1`` / ``pi1``
    accept (resp. reject) is permanent once emitted; the opposite verdict
    only means "no witness (resp. refutation) yet".
``sigma2``
    the stream settles on the true answer in the limit.  Realized with a
    moving least-witness pointer: accept is reported only while the pointer
    has survived the whole dyadic window ``(s//2, s]``, so a pointer that
    moves infinitely often yields reject infinitely often, and a pointer
    that comes to rest yields accept from twice its resting stage on.
``pi2``
    dual style: accept is reported while verification progressed inside the
    window or has caught up with the stage counter.
``d-sigma2`` / ``u-sigma2``
    negation / union composites of the two previous rules.
``pi3``
    componentwise composite; no single-stream law is promised.
``none``
    no convergence promise at all (evidence only).

Budgets are per stage; exhausting one yields an ``unknown`` verdict for
that stage and never a wrong class-violating answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    ALL_SEMANTICS,
    FINITE_SEMANTICS,
    InputError,
    ResourceLimitError,
)
from .finitary import FinitaryAF
from .oracle import DecisionProblem
from .trees import DEFAULT_NODE_BUDGET, Frontier, TreeSpec

DEFAULT_CHECK_BUDGET = 10**5

#: How many subset-cursor candidates the unbounded-evidence search grinds
#: through per stage, and how many pointer candidates a stage may evaluate.
CURSOR_STEPS_PER_STAGE = 32
POINTER_CANDIDATES_PER_STAGE = 16

#: The uniqueness composite reads a membership component for argument ``a``
#: only from stage ``UNI_EVAL_DELAY * a`` on.  Components need roughly four
#: times their argument's index to settle (witness caps are stage-bounded and
#: retried on doubling), so the delay hides their startup churn; without it a
#: newly hatched component pair is always mid-churn somewhere and the
#: conjunction over all arguments never stabilizes.
UNI_EVAL_DELAY = 8

#: An argument enters the tree-aliveness route of the witness probe once the
#: stage reaches ``Y_PROBE_WINDOW`` times its index plus ``Y_PROBE_MARGIN``.
#: Refutation depths grow at most linearly in the index with a smaller slope,
#: so a doomed candidate's tree is already dead on arrival and certification
#: can stay sticky; a genuine member certifies within a doubling of its
#: index scale.
Y_PROBE_WINDOW = 4
Y_PROBE_MARGIN = 8

#: A pointer candidate is examined only once the stage reaches this multiple
#: of its largest member.  Refutation depths grow at most linearly in that
#: member with a smaller slope, so a doomed candidate is already refutable
#: when first examined and cannot sit out a settling window looking alive.
POINTER_HORIZON_FACTOR = 8

CONVERGENCE_CLASSES = (
    "computable",
    "sigma1",
    "pi1",
    "sigma2",
    "pi2",
    "d-sigma2",
    "u-sigma2",
    "pi3",
    "none",
)


@dataclass(frozen=True)
class Budget:
    """Per-stage resource caps."""

    tree_nodes: int = DEFAULT_NODE_BUDGET
    checks: int = DEFAULT_CHECK_BUDGET

    def __post_init__(self):
        if self.tree_nodes < 1 or self.checks < 1:
            raise InputError("budgets must be positive")


class _Meter:
    """Mutable per-stage countdown against a Budget."""

    __slots__ = ("nodes", "checks")

    def __init__(self, budget: Budget):
        self.nodes = budget.tree_nodes
        self.checks = budget.checks

    def spend_nodes(self, n: int = 1) -> None:
        self.nodes -= n
        if self.nodes < 0:
            raise ResourceLimitError("per-stage tree-node budget exhausted")

    def spend_checks(self, n: int = 1) -> None:
        self.checks -= n
        if self.checks < 0:
            raise ResourceLimitError("per-stage check budget exhausted")


@dataclass(frozen=True)
class Verdict:
    answer: str
    stage: int
    cls: str
    evidence: str = ""

    def __post_init__(self):
        if self.answer not in ("accept", "reject", "unknown"):
            raise InputError(f"bad verdict answer {self.answer!r}")
        if self.cls not in CONVERGENCE_CLASSES:
            raise InputError(f"bad convergence class {self.cls!r}")
        if self.answer != "unknown" and not self.evidence:
            raise InputError("non-unknown verdicts must carry evidence")


def _settled(stage: int, last_change: int) -> bool:
    """No movement inside the dyadic window (stage//2, stage]."""
    return last_change <= stage // 2


class AnytimeProcess:
    """Resumable stagewise decision procedure.

    Subclasses implement ``_step(stage, meter) -> (answer, evidence)``;
    state must only ever consult indices and depths up to the stage.
    """

    cls = "none"

    def __init__(self, faf: FinitaryAF, budget: Budget | None = None):
        if not isinstance(faf, FinitaryAF):
            raise InputError("anytime processes run on finitary frameworks; embed finite ones first")
        self.faf = faf
        self.budget = budget if budget is not None else Budget()
        self.stage = -1
        self.history: list[Verdict] = []

    def advance(self, meter: _Meter | None = None) -> Verdict:
        """Move one stage forward and report.

        A caller-supplied meter lets composite processes charge children
        against a single shared per-stage budget.
        """
        self.stage += 1
        m = meter if meter is not None else _Meter(self.budget)
        try:
            answer, evidence = self._step(self.stage, m)
        except ResourceLimitError as exc:
            answer, evidence = "unknown", str(exc)
        verdict = Verdict(answer, self.stage, self.cls, evidence)
        self.history.append(verdict)
        return verdict

    def run_until(self, stage: int) -> Verdict:
        if stage < 0:
            raise InputError(f"stage must be >= 0, got {stage}")
        while self.stage < stage:
            self.advance()
        return self.history[stage]

    def _step(self, stage: int, meter: _Meter) -> tuple[str, str]:
        raise NotImplementedError


def _ensure_depth(frontier: Frontier, depth: int, meter: _Meter) -> bool:
    if frontier.alive and frontier.depth < depth:
        frontier.advance(depth - frontier.depth, meter=meter)
    return frontier.alive


class _Constant(AnytimeProcess):
    def __init__(self, faf, answer, cls, evidence, budget=None):
        super().__init__(faf, budget)
        self.cls = cls
        self._answer = answer
        self._evidence = evidence

    def _step(self, stage, meter):
        return self._answer, self._evidence


class _Scan(AnytimeProcess):
    """Check one stage's worth of indices; flip permanently on a hit.

    ``check(stage, meter)`` returns hit evidence or None.  Before the first
    hit the verdict is ``miss_answer`` with running evidence.
    """

    def __init__(self, faf, check, hit_answer, miss_answer, cls, miss_evidence, budget=None):
        super().__init__(faf, budget)
        self.cls = cls
        self._check = check
        self._hit_answer = hit_answer
        self._miss_answer = miss_answer
        self._miss_evidence = miss_evidence
        self._hit: str | None = None

    def _step(self, stage, meter):
        if self._hit is None:
            self._hit = self._check(stage, meter)
        if self._hit is not None:
            return self._hit_answer, self._hit
        return self._miss_answer, self._miss_evidence(stage)


class _TreeProcess(AnytimeProcess):
    """Verdict read off the aliveness of a single frontier."""

    def __init__(self, faf, kind, include, exclude, alive_answer, dead_answer, cls, label, budget=None):
        super().__init__(faf, budget)
        self.cls = cls
        self.frontier = Frontier(TreeSpec(faf, kind, frozenset(include), frozenset(exclude)))
        self._alive_answer = alive_answer
        self._dead_answer = dead_answer
        self._label = label
        self._dead_at: int | None = None

    def _step(self, stage, meter):
        if self._dead_at is None and not _ensure_depth(self.frontier, stage, meter):
            self._dead_at = self.frontier.depth
        if self._dead_at is not None:
            return self._dead_answer, f"{self._label} exhausted at depth {self._dead_at}"
        return (
            self._alive_answer,
            f"{self._label} alive at depth {self.frontier.depth} (width {self.frontier.width})",
        )


class _LeastAlive(AnytimeProcess):
    """Nonemptiness via a moving least-seed pointer (settles in the limit).

    The pointer rests on the smallest argument whose forced-membership tree
    is still alive at the current depth; accept is emitted only once it has
    rested through the dyadic window.
    """

    cls = "sigma2"

    def __init__(self, faf, kind, budget=None):
        super().__init__(faf, budget)
        self.kind = kind
        self.pointer: int | None = None
        self.frontier: Frontier | None = None
        self.next_seed = 0
        self.last_move = 0

    def _step(self, stage, meter):
        while True:
            if self.frontier is None:
                if self.next_seed > stage:
                    self.pointer = None
                    break
                self.pointer = self.next_seed
                self.next_seed += 1
                self.frontier = Frontier(
                    TreeSpec(self.faf, self.kind, frozenset((self.pointer,)), frozenset())
                )
                self.last_move = stage
            if _ensure_depth(self.frontier, stage, meter):
                break
            self.frontier = None
        if self.pointer is None:
            return "reject", f"every seed argument up to {stage} refuted"
        if _settled(stage, self.last_move):
            return (
                "accept",
                f"nonempty code seeded by {self.faf.name_of(self.pointer)} "
                f"unrefuted since stage {self.last_move}",
            )
        return "reject", f"seed pointer moved at stage {self.last_move}, inside the settling window"


class _UniFinite(AnytimeProcess):
    """Uniqueness = existence plus one-valuedness of every argument.

    Arguments are verified in order; argument x counts as verified once its
    forced-in or forced-out tree has died (x cannot sit on both sides of two
    different extensions).  Accept needs the verifier to have progressed
    inside the window or caught up with the stage counter.
    """

    cls = "pi2"

    def __init__(self, faf, kind, budget=None):
        super().__init__(faf, budget)
        self.kind = kind
        self.exists = Frontier(TreeSpec(faf, "stb")) if kind == "stb" else None
        self.exists_dead = False
        self.verified = 0
        self.pair: tuple[Frontier, Frontier] | None = None
        self.last_progress = 0

    def _step(self, stage, meter):
        if self.exists is not None and not self.exists_dead:
            if not _ensure_depth(self.exists, stage, meter):
                self.exists_dead = True
        if self.exists_dead:
            return "reject", f"no stable code survives depth {self.exists.depth}"
        while self.verified <= stage:
            x = self.verified
            if self.pair is None:
                self.pair = (
                    Frontier(TreeSpec(self.faf, self.kind, frozenset((x,)), frozenset())),
                    Frontier(TreeSpec(self.faf, self.kind, frozenset(), frozenset((x,)))),
                )
            with_x = _ensure_depth(self.pair[0], stage, meter)
            without_x = _ensure_depth(self.pair[1], stage, meter)
            if with_x and without_x:
                break
            self.verified += 1
            self.pair = None
            self.last_progress = stage
        if self.verified > stage:
            return "accept", f"all arguments up to {stage} verified one-valued"
        if self.last_progress > stage // 2:
            return (
                "accept",
                f"verification reached argument {self.verified} at stage {self.last_progress}",
            )
        return (
            "reject",
            f"argument {self.faf.name_of(self.verified)} sits inside some codes and outside others",
        )


# ---------------------------------------------------------------------------
# Fast characterizations and the finite-semantics grid.


def cred_cf_fast(faf: FinitaryAF, a: int) -> bool:
    """Membership in some conflict-free set: not a self-attacker."""
    if a < 0:
        raise InputError(f"argument index must be >= 0, got {a}")
    return a not in faf.attackers_of(a)


def skep_na_anytime(faf: FinitaryAF, a: int, budget: Budget | None = None) -> AnytimeProcess:
    """Membership in every maximal conflict-free set.

    Holds iff a is self-consistent and every argument in conflict with it
    attacks itself; one candidate is examined per stage.
    """
    if a < 0:
        raise InputError(f"argument index must be >= 0, got {a}")

    def check(stage, meter):
        meter.spend_checks(1)
        if stage == 0 and a in faf.attackers_of(a):
            return f"{faf.name_of(a)} attacks itself"
        y = stage
        if y == a:
            return None
        if y in faf.attackers_of(y):
            return None
        if a in faf.attackers_of(y) or y in faf.attackers_of(a):
            return f"{faf.name_of(y)} is self-consistent and conflicts with {faf.name_of(a)}"
        return None

    return _Scan(
        faf, check, "reject", "accept", "pi1",
        lambda s: f"no refuting argument among indices up to {s}", budget,
    )


def uni_na_anytime(faf: FinitaryAF, budget: Budget | None = None) -> AnytimeProcess:
    """Uniqueness of the maximal conflict-free set.

    Holds iff the self-consistent arguments are pairwise conflict-free;
    stage s tests the pairs (x, s) for x < s.
    """

    def check(stage, meter):
        y = stage
        if y in faf.attackers_of(y):
            return None
        for x in range(stage):
            meter.spend_checks(1)
            if x in faf.attackers_of(x):
                continue
            if x in faf.attackers_of(y) or y in faf.attackers_of(x):
                return (
                    f"{faf.name_of(x)} and {faf.name_of(y)} are self-consistent "
                    f"but conflict, so two maximal conflict-free sets split them"
                )
        return None

    return _Scan(
        faf, check, "reject", "accept", "pi1",
        lambda s: f"self-consistent arguments up to {s} are pairwise conflict-free", budget,
    )


def _ne_cf_scan(faf, budget):
    def check(stage, meter):
        meter.spend_checks(1)
        if stage not in faf.attackers_of(stage):
            return f"{{{faf.name_of(stage)}}} is conflict-free on its own"
        return None

    return _Scan(
        faf, check, "accept", "reject", "sigma1",
        lambda s: f"every argument up to {s} attacks itself", budget,
    )


def _uni_cf_scan(faf, budget):
    def check(stage, meter):
        meter.spend_checks(1)
        if stage not in faf.attackers_of(stage):
            return (
                f"{{{faf.name_of(stage)}}} and the empty set are two different "
                f"conflict-free sets"
            )
        return None

    return _Scan(
        faf, check, "reject", "accept", "pi1",
        lambda s: f"only the empty set is conflict-free among indices up to {s}", budget,
    )


def tree_anytime(
    faf: FinitaryAF,
    sigma: str,
    problem: DecisionProblem,
    budget: Budget | None = None,
) -> AnytimeProcess:
    """The tree-backed grid for the admissible/complete/stable semantics."""
    if sigma not in ("ad", "co", "stb"):
        raise InputError(f"tree-backed semantics are ad/co/stb, got {sigma!r}")
    tag = problem.tag
    a = problem.argument
    if tag == "cred":
        name = faf.name_of(a)
        return _TreeProcess(
            faf, sigma, (a,), (), "accept", "reject", "pi1",
            f"tree of {sigma} codes containing {name}", budget,
        )
    if tag == "skep":
        if sigma == "ad":
            return _Constant(
                faf, "reject", "computable",
                "the empty set is admissible and omits every argument", budget,
            )
        name = faf.name_of(a)
        return _TreeProcess(
            faf, sigma, (), (a,), "reject", "accept", "sigma1",
            f"tree of {sigma} codes omitting {name}", budget,
        )
    if tag == "exists":
        if sigma == "ad":
            return _Constant(faf, "accept", "computable", "the empty set is admissible", budget)
        if sigma == "co":
            return _Constant(
                faf, "accept", "computable",
                "iterating the defense operator from the empty set yields a complete set", budget,
            )
        return _TreeProcess(
            faf, "stb", (), (), "accept", "reject", "pi1", "tree of stable codes", budget,
        )
    if tag == "ne":
        if sigma == "stb":
            # nonempty coincides with existence unless the framework is
            # empty, which a finitary universe never is
            return _TreeProcess(
                faf, "stb", (), (), "accept", "reject", "pi1", "tree of stable codes", budget,
            )
        return _LeastAlive(faf, sigma, budget)
    if tag == "uni":
        return _UniFinite(faf, sigma, budget)
    raise InputError(f"unknown problem tag {tag!r}")


# ---------------------------------------------------------------------------
# Finite witness machinery shared by the infinite-semantics processes.


def finite_admissible(faf: FinitaryAF, members) -> bool:
    """Exact admissibility of a finite set (attacker sets are finite)."""
    ms = frozenset(members)
    for y in ms:
        for b in faf.attackers_of(y):
            if b in ms:
                return False
            if not ms.intersection(faf.attackers_of(b)):
                return False
    return True


def stable_verified_to(faf: FinitaryAF, members, upto: int) -> bool:
    """Conflict-free, and every index up to ``upto`` is inside or attacked."""
    ms = frozenset(members)
    for y in ms:
        if ms.intersection(faf.attackers_of(y)):
            return False
    for z in range(upto + 1):
        if z not in ms and not ms.intersection(faf.attackers_of(z)):
            return False
    return True


def find_admissible_superset(faf, seed, exclude, cap, meter) -> frozenset | None:
    """Depth-first repair search for a finite admissible superset.

    Branches over defenders (bounded by ``cap``, avoiding ``exclude``) of the
    first undefended attacker; deterministic, smallest defender first.  The
    number of visited states is bounded linearly in the cap: a successful
    repair chain is nearly deterministic, while hopeless seeds would
    otherwise branch exponentially before running out of defenders.
    """
    seed = frozenset(seed)
    exclude = frozenset(exclude)
    if seed & exclude:
        return None
    visit_cap = 4 * cap + 16
    visited = set()
    stack = [seed]
    while stack:
        s = stack.pop()
        if s in visited:
            continue
        if len(visited) >= visit_cap:
            return None
        visited.add(s)
        meter.spend_checks(1)
        obligation = None
        broken = False
        for y in sorted(s):
            for b in faf.attackers_of(y):
                if b in s:
                    broken = True
                    break
                if not s.intersection(faf.attackers_of(b)):
                    obligation = b
                    break
            if broken or obligation is not None:
                break
        if broken:
            continue
        if obligation is None:
            return s
        defenders = [
            z
            for z in faf.attackers_of(obligation)
            if z <= cap and z not in exclude and z not in s
        ]
        for z in sorted(defenders, reverse=True):
            stack.append(s | {z})
    return None


class _WitnessCache:
    """Memo for admissible-superset searches with geometric retry backoff.

    Failed searches are retried only once the cap has doubled, so the total
    search work per seed stays proportional to the final successful cap.
    """

    def __init__(self, faf: FinitaryAF):
        self.faf = faf
        self.hits: dict[tuple[frozenset, frozenset], frozenset] = {}
        self.tried: dict[tuple[frozenset, frozenset], int] = {}

    def find(self, seed, exclude, cap, meter) -> frozenset | None:
        key = (frozenset(seed), frozenset(exclude))
        if key in self.hits:
            return self.hits[key]
        last = self.tried.get(key)
        if last is not None and cap < 2 * max(last, 1):
            return None
        self.tried[key] = cap
        found = find_admissible_superset(self.faf, key[0], key[1], cap, meter)
        if found is not None:
            self.hits[key] = found
        return found


def _greedy_stable(faf, seed, upto, meter) -> frozenset | None:
    """Deterministic greedy stable candidate covering indices up to ``upto``.

    Extends the seed left to right, adding each uncovered index or, failing
    that, its smallest eligible attacker.  The result is verified-to-stage
    only; genuine stability is never claimed.
    """
    members = set(seed)
    for y in members:
        meter.spend_checks(1)
        if members.intersection(faf.attackers_of(y)):
            return None
    for z in range(upto + 1):
        meter.spend_checks(1)
        if z in members or members.intersection(faf.attackers_of(z)):
            continue
        for cand in [z] + [w for w in faf.attackers_of(z) if w != z]:
            if cand in faf.attackers_of(cand):
                continue
            if members.intersection(faf.attackers_of(cand)):
                continue
            if any(cand in faf.attackers_of(y) for y in members):
                continue
            members.add(cand)
            break
        else:
            return None
    return frozenset(members)


class _StablePool:
    """Stage-verified stable candidates grown from every singleton seed.

    The family is recomputed per stage; its change counter feeds the
    settling windows of the stable-semantics processes.
    """

    def __init__(self, faf: FinitaryAF):
        self.faf = faf
        self.upto = -1
        self.family: tuple[frozenset, ...] = ()
        self.version = 0
        self.last_change = 0

    def refresh(self, stage, meter) -> None:
        if stage <= self.upto:
            return
        self.upto = stage
        fam = set()
        for s0 in range(-1, stage + 1):
            seed = frozenset() if s0 < 0 else frozenset((s0,))
            cand = _greedy_stable(self.faf, seed, stage, meter)
            if cand is not None:
                fam.add(cand)
        ordered = tuple(sorted(fam, key=lambda s: (len(s), sorted(s))))
        if ordered != self.family:
            self.family = ordered
            self.version += 1
            self.last_change = stage


def _graded_supersets(include, exclude, size):
    """Candidate sets of the given size extending ``include``.

    Graded by the largest free element, then lexicographically, so the
    enumeration order is stable as the index horizon grows.
    """
    include = frozenset(include)
    k = size - len(include)
    if k < 0:
        return
    if k == 0:
        yield include
        return
    banned = include | frozenset(exclude)
    for m in itertools.count():
        if m in banned:
            continue
        below = [x for x in range(m) if x not in banned]
        for combo in itertools.combinations(below, k - 1):
            yield include | frozenset(combo) | {m}


class _InfAdm(AnytimeProcess):
    """Existence of an infinite admissible set around ``include``, avoiding
    ``exclude``.

    Two cooperating searches, either of which may carry the accept:

    * unbounded evidence: finite admissible supersets of the include set are
      collected (seeded searches, their greedy union, and a slow exhaustive
      subset cursor); record-breaking sizes inside the window mean the sizes
      are still growing;
    * bounded evidence: a pointer rests on the least candidate set one
      larger than every finite witness found, whose forced-membership tree
      is still alive; any completion of a surviving path must be infinite.
    """

    cls = "u-sigma2"

    def __init__(self, faf, include=(), exclude=(), budget=None, cache=None):
        super().__init__(faf, budget)
        self.include = frozenset(include)
        self.exclude = frozenset(exclude)
        if self.include & self.exclude:
            raise InputError("include and exclude overlap")
        self.cache = cache if cache is not None else _WitnessCache(faf)
        self.found: dict[int, frozenset] = {}
        self.best_size = len(self.include) if finite_admissible(faf, self.include) else -1
        self.last_record = 0
        self.union_stale = True
        self.union_size = -1
        self.cursor = 1
        self.n_target: int | None = None
        self.gen = None
        self.pending: frozenset | None = None
        self.pointer_frontier: Frontier | None = None
        self.pointer_set: frozenset | None = None
        self.supply_exhausted_at = -1
        self.last_move = 0

    def _record(self, size, stage):
        if size > self.best_size:
            self.best_size = size
            self.last_record = stage

    def _scan_witnesses(self, stage, meter):
        for b in range(stage + 1):
            if b in self.exclude or b in self.found:
                continue
            hit = self.cache.find(self.include | {b}, self.exclude, stage, meter)
            if hit is not None:
                self.found[b] = hit
                self.union_stale = True
                self._record(len(hit), stage)

    def _union_record(self, stage, meter):
        if not self.union_stale:
            return
        self.union_stale = False
        union: frozenset = frozenset()
        for x in sorted(self.found.values(), key=lambda s: (-len(s), sorted(s))):
            if x <= union:
                continue
            meter.spend_checks(1)
            if finite_admissible(self.faf, union | x):
                union = union | x
        if union:
            self.union_size = len(union)
            self._record(len(union), stage)

    def _cursor_scan(self, stage, meter):
        for _ in range(CURSOR_STEPS_PER_STAGE):
            meter.spend_checks(1)
            bits = self.cursor
            self.cursor += 1
            cand = self.include | frozenset(
                i for i in range(bits.bit_length()) if bits >> i & 1
            )
            if cand & self.exclude:
                continue
            if len(cand) <= self.best_size:
                continue
            if finite_admissible(self.faf, cand):
                self._record(len(cand), stage)

    def _advance_pointer(self, stage, meter):
        target = max(len(self.include), self.best_size + 1)
        if target != self.n_target:
            self.n_target = target
            self.gen = _graded_supersets(self.include, self.exclude, target)
            self.pending = next(self.gen, None)
            self.pointer_frontier = None
            self.pointer_set = None
            self.last_move = stage
        examined = 0
        while True:
            if self.pointer_frontier is not None:
                if _ensure_depth(self.pointer_frontier, stage, meter):
                    return
                self.pointer_frontier = None
                self.pointer_set = None
                self.last_move = stage
            if (
                self.pending is None
                or max(self.pending, default=-1) * POINTER_HORIZON_FACTOR > stage
            ):
                self.supply_exhausted_at = stage
                return
            if examined >= POINTER_CANDIDATES_PER_STAGE:
                self.last_move = stage
                return
            examined += 1
            cand = self.pending
            self.pending = next(self.gen, None)
            meter.spend_checks(1)
            if any(
                x in self.faf.attackers_of(y) for x in cand for y in cand
            ):
                continue
            self.pointer_set = cand
            self.pointer_frontier = Frontier(
                TreeSpec(self.faf, "ad", cand, self.exclude)
            )
            self.last_move = stage

    def _step(self, stage, meter):
        self._scan_witnesses(stage, meter)
        self._union_record(stage, meter)
        self._cursor_scan(stage, meter)
        growing = self.best_size >= 0 and self.last_record > stage // 2
        if not growing:
            # while records keep coming the pointer's verdict is moot, so
            # its tree work would only burn the budget
            self._advance_pointer(stage, meter)
        rested = (
            self.pointer_frontier is not None
            and self.pointer_frontier.alive
            and _settled(stage, self.last_move)
        )
        if growing:
            return (
                "accept",
                f"finite admissible witnesses still growing: size {self.best_size} "
                f"reached at stage {self.last_record}",
            )
        if rested:
            members = ",".join(self.faf.name_of(x) for x in sorted(self.pointer_set))
            return (
                "accept",
                f"candidate {{{members}}} of size {self.n_target} exceeds every finite "
                f"witness and survives depth {stage}",
            )
        if self.pointer_frontier is not None and self.pointer_frontier.alive:
            return (
                "reject",
                f"candidate pointer moved at stage {self.last_move}, inside the settling window",
            )
        return (
            "reject",
            f"size-{self.n_target} candidates refuted or beyond the stage horizon, "
            f"witness sizes stalled at {max(self.best_size, 0)}",
        )


class _InfStb(AnytimeProcess):
    """Existence of an infinite stable set around ``include``, avoiding
    ``exclude``.

    Reject needs a settled family of stage-verified finite stable candidates
    that prunes every surviving code (each code would have to extend one of
    them); while the family keeps changing or some code escapes it, accept.
    """

    cls = "pi2"

    def __init__(self, faf, include=(), exclude=(), budget=None, pool=None):
        super().__init__(faf, budget)
        self.include = frozenset(include)
        self.exclude = frozenset(exclude)
        if self.include & self.exclude:
            raise InputError("include and exclude overlap")
        self.pool = pool if pool is not None else _StablePool(faf)
        self.frontier: Frontier | None = None
        self.frontier_version = -1
        self.dead_at: int | None = None

    def _prunable(self, node) -> bool:
        return not any(x <= node.ins for x in self.pool.family)

    def _step(self, stage, meter):
        self.pool.refresh(stage, meter)
        # the filter reads the live family, so a growing pool prunes alive
        # frontiers on their next level; only a dead frontier could be
        # resurrected by a family change and needs rebuilding from scratch
        if self.frontier is None or (
            self.dead_at is not None and self.pool.version != self.frontier_version
        ):
            self.frontier_version = self.pool.version
            self.frontier = Frontier(
                TreeSpec(self.faf, "stb", self.include, self.exclude),
                node_filter=self._prunable,
            )
            self.dead_at = None
        if self.dead_at is None and not _ensure_depth(self.frontier, stage, meter):
            self.dead_at = self.frontier.depth
            self.frontier_version = self.pool.version
        settled = _settled(stage, self.pool.last_change)
        if self.dead_at is not None and settled:
            return (
                "reject",
                f"{len(self.pool.family)} verified stable sets prune every code "
                f"by depth {self.dead_at}",
            )
        if self.dead_at is not None:
            return (
                "accept",
                f"pruning family still changing (last change at stage {self.pool.last_change})",
            )
        return (
            "accept",
            f"stable codes escape the verified family at depth {self.frontier.depth} "
            f"(width {self.frontier.width})",
        )


class _Negation(AnytimeProcess):
    """Answer-flipping wrapper (skeptical acceptance via omission)."""

    def __init__(self, inner: AnytimeProcess, cls: str, note: str):
        super().__init__(inner.faf, inner.budget)
        self.cls = cls
        self.inner = inner
        self.note = note

    def _step(self, stage, meter):
        verdict = self.inner.advance(meter)
        if verdict.answer == "unknown":
            return "unknown", verdict.evidence
        flipped = "reject" if verdict.answer == "accept" else "accept"
        return flipped, f"{self.note}: {verdict.evidence}"


class _UniInf(AnytimeProcess):
    """Uniqueness of the infinite extension, componentwise.

    Stage-s verdict: existence holds and every sufficiently old argument is
    either not credulously accepted or skeptically accepted.  A membership
    component pair for argument ``a`` is hatched at stage ``a`` and advanced
    one stage per composite stage, but consulted only from stage
    ``UNI_EVAL_DELAY * a`` on, past its startup churn.  Children share the
    witness caches and the per-stage budget.
    """

    cls = "pi3"

    def __init__(self, faf, flavor: str, budget=None):
        super().__init__(faf, budget)
        if flavor not in ("inf-ad", "inf-stb"):
            raise InputError(f"uniqueness runs on inf-ad or inf-stb, got {flavor!r}")
        self.flavor = flavor
        self.cache = _WitnessCache(faf)
        self.pool = _StablePool(faf)
        self.exists_proc = self._make(include=(), exclude=())
        self.children: list[tuple[AnytimeProcess, AnytimeProcess]] = []

    def _make(self, include, exclude):
        if self.flavor == "inf-ad":
            return _InfAdm(self.faf, include, exclude, self.budget, cache=self.cache)
        return _InfStb(self.faf, include, exclude, self.budget, pool=self.pool)

    def _step(self, stage, meter):
        while self.exists_proc.stage < stage:
            self.exists_proc.advance(meter)
        while len(self.children) <= stage:
            a = len(self.children)
            neg_cls = "d-sigma2" if self.flavor == "inf-ad" else "sigma2"
            self.children.append(
                (
                    self._make(include=(a,), exclude=()),
                    _Negation(
                        self._make(include=(), exclude=(a,)),
                        neg_cls,
                        "no large extension omits the argument",
                    ),
                )
            )
        for cred_p, skep_p in self.children:
            cred_p.advance(meter)
            skep_p.advance(meter)
        exists_v = self.exists_proc.history[stage]
        ripe = stage // UNI_EVAL_DELAY
        blocked = exists_v.answer == "unknown"
        split = None
        for a in range(min(ripe, len(self.children) - 1) + 1):
            cred_p, skep_p = self.children[a]
            cred_v = cred_p.history[cred_p.stage]
            skep_v = skep_p.history[skep_p.stage]
            if cred_v.answer == "unknown" or skep_v.answer == "unknown":
                blocked = True
                break
            if cred_v.answer == "accept" and skep_v.answer == "reject":
                split = a
                break
        if blocked:
            return "unknown", "component verdicts ran out of budget"
        if exists_v.answer == "reject":
            return "reject", f"existence component rejects: {exists_v.evidence}"
        if split is not None:
            name = self.faf.name_of(split)
            return (
                "reject",
                f"{name} is in some large extension but not in all of them",
            )
        return (
            "accept",
            f"existence holds and arguments up to {ripe} are one-valued",
        )


def infad_anytime(faf: FinitaryAF, problem: DecisionProblem, budget: Budget | None = None) -> AnytimeProcess:
    """Infinite-admissible existence / membership processes."""
    tag = problem.tag
    if tag in ("exists", "ne"):
        return _InfAdm(faf, (), (), budget)
    if tag == "cred":
        return _InfAdm(faf, (problem.argument,), (), budget)
    if tag == "skep":
        return _Negation(
            _InfAdm(faf, (), (problem.argument,), budget),
            "d-sigma2",
            "no infinite admissible set omits the argument",
        )
    raise InputError(f"no infinite-admissible process for problem {tag!r}")


def infstb_anytime(faf: FinitaryAF, problem: DecisionProblem, budget: Budget | None = None) -> AnytimeProcess:
    """Infinite-stable existence / membership processes."""
    tag = problem.tag
    if tag in ("exists", "ne"):
        return _InfStb(faf, (), (), budget)
    if tag == "cred":
        return _InfStb(faf, (problem.argument,), (), budget)
    if tag == "skep":
        return _Negation(
            _InfStb(faf, (), (problem.argument,), budget),
            "sigma2",
            "no infinite stable set omits the argument",
        )
    raise InputError(f"no infinite-stable process for problem {tag!r}")


def infco_anytime(faf: FinitaryAF, problem: DecisionProblem, budget: Budget | None = None) -> AnytimeProcess:
    """Infinite-complete existence and membership delegate to the
    admissible case: closing an infinite admissible set under defense stays
    infinite, and every infinite complete set is admissible."""
    if problem.tag not in ("exists", "cred"):
        raise InputError(
            f"infinite-complete supports exists/cred only, got {problem.tag!r}"
        )
    return infad_anytime(faf, problem, budget)


def uni_inf_anytime(faf: FinitaryAF, sigma: str, budget: Budget | None = None) -> AnytimeProcess:
    if sigma not in ("inf-ad", "inf-stb"):
        raise InputError(f"uniqueness of the infinite extension runs on inf-ad/inf-stb, got {sigma!r}")
    return _UniInf(faf, sigma, budget)


def infcf_trivia(faf: FinitaryAF, problem: DecisionProblem, stage: int = 0) -> Verdict:
    """The infinite-conflict-free corner.

    Uniqueness is constantly false: an infinite conflict-free set contains a
    second one.  Everything else lies beyond stagewise approximation; the
    verdict is unknown with a labeled non-convergent probe as evidence.
    """
    if stage < 0:
        raise InputError(f"stage must be >= 0, got {stage}")
    if problem.tag == "uni":
        return Verdict(
            "reject", stage, "computable",
            "every infinite conflict-free set strictly contains another infinite one",
        )
    members: list[int] = []
    for z in range(stage):
        if z in faf.attackers_of(z):
            continue
        if any(z in faf.attackers_of(y) or y in faf.attackers_of(z) for y in members):
            continue
        members.append(z)
    return Verdict(
        "unknown", stage, "none",
        f"beyond stagewise approximation; non-convergent probe: conflict-free set "
        f"of size {len(members)} among the first {stage} indices",
    )


class _TriviaProcess(AnytimeProcess):
    """Per-stage wrapper over the non-approximable corner (class none)."""

    def __init__(self, faf, problem, budget=None):
        super().__init__(faf, budget)
        self.problem = problem
        self.cls = "computable" if problem.tag == "uni" else "none"

    def _step(self, stage, meter):
        v = infcf_trivia(self.faf, self.problem, stage)
        return v.answer, v.evidence


# ---------------------------------------------------------------------------
# Witness probe.


class YSetProbe:
    """Monotone stagewise approximation of the witnessable arguments.

    An argument is certified once a finite witness extension around it is
    found (exact for admissibility, verified-to-stage for stability), or
    once its forced-membership tree is still alive when the stage reaches
    ``Y_PROBE_WINDOW`` times its index plus ``Y_PROBE_MARGIN``.  Certification
    is sticky, so the reported set is monotone in the stage.
    """

    def __init__(self, faf, sigma, include=(), exclude=(), budget=None):
        if sigma not in ("ad", "stb"):
            raise InputError(f"the witness probe covers ad/stb, got {sigma!r}")
        self.faf = faf
        self.sigma = sigma
        self.include = frozenset(include)
        self.exclude = frozenset(exclude)
        if self.include & self.exclude:
            raise InputError("include and exclude overlap")
        self.budget = budget if budget is not None else Budget()
        self.cache = _WitnessCache(faf)
        self.certified: set[int] = set()
        self.refuted: set[int] = set()
        self.partial = False
        self.stage = -1

    def _witness(self, b, stage, meter) -> bool:
        seed = self.include | {b}
        if self.sigma == "ad":
            return self.cache.find(seed, self.exclude, stage, meter) is not None
        cand = _greedy_stable(self.faf, seed, stage, meter)
        return cand is not None and not cand & self.exclude

    def _stage_work(self, stage, meter):
        for b in range(stage + 1):
            if b in self.exclude or b in self.certified:
                continue
            if self._witness(b, stage, meter):
                self.certified.add(b)
        if stage < Y_PROBE_MARGIN:
            return
        horizon = (stage - Y_PROBE_MARGIN) // Y_PROBE_WINDOW
        for b in range(horizon + 1):
            if b in self.exclude or b in self.certified or b in self.refuted:
                continue
            frontier = Frontier(
                TreeSpec(self.faf, self.sigma, self.include | {b}, self.exclude)
            )
            if _ensure_depth(frontier, stage, meter):
                self.certified.add(b)
            else:
                self.refuted.add(b)

    def advance_to(self, stage: int) -> frozenset[int]:
        if stage < 0:
            raise InputError(f"stage must be >= 0, got {stage}")
        while self.stage < stage:
            s = self.stage + 1
            meter = _Meter(self.budget)
            try:
                self._stage_work(s, meter)
            except ResourceLimitError:
                self.partial = True
            self.stage = s
        return frozenset(self.certified)


def y_set_probe(
    faf: FinitaryAF,
    sigma: str,
    include=(),
    exclude=(),
    stage: int = 0,
    budget: Budget | None = None,
) -> frozenset[int]:
    """One-shot form of the witness probe at the given stage."""
    return YSetProbe(faf, sigma, include, exclude, budget).advance_to(stage)


# ---------------------------------------------------------------------------
# The full grid.


def convergence_class(problem_tag: str, sigma: str) -> str:
    """The class label the factory will attach for this grid cell."""
    table = {
        "cf": {"cred": "computable", "skep": "computable", "exists": "computable",
               "ne": "sigma1", "uni": "pi1"},
        "na": {"cred": "computable", "skep": "pi1", "exists": "computable",
               "ne": "sigma1", "uni": "pi1"},
        "ad": {"cred": "pi1", "skep": "computable", "exists": "computable",
               "ne": "sigma2", "uni": "pi2"},
        "co": {"cred": "pi1", "skep": "sigma1", "exists": "computable",
               "ne": "sigma2", "uni": "pi2"},
        "stb": {"cred": "pi1", "skep": "sigma1", "exists": "pi1",
                "ne": "pi1", "uni": "pi2"},
        "inf-cf": {"cred": "none", "skep": "none", "exists": "none",
                   "ne": "none", "uni": "computable"},
        "inf-na": {"cred": "none", "skep": "none", "exists": "none",
                   "ne": "none", "uni": "none"},
        "inf-ad": {"cred": "u-sigma2", "skep": "d-sigma2", "exists": "u-sigma2",
                   "ne": "u-sigma2", "uni": "pi3"},
        "inf-co": {"cred": "u-sigma2", "exists": "u-sigma2"},
        "inf-stb": {"cred": "pi2", "skep": "sigma2", "exists": "pi2",
                    "ne": "pi2", "uni": "pi3"},
    }
    try:
        return table[sigma][problem_tag]
    except KeyError:
        raise InputError(f"no process for problem {problem_tag!r} under {sigma!r}") from None


def anytime_process(
    faf: FinitaryAF,
    problem: DecisionProblem,
    sigma: str,
    budget: Budget | None = None,
) -> AnytimeProcess:
    """Build the anytime process for one cell of the problem/semantics grid."""
    if sigma not in ALL_SEMANTICS:
        raise InputError(f"unknown semantics {sigma!r}; expected one of {ALL_SEMANTICS}")
    tag = problem.tag
    a = problem.argument
    if sigma in ("ad", "co", "stb"):
        return tree_anytime(faf, sigma, problem, budget)
    if sigma in ("cf", "na"):
        if tag == "cred":
            ok = cred_cf_fast(faf, a)
            name = faf.name_of(a)
            return _Constant(
                faf, "accept" if ok else "reject", "computable",
                f"{name} does not attack itself" if ok else f"{name} attacks itself",
                budget,
            )
        if tag == "exists":
            return _Constant(
                faf, "accept", "computable",
                "the empty set is conflict-free"
                if sigma == "cf"
                else "every conflict-free set extends to a maximal one",
                budget,
            )
        if tag == "ne":
            return _ne_cf_scan(faf, budget)
        if sigma == "cf":
            if tag == "skep":
                return _Constant(
                    faf, "reject", "computable",
                    "the empty set is conflict-free and omits every argument", budget,
                )
            return _uni_cf_scan(faf, budget)
        if tag == "skep":
            return skep_na_anytime(faf, a, budget)
        return uni_na_anytime(faf, budget)
    if sigma in ("inf-cf", "inf-na"):
        if sigma == "inf-na" and tag == "uni":
            return _TriviaProcess(faf, DecisionProblem("exists"), budget)  # class none
        return _TriviaProcess(faf, problem, budget)
    if sigma == "inf-ad":
        if tag == "uni":
            return _UniInf(faf, "inf-ad", budget)
        return infad_anytime(faf, problem, budget)
    if sigma == "inf-co":
        return infco_anytime(faf, problem, budget)
    if tag == "uni":
        return _UniInf(faf, "inf-stb", budget)
    return infstb_anytime(faf, problem, budget)

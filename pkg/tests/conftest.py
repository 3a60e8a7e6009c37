import random

from hypothesis import strategies as st

import finaf


def build_recorded_framework(gadget: str, config: str) -> finaf.FinitaryAF:
    """Rebuild a framework from a golden-file recipe."""
    if gadget == "fig1":
        return finaf.gadget_fig1(finaf.parse_stage_set(config))
    if gadget == "stars":
        if config.isdigit():
            return finaf.gadget_stars(int(config))
        return finaf.gadget_stars(finaf.parse_stage_set(config))
    if gadget == "fig2" and config == "all-finite":
        return finaf.gadget_fig2(lambda i: finaf.StageSet.from_elements([0]))
    if gadget == "fig2" and config == "first-infinite":
        return finaf.gadget_fig2(
            lambda i: finaf.StageSet.always() if i == 1 else finaf.StageSet.from_elements([0])
        )
    if gadget == "unistb" and config == "all-empty":
        return finaf.gadget_unistb(lambda i: finaf.StageSet.empty())
    if gadget == "unistb" and config == "exp0-infinite":
        return finaf.gadget_unistb(
            lambda i: finaf.StageSet.always() if i == 0 else finaf.StageSet.empty()
        )
    raise ValueError(f"no recipe for {gadget!r} / {config!r}")


def random_finite_af(rng: random.Random, max_args: int = 5) -> finaf.FiniteAF:
    n = rng.randint(0, max_args)
    attacks = frozenset(
        (i, j) for i in range(n) for j in range(n) if rng.random() < 0.35
    )
    return finaf.FiniteAF(n, attacks)


@st.composite
def finite_afs(draw, max_args: int = 4):
    n = draw(st.integers(min_value=0, max_value=max_args))
    pairs = [(i, j) for i in range(n) for j in range(n)]
    if not pairs:
        return finaf.FiniteAF(n)
    return finaf.FiniteAF(n, draw(st.frozensets(st.sampled_from(pairs))))


@st.composite
def afs_with_subset(draw, max_args: int = 4):
    af = draw(finite_afs(max_args))
    if af.n_args == 0:
        return af, frozenset()
    members = draw(st.frozensets(st.integers(0, af.n_args - 1)))
    return af, members


def assert_class_law(cls: str, answers: list[str]) -> None:
    """The two finitely checkable limit laws.

    sigma1 streams may switch to accept once and never back; pi1 streams
    likewise for reject.  Budget gaps (unknown) pause the stream without
    resetting it.
    """
    known = [a for a in answers if a != "unknown"]
    if cls == "sigma1":
        assert "".join("a" if a == "accept" else "r" for a in known).lstrip("r").count("r") == 0
    elif cls == "pi1":
        assert "".join("a" if a == "accept" else "r" for a in known).lstrip("a").count("a") == 0

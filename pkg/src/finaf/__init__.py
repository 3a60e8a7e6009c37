"""Argumentation-framework toolkit: finite oracles, lazy infinite
frameworks, extension-coding trees, and anytime decision processes."""

from .core import (
    ALL_SEMANTICS,
    FINITE_SEMANTICS,
    INFINITE_SEMANTICS,
    FiniteAF,
    InputError,
    ResourceLimitError,
    attackers,
    attacked_by,
    characteristic,
    is_conflict_free,
    is_extension,
)
from .oracle import (
    EXISTS,
    NE,
    UNI,
    DecisionProblem,
    cred,
    decide_finite,
    enumerate_extensions,
    grounded,
    skep,
)
from .finitary import (
    FinitaryAF,
    StageSet,
    disjoint_union,
    embed_finite,
    gadget_chain_w,
    gadget_fig1,
    gadget_fig2,
    gadget_stars,
    gadget_tree_cf,
    gadget_unistb,
    parse_stage_set,
    truncate,
    truncation_names,
)
from .trees import (
    TreeSpec,
    Frontier,
    alive_at_depth,
    children,
    decision_depth,
    extensions_via_tree,
    is_node,
)
from .decide import (
    AnytimeProcess,
    Budget,
    Verdict,
    YSetProbe,
    anytime_process,
    convergence_class,
    cred_cf_fast,
    infad_anytime,
    infcf_trivia,
    infco_anytime,
    infstb_anytime,
    skep_na_anytime,
    tree_anytime,
    uni_inf_anytime,
    uni_na_anytime,
    y_set_probe,
)

__all__ = [name for name in dir() if not name.startswith("_")]

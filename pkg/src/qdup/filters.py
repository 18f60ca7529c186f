"""The four elimination stages: Jaccard, entity, keyphrase share, negation.

Each stage maps (input question, candidate ids) to a retained subset plus a
decision record per candidate, so reports can explain exactly where and why
every candidate dropped out. Stage functions are pure with respect to the
store and iterate candidates in sorted id order for reproducible traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

from .keyphrase import keyphrase_share

if TYPE_CHECKING:
    from .corpus import Question, QuestionStore


class Stage(str, Enum):
    JACCARD = "JACCARD"
    ENTITY = "ENTITY"
    KEYPHRASE = "KEYPHRASE"
    NEGATION = "NEGATION"


class Action(str, Enum):
    ELIMINATED = "ELIMINATED"
    RETAINED = "RETAINED"
    EXACT_DUP = "EXACT_DUP"


@dataclass(frozen=True, slots=True)
class StageDecision:
    """One candidate's fate at one stage; score set for scored stages."""

    candidate_id: str
    stage: Stage
    action: Action
    score: float | None = None

    def __post_init__(self):
        if self.action is Action.EXACT_DUP and self.stage is not Stage.JACCARD:
            raise ValueError("EXACT_DUP decisions can only come from the JACCARD stage")


def jaccard(a: Sequence[str], b: Sequence[str]) -> float:
    """Token-set Jaccard similarity; both empty -> 1.0, one empty -> 0.0."""
    set_a, set_b = set(a), set(b)
    if not set_a and not set_b:
        return 1.0
    if not set_a or not set_b:
        return 0.0
    inter = len(set_a & set_b)
    return inter / (len(set_a) + len(set_b) - inter)


def negation_signature(tokens: Iterable[str], lexicon: frozenset[str]) -> frozenset[str]:
    """Set of lexicon cues present in the tokens (presence, not count).

    Cues containing an apostrophe ("n't") match as token suffixes; all
    others must match a whole token.
    """
    token_list = list(tokens)
    token_set = set(token_list)
    found = set()
    for cue in lexicon:
        if "'" in cue:
            if any(tok.endswith(cue) for tok in token_list):
                found.add(cue)
        elif cue in token_set:
            found.add(cue)
    return frozenset(found)


def jaccard_stage(
    q: "Question",
    cands: Iterable[str],
    store: "QuestionStore",
    threshold: float,
) -> tuple[set[str], set[str], list[StageDecision]]:
    """Partition candidates into exact (J=1), retained (>= threshold), eliminated."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"jaccard threshold must be in [0,1], got {threshold}")
    exact: set[str] = set()
    retained: set[str] = set()
    decisions: list[StageDecision] = []
    q_tokens = set(q.norm_tokens)
    for cid in sorted(cands):
        score = jaccard(q_tokens, store.questions[cid].norm_tokens)
        if score == 1.0:
            exact.add(cid)
            action = Action.EXACT_DUP
        elif score >= threshold:
            retained.add(cid)
            action = Action.RETAINED
        else:
            action = Action.ELIMINATED
        decisions.append(StageDecision(cid, Stage.JACCARD, action, score))
    return exact, retained, decisions


def entity_stage(
    q: "Question", cands: Iterable[str], store: "QuestionStore"
) -> tuple[set[str], list[StageDecision]]:
    """Retain a candidate only if its entity set equals the input's exactly.

    A non-empty symmetric difference in (surface, label) pairs means the two
    questions talk about different things and the candidate is dropped.
    """
    retained: set[str] = set()
    decisions: list[StageDecision] = []
    for cid in sorted(cands):
        same = store.questions[cid].entities == q.entities
        if same:
            retained.add(cid)
        decisions.append(
            StageDecision(cid, Stage.ENTITY, Action.RETAINED if same else Action.ELIMINATED)
        )
    return retained, decisions


def keyphrase_stage(
    q: "Question",
    cands: Iterable[str],
    store: "QuestionStore",
    threshold: float,
) -> tuple[set[str], list[StageDecision]]:
    """Retain candidates whose keyphrase share with the input is >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"share threshold must be in [0,1], got {threshold}")
    retained: set[str] = set()
    decisions: list[StageDecision] = []
    for cid in sorted(cands):
        score = keyphrase_share(q.keyphrases, store.questions[cid].keyphrases)
        if score >= threshold:
            retained.add(cid)
            action = Action.RETAINED
        else:
            action = Action.ELIMINATED
        decisions.append(StageDecision(cid, Stage.KEYPHRASE, action, score))
    return retained, decisions


def negation_stage(
    q: "Question",
    cands: Iterable[str],
    store: "QuestionStore",
    lexicon: frozenset[str],
) -> tuple[set[str], list[StageDecision]]:
    """Retain candidates whose negation-cue signature matches the input's."""
    if not lexicon:
        raise ValueError("negation lexicon must be non-empty")
    retained: set[str] = set()
    decisions: list[StageDecision] = []
    for cid in sorted(cands):
        same = store.questions[cid].negation_cues == q.negation_cues
        if same:
            retained.add(cid)
        decisions.append(
            StageDecision(cid, Stage.NEGATION, Action.RETAINED if same else Action.ELIMINATED)
        )
    return retained, decisions

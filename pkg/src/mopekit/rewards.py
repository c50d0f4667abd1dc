"""Motion-aware caption scoring: component metrics, composite, hallucination.

All metrics run over extracted MotionAction lists. Generated/reference
actions are matched by concept with order-preserving pairing, so duplicate
concepts pair first-with-first in temporal order.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations

from .amr import AmrGraph
from .config import MopeConfig, RewardWeights
from .conllu import DepSentence
from .extraction import MotionAction, run_mope


@dataclass(frozen=True)
class RewardBreakdown:
    r_action: float
    r_order: float
    r_direction: float
    composite: float
    hall_added: int
    hall_order: int
    hall_direction: int
    mo_hall: float

    def to_dict(self) -> dict:
        return {
            "r_action": self.r_action,
            "r_order": self.r_order,
            "r_direction": self.r_direction,
            "composite": self.composite,
            "hall_added": self.hall_added,
            "hall_order": self.hall_order,
            "hall_direction": self.hall_direction,
            "mo_hall": self.mo_hall,
        }


def action_f1(generated: list[MotionAction], reference: list[MotionAction]) -> float:
    """Multiset F1 over action concepts.

    Both sides empty scores 1.0; exactly one side empty scores 0.0.
    """
    if not generated and not reference:
        return 1.0
    if not generated or not reference:
        return 0.0
    gen = Counter(a.concept for a in generated)
    ref = Counter(a.concept for a in reference)
    overlap = sum((gen & ref).values())
    precision = overlap / len(generated)
    recall = overlap / len(reference)
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def match_actions(
    generated: list[MotionAction], reference: list[MotionAction]
) -> list[tuple[MotionAction, MotionAction]]:
    """Concept-matched (generated, reference) pairs.

    Occurrences of a duplicated concept pair up in list order (lists from
    run_mope are already in temporal order). Pairs are returned in
    reference order.
    """
    gen_by_concept: dict[str, list[MotionAction]] = defaultdict(list)
    for a in generated:
        gen_by_concept[a.concept].append(a)
    used: dict[str, int] = defaultdict(int)
    pairs = []
    for r in reference:
        queue = gen_by_concept.get(r.concept, ())
        i = used[r.concept]
        if i < len(queue):
            pairs.append((queue[i], r))
            used[r.concept] += 1
    return pairs


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _gold_pairs(pairs):
    return [
        (p1, p2)
        for p1, p2 in combinations(pairs, 2)
        if p1[1].temporal_order != -1
        and p2[1].temporal_order != -1
        and p1[1].temporal_order != p2[1].temporal_order
    ]


def order_accuracy(generated: list[MotionAction], reference: list[MotionAction]) -> float:
    """Share of matched reference pairs whose relative order is preserved.

    Gold pairs are unordered pairs of matched reference actions with
    distinct, non-(-1) temporal orders; a pair counts when the generated
    counterparts compare with the same sign. No gold pairs scores 1.0.
    """
    gold = _gold_pairs(match_actions(generated, reference))
    if not gold:
        return 1.0
    correct = 0
    for (g1, r1), (g2, r2) in gold:
        if _sign(g1.temporal_order - g2.temporal_order) == _sign(
            r1.temporal_order - r2.temporal_order
        ):
            correct += 1
    return correct / len(gold)


def direction_accuracy(generated: list[MotionAction], reference: list[MotionAction]) -> float:
    """Share of matched, direction-bearing reference actions the generated
    side reproduces (case-insensitive). No relevant directions scores 1.0."""
    relevant = [(g, r) for g, r in match_actions(generated, reference) if r.direction]
    if not relevant:
        return 1.0
    correct = sum(
        1
        for g, r in relevant
        if g.direction is not None and g.direction.lower() == r.direction.lower()
    )
    return correct / len(relevant)


def mo_hall(
    generated: list[MotionAction], reference: list[MotionAction]
) -> tuple[int, int, int, float]:
    """Hallucination counts: (added, order, direction, total).

    Added: generated concepts without a reference counterpart (multiset).
    Order: gold pairs whose generated comparison is strictly inverted.
    Direction: relevant reference directions contradicted by a present but
    different generated direction.
    """
    gen = Counter(a.concept for a in generated)
    ref = Counter(a.concept for a in reference)
    added = sum((gen - ref).values())

    pairs = match_actions(generated, reference)
    inverted = 0
    for (g1, r1), (g2, r2) in _gold_pairs(pairs):
        gs = _sign(g1.temporal_order - g2.temporal_order)
        rs = _sign(r1.temporal_order - r2.temporal_order)
        if gs != 0 and gs == -rs:
            inverted += 1

    contradicted = sum(
        1
        for g, r in pairs
        if r.direction
        and g.direction is not None
        and g.direction.lower() != r.direction.lower()
    )
    return added, inverted, contradicted, float(added + inverted + contradicted)


def score_actions(
    generated: list[MotionAction],
    reference: list[MotionAction],
    weights: RewardWeights | None = None,
) -> RewardBreakdown:
    """Full breakdown for already-extracted action lists."""
    weights = weights or RewardWeights()
    r_action = action_f1(generated, reference)
    r_order = order_accuracy(generated, reference)
    r_direction = direction_accuracy(generated, reference)
    composite = (
        weights.w_action * r_action
        + weights.w_order * r_order
        + weights.w_direction * r_direction
    )
    added, inverted, contradicted, total = mo_hall(generated, reference)
    return RewardBreakdown(
        r_action=r_action,
        r_order=r_order,
        r_direction=r_direction,
        composite=composite,
        hall_added=added,
        hall_order=inverted,
        hall_direction=contradicted,
        mo_hall=total,
    )


def composite_reward(
    generated: tuple[list[AmrGraph], list[DepSentence]],
    reference: tuple[list[AmrGraph], list[DepSentence]],
    weights: RewardWeights | None = None,
    config: MopeConfig | None = None,
) -> RewardBreakdown:
    """Extract actions for both captions, then score generated vs reference."""
    config = config or MopeConfig()
    gen_actions = run_mope(generated[0], generated[1], config)
    ref_actions = run_mope(reference[0], reference[1], config)
    return score_actions(gen_actions, ref_actions, weights)

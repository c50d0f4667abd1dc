"""Temporal cue extraction, conflict resolution, and topological ordering.

All edges entering resolution point from the earlier action to the later
one; ``normalize_edges`` converts raw clause/main pairs into that form.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, replace

from .amr import AmrGraph, outgoing
from .config import MopeConfig
from .conllu import DepSentence, children
from .extraction import MotionAction

KIND_EXPLICIT = "explicit-dep"
KIND_AMR_TIME = "amr-time"
KIND_IMPLICIT = "implicit"
_PRIORITY = {KIND_EXPLICIT: 0, KIND_AMR_TIME: 1, KIND_IMPLICIT: 2}


@dataclass(frozen=True)
class TemporalEdge:
    source: int
    target: int
    kind: str
    connective: str | None = None


@dataclass(frozen=True)
class ActionGraph:
    nodes: list[int]
    edges: list[TemporalEdge]


def _base(deprel: str) -> str:
    return deprel.split(":", 1)[0]


def extract_dep_edges(
    actions: list[MotionAction],
    sentences: list[DepSentence],
    config: MopeConfig,
) -> list[TemporalEdge]:
    """Raw temporal cues from the dependency trees.

    Adverbial-clause edges are emitted as (clause, main) pairs and still
    need ``normalize_edges``. Cues, in emission order per sentence:
    advcl with a temporal mark (explicit), "then"-modified conjuncts
    (explicit), "and" coordination (implicit), then adjacency between
    aligned verbs not yet connected (implicit "sequence"). Consecutive
    sentences are bridged with an implicit "sequence" edge unless disabled.
    """
    by_pos = {
        (a.sent_index, a.token_index): a
        for a in actions
        if a.sent_index is not None and a.token_index is not None
    }
    edges: list[TemporalEdge] = []
    linked: set[frozenset[int]] = set()

    def add(source: int, target: int, kind: str, connective: str | None) -> None:
        edges.append(TemporalEdge(source, target, kind, connective))
        linked.add(frozenset((source, target)))

    per_sentence: list[list[MotionAction]] = []
    for si, sentence in enumerate(sentences):
        verbs = sorted(
            (a for a in actions if a.sent_index == si),
            key=lambda a: a.token_index,
        )
        per_sentence.append(verbs)

        for act in verbs:
            tok = sentence.tokens[act.token_index - 1]
            if _base(config.canonical(tok.deprel)) != "advcl" or not tok.head:
                continue
            main = by_pos.get((si, tok.head))
            if main is None:
                continue
            mark = next(
                (
                    t
                    for t in children(sentence, tok.index)
                    if _base(config.canonical(t.deprel)) == "mark"
                    and t.lemma.lower() in config.temporal_connectives
                ),
                None,
            )
            if mark is not None:
                add(act.id, main.id, KIND_EXPLICIT, mark.lemma.lower())

        for act in verbs:
            tok = sentence.tokens[act.token_index - 1]
            if _base(config.canonical(tok.deprel)) != "conj" or not tok.head:
                continue
            head = by_pos.get((si, tok.head))
            if head is None:
                continue
            has_then = any(
                _base(config.canonical(t.deprel)) == "advmod" and t.lemma.lower() == "then"
                for t in children(sentence, tok.index)
            )
            if has_then:
                add(head.id, act.id, KIND_EXPLICIT, "then")
                continue
            cc_here = any(
                _base(config.canonical(t.deprel)) == "cc" and t.lemma.lower() == "and"
                for t in children(sentence, tok.index)
            )
            cc_between = any(
                _base(config.canonical(t.deprel)) == "cc"
                and t.lemma.lower() == "and"
                and tok.head < t.index < tok.index
                for t in children(sentence, tok.head)
            )
            if cc_here or cc_between:
                add(head.id, act.id, KIND_IMPLICIT, "and")

        for left, right in zip(verbs, verbs[1:]):
            if frozenset((left.id, right.id)) not in linked:
                add(left.id, right.id, KIND_IMPLICIT, "sequence")

    if config.cross_sentence_edges:
        for prev, cur in zip(per_sentence, per_sentence[1:]):
            if not prev or not cur:
                continue
            a, b = prev[-1], cur[0]
            if frozenset((a.id, b.id)) not in linked:
                add(a.id, b.id, KIND_IMPLICIT, "sequence")
    return edges


def normalize_edges(edges: list[TemporalEdge], config: MopeConfig) -> list[TemporalEdge]:
    """Rewrite raw edges so that source always precedes target.

    An adverbial-clause edge is stored (clause, main); an earlier-set
    connective means the main action comes first, so those flip. Later-set
    connectives already read clause-first. Other kinds are untouched.
    """
    out = []
    for e in edges:
        if e.kind == KIND_EXPLICIT and e.connective in config.temporal_connectives_earlier:
            out.append(replace(e, source=e.target, target=e.source))
        else:
            out.append(e)
    return out


def extract_amr_time_edges(
    actions: list[MotionAction],
    graphs: list[AmrGraph],
) -> list[TemporalEdge]:
    """Precedence edges from :time structure in the graphs.

    ``A :time (after :op1 B)`` yields B -> A; "before" yields A -> B; a
    ``:time (then)`` on the :op2 of an and-node yields op1 -> op2. The
    connective is the time node's concept.
    """
    edges: list[TemporalEdge] = []
    by_graph_var: dict[tuple[int, str], MotionAction] = {
        (a.graph_index, a.amr_var): a for a in actions
    }
    for act in actions:
        graph = graphs[act.graph_index]
        time_target = outgoing(graph, act.amr_var, ":time")
        if time_target is None or time_target not in graph.instances:
            continue
        concept = graph.instances[time_target]
        if concept in ("after", "before"):
            op1 = outgoing(graph, time_target, ":op1")
            if op1 is None:
                continue
            other = by_graph_var.get((act.graph_index, op1))
            if other is None:
                continue
            if concept == "after":
                edges.append(TemporalEdge(other.id, act.id, KIND_AMR_TIME, "after"))
            else:
                edges.append(TemporalEdge(act.id, other.id, KIND_AMR_TIME, "before"))
        elif concept == "then":
            # the action must be the :op2 of an and-node whose :op1 is
            # also an action; that op1 precedes it
            for var, node_concept in graph.instances.items():
                if node_concept != "and":
                    continue
                if outgoing(graph, var, ":op2") != act.amr_var:
                    continue
                op1 = outgoing(graph, var, ":op1")
                if op1 is None:
                    continue
                other = by_graph_var.get((act.graph_index, op1))
                if other is not None:
                    edges.append(TemporalEdge(other.id, act.id, KIND_AMR_TIME, "then"))
                    break
    return edges


def resolve_edges(edges: list[TemporalEdge]) -> list[TemporalEdge]:
    """At most one edge per unordered pair: highest priority wins, first seen
    breaks ties (including direction conflicts at equal priority)."""
    best: dict[frozenset[int], TemporalEdge] = {}
    order: list[frozenset[int]] = []
    for e in edges:
        if e.source == e.target:
            continue
        key = frozenset((e.source, e.target))
        cur = best.get(key)
        if cur is None:
            best[key] = e
            order.append(key)
        elif _PRIORITY[e.kind] < _PRIORITY[cur.kind]:
            best[key] = e
    return [best[k] for k in order]


def sort_actions(actions: list[MotionAction], graph: ActionGraph) -> list[MotionAction]:
    """Assign temporal orders via Kahn's algorithm and sort the list.

    The zero-in-degree frontier is drained in ascending id order. Actions
    left in cycles (or downstream of one) get temporal_order -1 and go to
    the back of the list in id order. Each ordered action's
    temporal_relation is taken from its outgoing edge to the ordered
    successor with the smallest temporal_order, when one exists.
    """
    indeg = {n: 0 for n in graph.nodes}
    adj: dict[int, list[int]] = {n: [] for n in graph.nodes}
    for e in graph.edges:
        adj[e.source].append(e.target)
        indeg[e.target] += 1
    heap = [n for n, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    orders: dict[int, int] = {}
    while heap:
        n = heapq.heappop(heap)
        orders[n] = len(orders)
        for m in adj[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                heapq.heappush(heap, m)

    out_edges: dict[int, list[TemporalEdge]] = {}
    for e in graph.edges:
        out_edges.setdefault(e.source, []).append(e)
    for act in actions:
        act.temporal_order = orders.get(act.id, -1)
        act.temporal_relation = None
        if act.temporal_order == -1:
            continue
        successor: TemporalEdge | None = None
        successor_order: int | None = None
        for e in out_edges.get(act.id, ()):
            t_order = orders.get(e.target)
            if t_order is None:
                continue
            if successor_order is None or t_order < successor_order:
                successor = e
                successor_order = t_order
        if successor is not None:
            act.temporal_relation = (successor.kind, successor.connective)

    ordered = sorted(
        (a for a in actions if a.temporal_order != -1), key=lambda a: a.temporal_order
    )
    leftover = sorted((a for a in actions if a.temporal_order == -1), key=lambda a: a.id)
    return ordered + leftover


def order_actions(
    actions: list[MotionAction],
    graphs: list[AmrGraph],
    sentences: list[DepSentence],
    config: MopeConfig,
) -> list[MotionAction]:
    """Full ordering pass: extract cues, normalize, resolve, sort."""
    raw = extract_dep_edges(actions, sentences, config)
    edges = normalize_edges(raw, config) + extract_amr_time_edges(actions, graphs)
    resolved = resolve_edges(edges)
    graph = ActionGraph(nodes=[a.id for a in actions], edges=resolved)
    return sort_actions(actions, graph)

"""Motion action extraction from paired PENMAN graphs and dependency trees.

The extractor walks the semantic graph for action predicates, grounds each
one in the dependency parse, and fuses attributes with graph-first,
tree-fallback priority per attribute.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .amr import AmrGraph, outgoing
from .config import MopeConfig
from .conllu import (
    NOMINAL_UPOS,
    VERB_UPOS,
    DepSentence,
    DepToken,
    children,
    subtree_indices,
    subtree_span,
)

_SENSE_RE = re.compile(r"-(\d{2})$")
_ROLE_KEYS = (":ARG0", ":ARG1", ":ARG2", ":direction", ":manner", ":location", ":time")
_TO_PREPS = frozenset({"to", "toward", "towards"})


@dataclass
class MotionAction:
    """One extracted action with its grounding and fused attributes.

    ``temporal_order`` is a 0-based position once ordering has run; -1 marks
    actions that could not be ordered. ``temporal_relation`` is the
    (kind, connective) of one outgoing edge to the nearest ordered successor.
    """

    id: int
    amr_var: str
    concept: str
    action_verb: str | None = None
    verb_span: tuple[int, int] | None = None
    subject: str | None = None
    object: str | None = None
    direction: str | None = None
    modifiers: list[str] = field(default_factory=list)
    temporal_order: int = -1
    temporal_relation: tuple[str, str | None] | None = None
    # Grounding bookkeeping; not part of the serialized record.
    graph_index: int = 0
    sent_index: int | None = None
    token_index: int | None = None

    def to_dict(self) -> dict:
        rel = None
        if self.temporal_relation is not None:
            rel = {"kind": self.temporal_relation[0], "connective": self.temporal_relation[1]}
        return {
            "id": self.id,
            "amr_var": self.amr_var,
            "concept": self.concept,
            "action_verb": self.action_verb,
            "verb_span": list(self.verb_span) if self.verb_span else None,
            "subject": self.subject,
            "object": self.object,
            "direction": self.direction,
            "modifiers": list(self.modifiers),
            "temporal_order": self.temporal_order,
            "temporal_relation": rel,
        }


def is_action_concept(concept: str, config: MopeConfig) -> bool:
    """True for predicate concepts with a two-digit sense suffix.

    Senses 90-99 are role/reification frames, not events; those and the
    static-verb blocklist are excluded.
    """
    m = _SENSE_RE.search(concept)
    if m is None:
        return False
    if 90 <= int(m.group(1)) <= 99:
        return False
    return concept not in config.static_verb_blocklist


def extract_action_candidates(graph: AmrGraph, config: MopeConfig) -> list[tuple[str, str]]:
    """(variable, concept) pairs for action nodes, in depth-first order.

    The walk starts at the root and follows role edges in declaration
    order; re-entrant nodes are visited once. Instances unreachable from
    the root (not producible from text) are appended in declaration order.
    """
    roles_by_src: dict[str, list[str]] = {}
    for src, _, tgt in graph.role_edges:
        roles_by_src.setdefault(src, []).append(tgt)
    out: list[tuple[str, str]] = []
    seen: set[str] = set()

    def visit(var: str) -> None:
        seen.add(var)
        concept = graph.instances[var]
        if is_action_concept(concept, config):
            out.append((var, concept))
        for tgt in roles_by_src.get(var, ()):
            if tgt not in seen and tgt in graph.instances:
                visit(tgt)

    if graph.root in graph.instances:
        visit(graph.root)
    for var, concept in graph.instances.items():
        if var not in seen and is_action_concept(concept, config):
            out.append((var, concept))
    return out


def collect_roles(graph: AmrGraph, var: str) -> dict[str, str]:
    """Targets of the attribute-bearing roles out of ``var``; absent keys omitted."""
    roles = {}
    for key in _ROLE_KEYS:
        target = outgoing(graph, var, key)
        if target is not None:
            roles[key] = target
    return roles


def concept_lemma(concept: str) -> str:
    """The lemma half of a predicate concept: sense suffix stripped."""
    return _SENSE_RE.sub("", concept)


def _base(deprel: str) -> str:
    return deprel.split(":", 1)[0]


def is_valid_action_verb(token: DepToken, sentence: DepSentence, config: MopeConfig) -> bool:
    """Whether a token can ground an action (dynamic-verb filter).

    Rejects auxiliary/copular tokens, verbs acting as nominal modifiers,
    and adverbial-clause verbs without a temporal subordinator.
    """
    rel = _base(config.canonical(token.deprel))
    if rel in ("aux", "cop"):
        return False
    if rel in ("acl", "amod") and token.head:
        head = sentence.tokens[token.head - 1]
        if head.upos in NOMINAL_UPOS:
            return False
    if rel == "advcl":
        marks = [t for t in children(sentence, token.index) if _base(config.canonical(t.deprel)) == "mark"]
        return any(t.lemma.lower() in config.temporal_connectives for t in marks)
    return True


def _candidate_tokens(
    concept: str,
    scope: list[tuple[int, DepSentence]],
    config: MopeConfig,
    exclude: set[tuple[int, int]],
) -> tuple[int, DepToken] | None:
    lemma = concept_lemma(concept).lower()
    for si, sentence in scope:
        for token in sentence.tokens:
            if token.upos not in VERB_UPOS:
                continue
            if token.lemma.lower() != lemma:
                continue
            if (si, token.index) in exclude:
                continue
            if is_valid_action_verb(token, sentence, config):
                return si, token
    return None


def align_to_dependency(
    concept: str,
    sentences: list[DepSentence],
    config: MopeConfig,
    exclude: set[tuple[int, int]] | None = None,
) -> DepToken | None:
    """Earliest surviving token (document order) whose lemma matches the concept."""
    found = _candidate_tokens(concept, list(enumerate(sentences)), config, exclude or set())
    return found[1] if found else None


def strip_quotes(literal: str) -> str:
    if len(literal) >= 2 and literal.startswith('"') and literal.endswith('"'):
        inner = literal[1:-1]
        return inner.replace('\\"', '"').replace("\\\\", "\\")
    return literal


def _entity_text(graph: AmrGraph, target: str) -> str:
    """Readable text for a role target: named entity, concept, or literal."""
    if target not in graph.instances:
        return strip_quotes(target)
    name_node = outgoing(graph, target, ":name")
    if name_node is not None and name_node in graph.instances:
        op1 = outgoing(graph, name_node, ":op1")
        if op1 is not None:
            return strip_quotes(op1)
    return graph.instances[target]


def _concept_or_literal(graph: AmrGraph, target: str) -> str:
    if target in graph.instances:
        return graph.instances[target]
    return strip_quotes(target)


@dataclass
class _PrepPhrase:
    head_index: int  # the prep token (legacy) or the case-marked nominal
    prep_lemma: str
    full_span: str
    nominal_span: str | None
    lemmas: list[str]  # subtree lemmas in surface order


def _prep_phrases(sentence: DepSentence, verb: DepToken, config: MopeConfig) -> list[_PrepPhrase]:
    phrases = []
    for child in children(sentence, verb.index):
        rel = _base(config.canonical(child.deprel))
        if child.deprel == "prep":
            # prep heads its object: span covers "to the left"
            pobj = next((t for t in children(sentence, child.index) if t.deprel == "pobj"), None)
            idxs = subtree_indices(sentence, child.index)
            phrases.append(
                _PrepPhrase(
                    head_index=child.index,
                    prep_lemma=child.lemma.lower(),
                    full_span=subtree_span(sentence, child.index),
                    nominal_span=subtree_span(sentence, pobj.index) if pobj else None,
                    lemmas=[sentence.tokens[i - 1].lemma.lower() for i in idxs],
                )
            )
        elif rel in ("obl", "nmod"):
            cases = [t for t in children(sentence, child.index) if _base(config.canonical(t.deprel)) == "case"]
            if not cases:
                continue
            idxs = subtree_indices(sentence, child.index)
            case_idxs: set[int] = set()
            for c in cases:
                case_idxs.update(subtree_indices(sentence, c.index))
            nominal = " ".join(
                sentence.tokens[i - 1].form for i in idxs if i not in case_idxs
            )
            phrases.append(
                _PrepPhrase(
                    head_index=child.index,
                    prep_lemma=cases[0].lemma.lower(),
                    full_span=subtree_span(sentence, child.index),
                    nominal_span=nominal or None,
                    lemmas=[sentence.tokens[i - 1].lemma.lower() for i in idxs],
                )
            )
    phrases.sort(key=lambda p: p.head_index)
    return phrases


def fuse_attributes(
    graph: AmrGraph,
    roles: dict[str, str],
    aligned: DepToken | None,
    sentence: DepSentence | None,
    config: MopeConfig,
) -> MotionAction:
    """Fill subject/object/direction/modifiers for one action.

    Identity fields (id, amr_var, concept) are left for the caller. Each
    attribute prefers the graph role and falls back to the tree; direction
    claims to/toward phrases before the object fallback may consume them.
    """
    act = MotionAction(id=-1, amr_var="", concept="")
    if aligned is not None:
        act.action_verb = aligned.lemma
        if aligned.char_start is not None and aligned.char_end is not None:
            act.verb_span = (aligned.char_start, aligned.char_end)

    advmods: list[DepToken] = []
    phrases: list[_PrepPhrase] = []
    if aligned is not None and sentence is not None:
        advmods = [
            t
            for t in children(sentence, aligned.index)
            if _base(config.canonical(t.deprel)) == "advmod"
        ]
        phrases = _prep_phrases(sentence, aligned, config)

    # subject: :ARG0, else nsubj (active or passive) subtree
    if ":ARG0" in roles:
        act.subject = _entity_text(graph, roles[":ARG0"])
    elif aligned is not None and sentence is not None:
        subj = next(
            (
                t
                for t in children(sentence, aligned.index)
                if _base(config.canonical(t.deprel)) == "nsubj"
            ),
            None,
        )
        if subj is not None:
            act.subject = subtree_span(sentence, subj.index)

    # direction: :direction / :ARG2 lexicon concept, else advmod, else a
    # to/toward prepositional phrase containing a lexicon word
    claimed: set[int] = set()  # phrase head indices already consumed
    for key in (":direction", ":ARG2"):
        if key in roles:
            word = _concept_or_literal(graph, roles[key]).lower()
            if word in config.direction_lexicon:
                act.direction = word
                break
    if act.direction is None:
        for adv in advmods:
            if adv.lemma.lower() in config.direction_lexicon:
                act.direction = adv.lemma.lower()
                break
    if act.direction is None:
        for phrase in phrases:
            if phrase.prep_lemma in _TO_PREPS:
                hit = next((l for l in phrase.lemmas if l in config.direction_lexicon), None)
                if hit is not None:
                    act.direction = hit
                    claimed.add(phrase.head_index)
                    break

    # object: :ARG1, else obj child subtree, else first unclaimed
    # prepositional phrase's nominal side
    if ":ARG1" in roles:
        act.object = _entity_text(graph, roles[":ARG1"])
    elif aligned is not None and sentence is not None:
        obj = next(
            (
                t
                for t in children(sentence, aligned.index)
                if _base(config.canonical(t.deprel)) == "obj"
            ),
            None,
        )
        if obj is not None:
            act.object = subtree_span(sentence, obj.index)
        else:
            for phrase in phrases:
                if phrase.head_index in claimed or phrase.nominal_span is None:
                    continue
                act.object = phrase.nominal_span
                claimed.add(phrase.head_index)
                break

    # modifiers: remaining adverbs, remaining prepositional phrases, manner
    # concept, and location concepts tagged with a "location:" prefix
    mods: set[str] = set()
    for adv in advmods:
        lemma = adv.lemma.lower()
        if act.direction is not None and lemma == act.direction:
            continue
        mods.add(adv.lemma)
    for phrase in phrases:
        if phrase.head_index not in claimed:
            mods.add(phrase.full_span)
    if ":manner" in roles:
        mods.add(_concept_or_literal(graph, roles[":manner"]))
    if ":location" in roles:
        mods.add("location:" + _concept_or_literal(graph, roles[":location"]))
    act.modifiers = sorted(mods)
    return act


def run_mope(
    graphs: list[AmrGraph],
    sentences: list[DepSentence],
    config: MopeConfig | None = None,
) -> list[MotionAction]:
    """Extract, ground, fuse, and temporally order actions for one caption.

    Graph i is grounded against sentence i when the counts match; otherwise
    alignment searches every sentence in document order. Token grounding is
    injective: a token consumed by one action is skipped by later ones.
    """
    from .temporal import order_actions  # local import to avoid a cycle

    config = config or MopeConfig()
    actions: list[MotionAction] = []
    consumed: set[tuple[int, int]] = set()
    paired = len(graphs) == len(sentences) and len(graphs) > 0
    for gi, graph in enumerate(graphs):
        scope = [(gi, sentences[gi])] if paired else list(enumerate(sentences))
        for var, concept in extract_action_candidates(graph, config):
            roles = collect_roles(graph, var)
            found = _candidate_tokens(concept, scope, config, consumed)
            aligned = None
            sentence = None
            si = None
            if found is not None:
                si, aligned = found
                sentence = sentences[si]
                consumed.add((si, aligned.index))
            act = fuse_attributes(graph, roles, aligned, sentence, config)
            act.id = len(actions)
            act.amr_var = var
            act.concept = concept
            act.graph_index = gi
            act.sent_index = si
            act.token_index = aligned.index if aligned is not None else None
            actions.append(act)
    return order_actions(actions, graphs, sentences, config)

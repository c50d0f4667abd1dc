"""Synthesize one PENMAN graph per analyzed sentence.

The graph is derived from the dependency tree so the two output views stay
consistent: verb concepts carry the same lemma as the dependency row, which
lets downstream consumers align graph concepts to tokens. Coordinated verbs
share their subject variable through re-entrancy.
"""
from __future__ import annotations

from . import lexicon
from .textproc import Sentence, Token

_TEMPORAL_MARKS = frozenset("after before while when until once since".split())
_PREP_ROLES = {
    "from": ":source",
    "to": ":destination",
    "into": ":destination",
    "onto": ":destination",
    "toward": ":destination",
    "towards": ":destination",
    "across": ":path",
    "along": ":path",
    "through": ":path",
    "over": ":path",
    "past": ":path",
}
_DIRECTION_PREPS = frozenset("to toward towards".split())


class _VarPool:
    def __init__(self) -> None:
        self._used: set[str] = set()

    def new(self, concept: str) -> str:
        letter = next((c for c in concept.lower() if c.isalpha()), "x")
        name = letter
        counter = 2
        while name in self._used:
            name = f"{letter}{counter}"
            counter += 1
        self._used.add(name)
        return name


def _children(sentence: Sentence, head: int, deprel: str | None = None) -> list[Token]:
    return [
        t
        for t in sentence.tokens
        if t.head == head and (deprel is None or t.deprel == deprel)
    ]


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def _entity(pool: _VarPool, sentence: Sentence, index: int, cache: dict[int, str]) -> str:
    """PENMAN fragment for a nominal; repeated indices yield a bare variable."""
    if index in cache:
        return cache[index]
    token = sentence.token(index)
    if token.upos == "PROPN":
        var = pool.new("person")
        name_var = pool.new("name")
        cache[index] = var
        return f"({var} / person :name ({name_var} / name :op1 {_quote(token.form)}))"
    if token.upos == "NUM":
        var = pool.new("thing")
        cache[index] = var
        return f"({var} / thing :quant {token.form})"
    concept = token.lemma or token.form.lower()
    var = pool.new(concept)
    cache[index] = var
    parts = [f"{var} / {concept}"]
    for mod in _children(sentence, index, "amod"):
        mod_var = pool.new(mod.lemma)
        parts.append(f":mod ({mod_var} / {mod.lemma})")
    return "(" + " ".join(parts) + ")"


def _verb_node(
    pool: _VarPool,
    sentence: Sentence,
    verb: Token,
    subject_index: int | None,
    cache: dict[int, str],
) -> str:
    concept = f"{verb.lemma}-{lexicon.VERB_SENSES.get(verb.lemma, '01')}"
    var = pool.new(concept)
    parts = [f"{var} / {concept}"]

    if subject_index is not None:
        parts.append(f":ARG0 {_entity(pool, sentence, subject_index, cache)}")
    objects = _children(sentence, verb.index, "obj")
    if objects:
        parts.append(f":ARG1 {_entity(pool, sentence, objects[0].index, cache)}")

    direction_done = False
    for adv in _children(sentence, verb.index, "advmod"):
        if adv.lemma == "then":
            continue  # coordination-level timing, handled by the caller
        if adv.lemma in lexicon.DIRECTION_WORDS and not direction_done:
            adv_var = pool.new(adv.lemma)
            parts.append(f":direction ({adv_var} / {adv.lemma})")
            direction_done = True
        elif adv.upos == "ADV":
            adv_var = pool.new(adv.lemma)
            parts.append(f":manner ({adv_var} / {adv.lemma})")

    for obl in _children(sentence, verb.index, "obl"):
        cases = _children(sentence, obl.index, "case")
        prep = cases[0].lemma if cases else ""
        if (
            prep in _DIRECTION_PREPS
            and obl.lemma in lexicon.DIRECTION_WORDS
            and not direction_done
        ):
            dir_var = pool.new(obl.lemma)
            parts.append(f":direction ({dir_var} / {obl.lemma})")
            direction_done = True
            continue
        role = _PREP_ROLES.get(prep, ":location")
        parts.append(f"{role} {_entity(pool, sentence, obl.index, cache)}")

    for clause in _children(sentence, verb.index, "advcl"):
        marks = _children(sentence, clause.index, "mark")
        mark = marks[0].lemma if marks else "while"
        clause_subject = _subject_of(sentence, clause.index)
        clause_node = _verb_node(pool, sentence, clause, clause_subject, cache)
        if mark in _TEMPORAL_MARKS:
            mark_var = pool.new(mark)
            parts.append(f":time ({mark_var} / {mark} :op1 {clause_node})")
        elif mark == "because":
            parts.append(f":cause {clause_node}")
        else:
            parts.append(f":condition {clause_node}")

    return "(" + " ".join(parts) + ")"


def _subject_of(sentence: Sentence, verb_index: int) -> int | None:
    subjects = _children(sentence, verb_index, "nsubj")
    return subjects[0].index if subjects else None


def sentence_to_penman(sentence: Sentence) -> str:
    """One PENMAN block for the sentence."""
    pool = _VarPool()
    cache: dict[int, str] = {}
    verbs = [t for t in sentence.tokens if t.upos == "VERB" and t.deprel in {"root", "conj"}]

    if not verbs:
        root = next((t for t in sentence.tokens if t.deprel == "root"), None)
        if root is None:
            return "(e / emptiness)"
        return _entity(pool, sentence, root.index, cache)

    main = verbs[0]
    main_subject = _subject_of(sentence, main.index)
    nodes = []
    for verb in verbs:
        subject = _subject_of(sentence, verb.index) or main_subject
        node = _verb_node(pool, sentence, verb, subject, cache)
        then_adv = any(
            adv.lemma == "then" for adv in _children(sentence, verb.index, "advmod")
        )
        if then_adv and verb.index != main.index:
            then_var = pool.new("then")
            node = node[:-1] + f" :time ({then_var} / then))"
        nodes.append(node)

    if len(nodes) == 1:
        return nodes[0]
    and_var = pool.new("and")
    ops = " ".join(f":op{i + 1} {node}" for i, node in enumerate(nodes))
    return f"({and_var} / and {ops})"

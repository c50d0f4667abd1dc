"""Rule-based dependency attachment producing a valid single-rooted tree.

The rules target short motion captions: one main clause, optional temporal
subordinate clause, optional verb coordination, prepositional phrases, and
flat noun phrases. Every sentence is guaranteed to come out as a tree whose
token ids are contiguous and whose root is unique; anything the rules cannot
place is attached to the root.
"""
from __future__ import annotations

from .textproc import Sentence, Token

NOMINAL_TAGS = {"NOUN", "PROPN", "PRON", "NUM"}


def _subordinate_spans(tokens: list[Token]) -> list[tuple[int, int, int]]:
    """(sconj_index, span_start, span_end) for each subordinate clause, 1-based inclusive."""
    spans = []
    for tok in tokens:
        if tok.upos != "SCONJ":
            continue
        end = len(tokens)
        for other in tokens[tok.index :]:
            if other.form == ",":
                end = other.index - 1
                break
        spans.append((tok.index, tok.index, end))
    return spans


def _in_spans(index: int, spans: list[tuple[int, int, int]]) -> bool:
    return any(start <= index <= end for _, start, end in spans)


def attach(sentence: Sentence) -> None:
    """Assign head and deprel for every token in place."""
    tokens = sentence.tokens
    if not tokens:
        return
    n = len(tokens)
    assigned: set[int] = set()

    def set_arc(child: int, head: int, deprel: str) -> None:
        tok = tokens[child - 1]
        tok.head, tok.deprel = head, deprel
        assigned.add(child)

    verbs = [t.index for t in tokens if t.upos == "VERB"]
    spans = _subordinate_spans(tokens)

    # Choose the root: first verb outside subordinate clauses, else any verb,
    # else the first nominal, else the first token.
    main = next((v for v in verbs if not _in_spans(v, spans)), None)
    if main is None and verbs:
        main = verbs[0]
    if main is None:
        main = next(
            (t.index for t in tokens if t.upos in {"NOUN", "PROPN", "PRON"}),
            tokens[0].index,
        )
    set_arc(main, 0, "root")

    # Clause structure: subordinate verbs hang off the main verb with their
    # subordinator as mark; remaining verbs coordinate with the main verb.
    clause_verbs = [main]
    for sconj_index, start, end in spans:
        clause_verb = next((v for v in verbs if start <= v <= end and v != main), None)
        if clause_verb is None:
            continue
        if clause_verb not in assigned:
            set_arc(clause_verb, main, "advcl")
            clause_verbs.append(clause_verb)
        set_arc(sconj_index, clause_verb, "mark")
    for v in verbs:
        if v in assigned or v == main:
            continue
        set_arc(v, main, "conj")
        clause_verbs.append(v)
    clause_verbs.sort()

    # Coordinators attach to the following conjunct verb when there is one.
    for tok in tokens:
        if tok.upos != "CCONJ":
            continue
        conj_verb = next(
            (v for v in verbs if v > tok.index and tokens[v - 1].deprel == "conj"),
            None,
        )
        set_arc(tok.index, conj_verb if conj_verb is not None else main, "cc")

    # Prepositional phrases: each ADP marks the next nominal as its head.
    prep_nominal: dict[int, int] = {}
    for tok in tokens:
        if tok.upos != "ADP" or tok.index in assigned:
            continue
        nominal = next(
            (
                t.index
                for t in tokens[tok.index :]
                if t.upos in NOMINAL_TAGS
            ),
            None,
        )
        if nominal is None or nominal in assigned:
            head = _nearest_verb(verbs, tok.index) or main
            set_arc(tok.index, head if head != tok.index else main, "advmod")
            continue
        prep_nominal[tok.index] = nominal

    claimed_by_prep = set(prep_nominal.values())

    # Subjects: nearest free nominal to the left of each clause verb, stopping
    # at the previous clause boundary.
    boundaries = sorted(
        {t.index for t in tokens if t.upos in {"SCONJ", "CCONJ", "VERB"} or t.form == ","}
    )
    for v in clause_verbs:
        left_bound = max((b for b in boundaries if b < v), default=0)
        for i in range(v - 1, left_bound, -1):
            tok = tokens[i - 1]
            if tok.index in assigned or tok.index in claimed_by_prep:
                continue
            if tok.upos in {"NOUN", "PROPN", "PRON"}:
                set_arc(tok.index, v, "nsubj")
                break

    # Objects: first free nominal after each clause verb before any boundary.
    for v in clause_verbs:
        for tok in tokens[v:]:
            if tok.upos in {"VERB", "SCONJ", "CCONJ", "ADP", "PUNCT"}:
                break
            if tok.index in assigned or tok.index in claimed_by_prep:
                continue
            if tok.upos in {"NOUN", "PROPN", "PRON"}:
                set_arc(tok.index, v, "obj")
                break

    # Attach prepositional phrases: nominal as obl of the nearest verb to its
    # left (else the root), preposition as its case marker.
    for adp_index, nominal in prep_nominal.items():
        if nominal not in assigned:
            head = _nearest_verb(verbs, nominal) or main
            set_arc(nominal, head if head != nominal else main, "obl")
        set_arc(adp_index, nominal, "case")

    # Determiners and adjectives modify the next nominal to their right.
    for tok in tokens:
        if tok.index in assigned or tok.upos not in {"DET", "ADJ"}:
            continue
        nominal = next(
            (t.index for t in tokens[tok.index :] if t.upos in NOMINAL_TAGS),
            None,
        )
        if nominal is not None:
            set_arc(tok.index, nominal, "det" if tok.upos == "DET" else "amod")
        else:
            set_arc(tok.index, main, "dep")

    # Auxiliaries support the next verb to their right.
    for tok in tokens:
        if tok.index in assigned or tok.upos != "AUX":
            continue
        nxt = next((v for v in verbs if v > tok.index), None)
        set_arc(tok.index, nxt if nxt is not None else main, "aux" if nxt else "dep")

    # Adverbs modify the nearest verb, preferring one to the left; "then"
    # before a conjunct verb modifies that conjunct.
    for tok in tokens:
        if tok.index in assigned or tok.upos != "ADV":
            continue
        head = None
        if tok.lemma == "then":
            head = next(
                (v for v in verbs if v > tok.index and tokens[v - 1].deprel == "conj"),
                None,
            )
        if head is None:
            head = _nearest_verb(verbs, tok.index)
        set_arc(tok.index, head if head is not None else main, "advmod")

    # Punctuation and anything left over belongs to the root.
    for tok in tokens:
        if tok.index in assigned:
            continue
        set_arc(tok.index, main, "punct" if tok.upos == "PUNCT" else "dep")

    # Safety: exactly one root, no self-heads.
    for tok in tokens:
        if tok.head == tok.index:
            tok.head, tok.deprel = (0, "root") if tok.index == main else (main, "dep")
    for tok in tokens:
        if tok.head == 0 and tok.index != main:
            tok.head, tok.deprel = main, "dep"
    assert n == len(tokens)


def _nearest_verb(verbs: list[int], index: int) -> int | None:
    """Nearest verb position to `index`, preferring verbs on the left."""
    left = [v for v in verbs if v < index]
    if left:
        return left[-1]
    right = [v for v in verbs if v > index]
    return right[0] if right else None

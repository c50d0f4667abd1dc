"""Deterministic sentence splitting, tokenization, tagging, and lemmatization.

The analyzer produces one shared structure per sentence that both output
writers consume, so the dependency view and the graph view always agree on
token forms and lemmas.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import lexicon

_SENTENCE_BREAK = re.compile(r"(?<=[.!?])\s+")
_TOKEN = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?|\d+(?:\.\d+)?|[^\w\s]")


@dataclass
class Token:
    """One word or punctuation mark with its analysis."""

    index: int  # 1-based position within the sentence
    form: str
    lemma: str = ""
    upos: str = "NOUN"
    head: int = 0
    deprel: str = "dep"


@dataclass
class Sentence:
    """A sentence with its token-level analysis and original surface text."""

    text: str
    tokens: list[Token] = field(default_factory=list)

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]


def split_sentences(text: str) -> list[str]:
    stripped = text.strip()
    if not stripped:
        return []
    return [part for part in _SENTENCE_BREAK.split(stripped) if part]


def tokenize(sentence: str) -> list[str]:
    return _TOKEN.findall(sentence)


def _is_nominal_word(word: str) -> bool:
    w = word.lower()
    return (
        w in lexicon.COMMON_NOUNS
        or w in lexicon.PRONOUNS
        or w in lexicon.DETERMINERS
        or lexicon.noun_lemma(w) in lexicon.COMMON_NOUNS
    )


def _known_lower(word: str) -> bool:
    """Whether the lowercased word belongs to any closed or open word list."""
    w = word.lower()
    if (
        w in lexicon.DETERMINERS
        or w in lexicon.PRONOUNS
        or w in lexicon.AUXILIARIES
        or w in lexicon.COORDINATORS
        or w in lexicon.SUBORDINATORS
        or w in lexicon.PREPOSITIONS
        or w in lexicon.PARTICLE_PREPOSITIONS
        or w in lexicon.ADVERBS
        or w in lexicon.ADJECTIVES
        or w in lexicon.COMMON_NOUNS
    ):
        return True
    if lexicon.verb_lemma(w) is not None:
        return True
    return lexicon.noun_lemma(w) in lexicon.COMMON_NOUNS


def tag(forms: list[str]) -> list[Token]:
    """Assign UPOS tags and lemmas with ordered closed-class rules."""
    tokens = [Token(index=i + 1, form=form) for i, form in enumerate(forms)]
    n = len(tokens)

    for i, tok in enumerate(tokens):
        w = tok.form.lower()
        verb = lexicon.verb_lemma(tok.form)
        if not tok.form[0].isalnum():
            tok.upos, tok.lemma = "PUNCT", tok.form
        elif tok.form[0].isdigit():
            tok.upos, tok.lemma = "NUM", tok.form
        elif w in lexicon.DETERMINERS:
            tok.upos, tok.lemma = "DET", w
        elif w in lexicon.PRONOUNS:
            tok.upos, tok.lemma = "PRON", w
        elif w in lexicon.AUXILIARIES:
            tok.upos, tok.lemma = "AUX", w
        elif w in lexicon.COORDINATORS:
            tok.upos, tok.lemma = "CCONJ", w
        elif w in lexicon.SUBORDINATORS:
            # Subordinator when a verb follows it in the sentence, otherwise
            # a plain preposition ("after he crouches" vs "after the jump").
            # A verb-lookalike straight after a determiner or adjective is in
            # nominal use and does not count.
            has_verb = False
            for j in range(i + 1, n):
                candidate = tokens[j]
                if lexicon.verb_lemma(candidate.form) is None:
                    continue
                if candidate.form.lower() in lexicon.COMMON_NOUNS:
                    continue
                prev_form = tokens[j - 1].form.lower()
                if prev_form in lexicon.DETERMINERS or prev_form in lexicon.ADJECTIVES:
                    continue
                has_verb = True
                break
            tok.upos, tok.lemma = ("SCONJ", w) if has_verb else ("ADP", w)
        elif w in lexicon.PARTICLE_PREPOSITIONS:
            nxt = tokens[i + 1] if i + 1 < n else None
            before_nominal = nxt is not None and _is_nominal_word(nxt.form)
            tok.upos, tok.lemma = ("ADP", w) if before_nominal else ("ADV", w)
        elif w in lexicon.PREPOSITIONS:
            tok.upos, tok.lemma = "ADP", w
        elif w in lexicon.ADVERBS:
            tok.upos, tok.lemma = "ADV", w
        elif w in lexicon.ADJECTIVES:
            tok.upos, tok.lemma = "ADJ", w
        elif verb is not None and w not in lexicon.COMMON_NOUNS:
            tok.upos, tok.lemma = "VERB", verb
        elif tok.form[0].isupper() and not _known_lower(tok.form):
            tok.upos, tok.lemma = "PROPN", tok.form
        else:
            tok.upos, tok.lemma = "NOUN", lexicon.noun_lemma(w)

    # A word directly after a determiner/adjective is nominal even when it
    # also inflects like a verb or doubles as a direction adverb ("the wave",
    # "a turn", "to the left").
    for i in range(1, n):
        tok = tokens[i]
        prev = tokens[i - 1]
        nominal_use = tok.upos == "VERB" or (
            tok.upos == "ADV" and tok.lemma in lexicon.DIRECTION_WORDS
        )
        if nominal_use and prev.upos in {"DET", "ADJ"}:
            tok.upos = "NOUN"
            tok.lemma = lexicon.noun_lemma(tok.form.lower())
    return tokens


def analyze_sentence(text: str) -> Sentence:
    sentence = Sentence(text=text, tokens=tag(tokenize(text)))
    from . import depgen  # deferred: depgen builds on this module's classes

    depgen.attach(sentence)
    return sentence


def analyze_text(text: str) -> list[Sentence]:
    return [analyze_sentence(part) for part in split_sentences(text)]

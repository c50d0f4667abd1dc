"""Pronoun resolution by antecedent substitution.

Third-person subject pronouns (he, she, they) are replaced with the most
recent subject noun phrase of matching number. Pronouns with no antecedent
are left in place. Any internal error falls back to returning the text
unchanged, with a warning.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import lexicon
from .textproc import split_sentences, tag, tokenize

_SINGULAR_PRONOUNS = frozenset({"he", "she"})
_PLURAL_PRONOUNS = frozenset({"they"})
_NO_SPACE_BEFORE = frozenset(".,!?;:)\"'")


@dataclass
class _Antecedent:
    words: list[str]
    proper: bool


def _detokenize(forms: list[str]) -> str:
    out = ""
    for form in forms:
        if out and form not in _NO_SPACE_BEFORE and form != "":
            out += " "
        out += form
    return out


def _is_plural_noun(form: str) -> bool:
    return form.lower() != lexicon.noun_lemma(form)


def _adjust_case(words: list[str], proper: bool, sentence_initial: bool) -> list[str]:
    adjusted = list(words)
    if not adjusted:
        return adjusted
    head = adjusted[0]
    if sentence_initial:
        adjusted[0] = head[0].upper() + head[1:]
    elif not proper:
        adjusted[0] = head[0].lower() + head[1:]
    return adjusted


def _resolve(text: str) -> str:
    singular: _Antecedent | None = None
    plural: _Antecedent | None = None
    resolved_sentences = []

    for sentence_text in split_sentences(text):
        tokens = tag(tokenize(sentence_text))
        new_forms: list[str] = []
        changed = False

        for i, token in enumerate(tokens):
            lemma = token.form.lower()
            if token.upos == "PRON" and lemma in _SINGULAR_PRONOUNS | _PLURAL_PRONOUNS:
                antecedent = singular if lemma in _SINGULAR_PRONOUNS else plural
                if antecedent is not None:
                    new_forms.extend(
                        _adjust_case(antecedent.words, antecedent.proper, token.index == 1)
                    )
                    changed = True
                    continue
            new_forms.append(token.form)

            # Track subject noun phrases: a nominal directly before a verb.
            nxt = tokens[i + 1] if i + 1 < len(tokens) else None
            if (
                token.upos in {"NOUN", "PROPN"}
                and nxt is not None
                and nxt.upos in {"VERB", "AUX"}
            ):
                start = i
                while start > 0 and tokens[start - 1].upos in {"DET", "ADJ"}:
                    start -= 1
                phrase = _Antecedent(
                    words=[t.form for t in tokens[start : i + 1]],
                    proper=token.upos == "PROPN",
                )
                if token.upos == "NOUN" and _is_plural_noun(token.form):
                    plural = phrase
                else:
                    singular = phrase

        resolved_sentences.append(_detokenize(new_forms) if changed else sentence_text)

    return " ".join(resolved_sentences)


def resolve_coreference(text: str) -> str:
    """Replace subject pronouns with their antecedent mentions.

    Falls back to the identity transform with a warning if resolution fails.
    """
    try:
        return _resolve(text)
    except Exception as exc:
        warnings.warn(
            f"coreference resolution failed; returning text unchanged: {exc}",
            RuntimeWarning,
            stacklevel=2,
        )
        return text

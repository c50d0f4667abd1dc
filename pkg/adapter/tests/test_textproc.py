"""Unit tests for tokenization, tagging, lemmatization, and tree attachment."""
from __future__ import annotations

import pytest

from mope_adapter import lexicon
from mope_adapter.textproc import analyze_text, split_sentences, tag, tokenize


class TestSplitting:
    def test_two_sentences(self):
        assert split_sentences("The man walks. He stops.") == [
            "The man walks.",
            "He stops.",
        ]

    def test_no_terminal_punctuation(self):
        assert split_sentences("The man walks") == ["The man walks"]

    def test_empty_and_whitespace(self):
        assert split_sentences("") == []
        assert split_sentences("   \n\t ") == []

    def test_exclamation_and_question(self):
        parts = split_sentences("Jump now! Did he land? He lands.")
        assert parts == ["Jump now!", "Did he land?", "He lands."]


class TestTokenization:
    def test_punctuation_split_off(self):
        assert tokenize("The man walks.") == ["The", "man", "walks", "."]

    def test_comma_and_numbers(self):
        assert tokenize("He lifts 2 boxes, then rests.") == [
            "He",
            "lifts",
            "2",
            "boxes",
            ",",
            "then",
            "rests",
            ".",
        ]

    def test_apostrophe_stays_inside_word(self):
        assert tokenize("The dancer doesn't stop.") == [
            "The",
            "dancer",
            "doesn't",
            "stop",
            ".",
        ]


class TestVerbLemmas:
    @pytest.mark.parametrize(
        ("form", "lemma"),
        [
            ("walks", "walk"),
            ("crouches", "crouch"),
            ("waves", "wave"),
            ("dances", "dance"),
            ("running", "run"),
            ("ran", "run"),
            ("leapt", "leap"),
            ("stopped", "stop"),
            ("glides", "glide"),
            ("marched", "march"),
        ],
    )
    def test_inflections(self, form, lemma):
        assert lexicon.verb_lemma(form) == lemma

    def test_unknown_word_is_not_a_verb(self):
        assert lexicon.verb_lemma("table") is None
        assert lexicon.verb_lemma("zzzzx") is None


class TestNounLemmas:
    @pytest.mark.parametrize(
        ("form", "lemma"),
        [
            ("arms", "arm"),
            ("children", "child"),
            ("boxes", "box"),
            ("ladies", "lady"),
            ("grass", "grass"),
            ("man", "man"),
        ],
    )
    def test_plurals(self, form, lemma):
        assert lexicon.noun_lemma(form) == lemma


class TestTagging:
    def _tags(self, text):
        return [(t.form, t.upos) for t in tag(tokenize(text))]

    def test_simple_clause(self):
        assert self._tags("The man walks forward.") == [
            ("The", "DET"),
            ("man", "NOUN"),
            ("walks", "VERB"),
            ("forward", "ADV"),
            (".", "PUNCT"),
        ]

    def test_subordinator_vs_preposition(self):
        with_clause = self._tags("He jumps after he crouches.")
        assert ("after", "SCONJ") in with_clause
        without_clause = self._tags("He rests after the dance.")
        assert ("after", "ADP") in without_clause

    def test_direction_word_after_determiner_is_nominal(self):
        tags = dict(self._tags("She kicks to the left."))
        assert tags["left"] == "NOUN"

    def test_up_is_adverb_unless_before_nominal(self):
        assert ("up", "ADV") in self._tags("He stands up slowly.")
        assert ("up", "ADP") in self._tags("He runs up the hill.")

    def test_unknown_capitalized_word_is_proper_noun(self):
        assert ("Tom", "PROPN") in self._tags("Tom lifts the box.")

    def test_known_capitalized_word_stays_common(self):
        assert ("Music", "NOUN") in self._tags("Music plays softly.")


class TestTreeValidity:
    SENTENCES = [
        "The man walks forward.",
        "A woman kicks the ball to the left.",
        "He turns and waves.",
        "The boy jumps after he crouches.",
        "The player throws the ball and runs forward.",
        "An old man stands up slowly.",
        "A quiet empty room.",
        "To the side.",
        "Run!",
    ]

    @pytest.mark.parametrize("text", SENTENCES)
    def test_single_root_contiguous_no_cycles(self, text):
        for sentence in analyze_text(text):
            tokens = sentence.tokens
            assert [t.index for t in tokens] == list(range(1, len(tokens) + 1))
            roots = [t for t in tokens if t.head == 0]
            assert len(roots) == 1
            assert roots[0].deprel == "root"
            for token in tokens:
                assert token.head != token.index
                seen = set()
                current = token.index
                while current != 0:
                    assert current not in seen
                    seen.add(current)
                    current = tokens[current - 1].head

    def test_subject_and_object_attachment(self):
        (sentence,) = analyze_text("A woman kicks the ball to the left.")
        by_deprel = {t.deprel: t for t in sentence.tokens}
        assert by_deprel["nsubj"].form == "woman"
        assert by_deprel["obj"].form == "ball"
        assert by_deprel["obl"].form == "left"
        assert by_deprel["case"].form == "to"

    def test_subordinate_clause_attachment(self):
        (sentence,) = analyze_text("The boy jumps after he crouches.")
        crouches = next(t for t in sentence.tokens if t.form == "crouches")
        jumps = next(t for t in sentence.tokens if t.form == "jumps")
        mark = next(t for t in sentence.tokens if t.form == "after")
        assert jumps.deprel == "root"
        assert crouches.deprel == "advcl" and crouches.head == jumps.index
        assert mark.deprel == "mark" and mark.head == crouches.index

    def test_coordination_attachment(self):
        (sentence,) = analyze_text("He turns and waves.")
        waves = next(t for t in sentence.tokens if t.form == "waves")
        cc = next(t for t in sentence.tokens if t.form == "and")
        assert waves.deprel == "conj"
        assert cc.deprel == "cc" and cc.head == waves.index

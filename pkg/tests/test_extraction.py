from mopekit.amr import parse_penman
from mopekit.config import MopeConfig
from mopekit.conllu import parse_conllu
from mopekit.extraction import (
    align_to_dependency,
    concept_lemma,
    extract_action_candidates,
    is_action_concept,
    run_mope,
)

CFG = MopeConfig()


def S(text, rows):
    lines = [f"# text = {text}"]
    for i, form, lemma, upos, head, deprel in rows:
        lines.append(f"{i}\t{form}\t{lemma}\t{upos}\t_\t_\t{head}\t{deprel}\t_\t_")
    return "\n".join(lines) + "\n"


def test_action_concept_predicate():
    assert is_action_concept("walk-01", CFG)
    assert is_action_concept("turn-12", CFG)
    assert not is_action_concept("dog", CFG)
    assert not is_action_concept("see-01", CFG)  # static verb
    assert not is_action_concept("have-03", CFG)  # static verb
    assert not is_action_concept("be-located-at-91", CFG)  # non-eventive sense band
    assert not is_action_concept("infer-99", CFG)
    assert not is_action_concept("walk-1", CFG)  # needs two digits


def test_concept_lemma():
    assert concept_lemma("walk-01") == "walk"
    assert concept_lemma("be-located-at-91") == "be-located-at"


def test_candidates_depth_first_preorder_with_unreachable_tail():
    g = parse_penman(
        "(a / and"
        " :op1 (c / clap-01)"
        " :op2 (s / spin-01 :time (af / after :op1 (t / tumble-01)))"
        " :op3 (l / leap-01))"
    )
    assert [c for _, c in extract_action_candidates(g, CFG)] == [
        "clap-01",
        "spin-01",
        "tumble-01",
        "leap-01",
    ]


def test_alignment_requires_dynamic_context():
    # participle modifying a noun is not an eventive use
    (sent,) = parse_conllu(
        S(
            "The walking man turns.",
            [
                (1, "The", "the", "DET", 3, "det"),
                (2, "walking", "walk", "VERB", 3, "amod"),
                (3, "man", "man", "NOUN", 4, "nsubj"),
                (4, "turns", "turn", "VERB", 0, "root"),
                (5, ".", ".", "PUNCT", 4, "punct"),
            ],
        )
    )
    assert align_to_dependency("walk-01", [sent], CFG) is None
    found = align_to_dependency("turn-01", [sent], CFG)
    assert found is not None and found.index == 4


def test_alignment_is_injective():
    (sent,) = parse_conllu(
        S(
            "He claps and claps.",
            [
                (1, "He", "he", "PRON", 2, "nsubj"),
                (2, "claps", "clap", "VERB", 0, "root"),
                (3, "and", "and", "CCONJ", 4, "cc"),
                (4, "claps", "clap", "VERB", 2, "conj"),
                (5, ".", ".", "PUNCT", 2, "punct"),
            ],
        )
    )
    first = align_to_dependency("clap-01", [sent], CFG)
    assert first.index == 2
    second = align_to_dependency("clap-01", [sent], CFG, exclude={(0, 2)})
    assert second.index == 4


def test_direction_role_outside_lexicon_is_ignored():
    g = parse_penman("(w / walk-01 :ARG0 (m / man) :direction (h / home))")
    (sent,) = parse_conllu(
        S(
            "The man walks home.",
            [
                (1, "The", "the", "DET", 3, "det"),
                (2, "man", "man", "NOUN", 3, "nsubj"),
                (3, "walks", "walk", "VERB", 0, "root"),
                (4, "home", "home", "ADV", 3, "advmod"),
                (5, ".", ".", "PUNCT", 3, "punct"),
            ],
        )
    )
    (act,) = run_mope([g], [sent])
    assert act.direction is None
    assert act.modifiers == ["home"]


def test_multiword_quoted_name_subject():
    g = parse_penman('(w / wave-01 :ARG0 (p / person :name (n / name :op1 "Ann Lee")))')
    (sent,) = parse_conllu(
        S(
            "Ann Lee waves.",
            [
                (1, "Ann", "Ann", "PROPN", 3, "nsubj"),
                (2, "Lee", "Lee", "PROPN", 1, "flat"),
                (3, "waves", "wave", "VERB", 0, "root"),
                (4, ".", ".", "PUNCT", 3, "punct"),
            ],
        )
    )
    (act,) = run_mope([g], [sent])
    assert act.subject == "Ann Lee"


def test_verb_upos_filter():
    # a noun sharing the lemma must not ground the action
    (sent,) = parse_conllu(
        S(
            "The dance begins.",
            [
                (1, "The", "the", "DET", 2, "det"),
                (2, "dance", "dance", "NOUN", 3, "nsubj"),
                (3, "begins", "begin", "VERB", 0, "root"),
                (4, ".", ".", "PUNCT", 3, "punct"),
            ],
        )
    )
    assert align_to_dependency("dance-01", [sent], CFG) is None


def test_sequential_ids_and_graph_pairing():
    g1 = parse_penman("(r / run-01 :ARG0 (h / he))")
    g2 = parse_penman("(s / stop-01 :ARG0 (h2 / he))")
    sents = parse_conllu(
        S("He runs.", [(1, "He", "he", "PRON", 2, "nsubj"),
                       (2, "runs", "run", "VERB", 0, "root"),
                       (3, ".", ".", "PUNCT", 2, "punct")])
        + "\n"
        + S("He stops.", [(1, "He", "he", "PRON", 2, "nsubj"),
                          (2, "stops", "stop", "VERB", 0, "root"),
                          (3, ".", ".", "PUNCT", 2, "punct")])
    )
    actions = run_mope([g1, g2], sents)
    assert [a.id for a in actions] == [0, 1]
    assert [a.sent_index for a in actions] == [0, 1]


def test_to_dict_field_order():
    g = parse_penman("(w / walk-01)")
    (sent,) = parse_conllu(
        S("He walks.", [(1, "He", "he", "PRON", 2, "nsubj"),
                        (2, "walks", "walk", "VERB", 0, "root"),
                        (3, ".", ".", "PUNCT", 2, "punct")])
    )
    (act,) = run_mope([g], [sent])
    assert list(act.to_dict().keys()) == [
        "id",
        "amr_var",
        "concept",
        "action_verb",
        "verb_span",
        "subject",
        "object",
        "direction",
        "modifiers",
        "temporal_order",
        "temporal_relation",
    ]

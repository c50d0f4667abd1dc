"""Word lists and morphology tables for the rule-based analyzer.

The adapter targets short third-person motion captions. Every table here is
a plain frozen structure so analysis stays deterministic across runs and
processes.
"""
from __future__ import annotations

DETERMINERS = frozenset(
    "the a an this that these those his her their its my your our".split()
)

SUBJECT_PRONOUNS = frozenset("he she it they we i you".split())
OBJECT_PRONOUNS = frozenset("him them us me".split())
PRONOUNS = SUBJECT_PRONOUNS | OBJECT_PRONOUNS

AUXILIARIES = frozenset(
    "is are was were am be been being do does did has have had will would can could may might shall should must".split()
)

COORDINATORS = frozenset("and or but".split())

# Subordinators that can open an adverbial clause. Several double as
# prepositions; the tagger decides by looking for a verb to their right.
SUBORDINATORS = frozenset(
    "after before while when until because once since upon if as though although".split()
)

PREPOSITIONS = frozenset(
    (
        "to toward towards in on at with from into onto over under across "
        "along through behind near beside around past off above below during"
    ).split()
)

# "up"/"down" are particles/adverbs after a verb but prepositions before a
# nominal ("down the hill"); the tagger disambiguates positionally.
PARTICLE_PREPOSITIONS = frozenset("up down".split())

ADVERBS = frozenset(
    (
        "forward forwards backward backwards upward upwards downward downwards "
        "clockwise counterclockwise left right quickly slowly gracefully softly loudly "
        "gently firmly suddenly smoothly steadily briskly then again twice very too "
        "hard fast high low sideways away apart together"
    ).split()
)

# Adverbs the consumer treats as directions; kept in sync with common usage,
# not imported from the consumer (the adapter must run without it).
DIRECTION_WORDS = frozenset(
    (
        "forward backward left right up down upward downward clockwise "
        "counterclockwise backwards forwards upwards downwards"
    ).split()
)

ADJECTIVES = frozenset(
    (
        "quick slow old young big small tall short quiet empty red blue green "
        "graceful energetic gentle soft loud strong tired happy little large "
        "open closed narrow wide deep shallow"
    ).split()
)

COMMON_NOUNS = frozenset(
    (
        "man woman boy girl child children person people dancer player soldier "
        "athlete gymnast skater boxer runner swimmer cat dog bird horse ball box "
        "arm arms leg legs hand hands foot feet head knee knees hip hips shoulder "
        "shoulders park yard room floor stage field court track hall street hill "
        "music scene crowd wall door table chair rope bar mat ground air water "
        "step steps circle line"
    ).split()
)

# Verb lemma -> predicate sense suffix. All entries use frame 01; the
# consumer only requires a two-digit suffix outside 90-99.
VERB_SENSES = {
    lemma: "01"
    for lemma in (
        "walk run jump kick turn wave spin clap crouch leap tumble dance march "
        "stretch lift bend raise lower step stand sit roll land stop push pull "
        "throw swing stomp twist lean hop kneel squat punch balance slide glide "
        "skip sprint stride shake nod bow crawl climb dive flip point reach drop "
        "catch move rotate sway play sing begin start finish duck sleep rise fall "
        "swim race pace hurry rush tiptoe shuffle limp strut trot gallop vault "
        "somersault cartwheel pivot lunge curl extend grab hold carry place set "
        "open close wander pause rest breathe look watch stare glance"
    ).split()
}

IRREGULAR_VERBS = {
    "ran": "run",
    "leapt": "leap",
    "stood": "stand",
    "sat": "sit",
    "swung": "swing",
    "threw": "throw",
    "caught": "catch",
    "knelt": "kneel",
    "bent": "bend",
    "fell": "fall",
    "rose": "rise",
    "slid": "slide",
    "swam": "swim",
    "held": "hold",
    "began": "begin",
    "sang": "sing",
    "shook": "shake",
    "crept": "creep",
    "dove": "dive",
}

IRREGULAR_NOUNS = {
    "children": "child",
    "people": "person",
    "feet": "foot",
    "men": "man",
    "women": "woman",
}


def verb_lemma(word: str) -> str | None:
    """Lemma of an inflected verb form, or None if the word is not a known verb."""
    w = word.lower()
    if w in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[w]
    if w in VERB_SENSES:
        return w
    for suffix, replacement in (("ies", "y"), ("es", ""), ("ing", ""), ("ed", ""), ("s", "")):
        if not w.endswith(suffix) or len(w) <= len(suffix) + 1:
            continue
        stem = w[: -len(suffix)] + replacement
        if stem in VERB_SENSES:
            return stem
        if len(stem) >= 2 and stem[-1] == stem[-2] and stem[:-1] in VERB_SENSES:
            return stem[:-1]  # running -> runn -> run
        if stem + "e" in VERB_SENSES:
            return stem + "e"  # dancing -> danc -> dance
    return None


def noun_lemma(word: str) -> str:
    w = word.lower()
    if w in IRREGULAR_NOUNS:
        return IRREGULAR_NOUNS[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("ses") or w.endswith("xes") or w.endswith("hes"):
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        return w[:-1]
    return w

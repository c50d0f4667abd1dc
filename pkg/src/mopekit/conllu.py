"""CoNLL-U dependency trees: reading, tree checks, span helpers."""
from __future__ import annotations

from dataclasses import dataclass

VERB_UPOS = ("VERB", "AUX")
NOMINAL_UPOS = ("NOUN", "PRON", "PROPN")


class ConlluFormatError(ValueError):
    """A malformed token line. ``line`` is the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class TreeError(ValueError):
    """A structurally invalid sentence: bad root count or a head cycle."""


@dataclass(frozen=True)
class DepToken:
    index: int  # 1-based position in the sentence
    form: str
    lemma: str
    upos: str
    head: int  # 0 means the sentence root
    deprel: str
    char_start: int | None = None
    char_end: int | None = None


@dataclass(frozen=True)
class DepSentence:
    tokens: list[DepToken]
    text: str

    def token(self, index: int) -> DepToken:
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"token index {index} out of range")
        return self.tokens[index - 1]


def _offsets(text: str, forms: list[str]) -> list[tuple[int | None, int | None]]:
    # Greedy left-to-right match of token forms against the raw sentence
    # text. A form that cannot be found gets no offsets and does not move
    # the cursor.
    spans: list[tuple[int | None, int | None]] = []
    cursor = 0
    for form in forms:
        at = text.find(form, cursor)
        if at < 0:
            spans.append((None, None))
        else:
            spans.append((at, at + len(form)))
            cursor = at + len(form)
    return spans


def _check_tree(tokens: list[DepToken], line: int) -> None:
    n = len(tokens)
    roots = [t for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise TreeError(f"sentence near line {line} has {len(roots)} roots")
    for t in tokens:
        if not 0 <= t.head <= n:
            raise TreeError(
                f"sentence near line {line}: head {t.head} out of range for token {t.index}"
            )
    # Walk up from every token; a walk longer than n tokens means a cycle.
    for t in tokens:
        seen = 0
        cur = t.head
        while cur != 0:
            cur = tokens[cur - 1].head
            seen += 1
            if seen > n:
                raise TreeError(f"sentence near line {line} has a head cycle")


def parse_conllu(text: str) -> list[DepSentence]:
    """Parse CoNLL-U text into sentences.

    Multiword-token ranges (``3-4``) and empty nodes (``8.1``) are skipped.
    A lemma of ``_`` falls back to the lowercased form. ``# text`` comments
    provide character offsets via greedy matching.
    """
    sentences: list[DepSentence] = []
    rows: list[tuple[list[str], int]] = []
    sent_text = ""
    first_line = 1

    def flush() -> None:
        nonlocal rows, sent_text
        if not rows:
            sent_text = ""
            return
        tokens: list[DepToken] = []
        for cols, line_no in rows:
            tid = int(cols[0])
            form = cols[1]
            lemma = cols[2] if cols[2] != "_" else form.lower()
            try:
                head = int(cols[6])
            except ValueError:
                raise ConlluFormatError(f"non-integer head {cols[6]!r}", line_no) from None
            tokens.append(
                DepToken(index=tid, form=form, lemma=lemma, upos=cols[3], head=head, deprel=cols[7])
            )
        for want, tok in enumerate(tokens, start=1):
            if tok.index != want:
                raise ConlluFormatError(
                    f"token ids not contiguous from 1 (saw {tok.index}, expected {want})",
                    rows[0][1],
                )
        _check_tree(tokens, rows[0][1])
        if sent_text:
            spans = _offsets(sent_text, [t.form for t in tokens])
            tokens = [
                DepToken(
                    index=t.index,
                    form=t.form,
                    lemma=t.lemma,
                    upos=t.upos,
                    head=t.head,
                    deprel=t.deprel,
                    char_start=s,
                    char_end=e,
                )
                for t, (s, e) in zip(tokens, spans)
            ]
        sentences.append(DepSentence(tokens=tokens, text=sent_text))
        rows = []
        sent_text = ""

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not rows:
            first_line = line_no
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("text =") or body.startswith("text="):
                sent_text = body.split("=", 1)[1].strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluFormatError(f"expected 10 tab-separated columns, got {len(cols)}", line_no)
        tid = cols[0]
        if "-" in tid or "." in tid:
            continue  # multiword range / empty node
        try:
            int(tid)
        except ValueError:
            raise ConlluFormatError(f"bad token id {tid!r}", line_no) from None
        rows.append((cols, line_no))
    flush()
    del first_line
    return sentences


def children(sentence: DepSentence, index: int, deprel: str | None = None) -> list[DepToken]:
    """Direct dependents of the token at ``index``, in index order."""
    if not 1 <= index <= len(sentence.tokens):
        raise IndexError(f"token index {index} out of range")
    out = [t for t in sentence.tokens if t.head == index]
    if deprel is not None:
        out = [t for t in out if t.deprel == deprel]
    return out


def subtree_indices(sentence: DepSentence, index: int) -> list[int]:
    """Indices of the token and all its descendants, ascending."""
    if not 1 <= index <= len(sentence.tokens):
        raise IndexError(f"token index {index} out of range")
    kids: dict[int, list[int]] = {}
    for t in sentence.tokens:
        kids.setdefault(t.head, []).append(t.index)
    out = []
    stack = [index]
    while stack:
        cur = stack.pop()
        out.append(cur)
        stack.extend(kids.get(cur, ()))
    return sorted(out)


def subtree_span(sentence: DepSentence, index: int) -> str:
    """Surface phrase for a subtree: forms joined by single spaces."""
    return " ".join(sentence.tokens[i - 1].form for i in subtree_indices(sentence, index))


def verbs(sentence: DepSentence) -> list[DepToken]:
    return [t for t in sentence.tokens if t.upos in VERB_UPOS]

"""PENMAN s-expression graphs: parsing, serialization, edge lookups.

The parser is deliberately strict: every failure carries the byte offset of
the offending token so callers can point at the exact spot in the input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field


class PenmanSyntaxError(ValueError):
    """Malformed PENMAN text. ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class UnknownVariable(KeyError):
    """Lookup of a variable id that is not an instance of the graph."""


@dataclass(frozen=True)
class AmrGraph:
    """A rooted, labeled graph in PENMAN notation.

    instances maps variable id to concept. Role edges point at other
    variables; attribute edges hold literal values verbatim (quoted strings
    keep their quotes). Re-entrant variables appear once in ``instances`` but
    may be the target of any number of role edges.
    """

    root: str
    instances: dict[str, str] = field(default_factory=dict)
    role_edges: list[tuple[str, str, str]] = field(default_factory=list)
    attribute_edges: list[tuple[str, str, str]] = field(default_factory=list)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<slash>/)
  | (?P<string>"(?:\\.|[^"\\])*")
  | (?P<role>:[^\s()/]+)
  | (?P<atom>[^\s()/:]+)
    """,
    re.VERBOSE,
)

_VAR_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PenmanSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), m.start()))
        pos = m.end()
    return tokens


def _defined_variables(tokens: list[tuple[str, str, int]]) -> set[str]:
    # A variable definition is the atom between "(" and "/". Collected up
    # front so re-entrant references are recognized wherever they appear.
    defined = set()
    for i in range(1, len(tokens) - 1):
        if (
            tokens[i][0] == "atom"
            and tokens[i - 1][0] == "lparen"
            and tokens[i + 1][0] == "slash"
        ):
            defined.add(tokens[i][1])
    return defined


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = _defined_variables(self.tokens)
        self.instances: dict[str, str] = {}
        self.role_edges: list[tuple[str, str, str]] = []
        self.attribute_edges: list[tuple[str, str, str]] = []

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _next(self, expected: str, what: str):
        tok = self._peek()
        if tok is None:
            raise PenmanSyntaxError(f"expected {what}, got end of input", len(self.text))
        if tok[0] != expected:
            raise PenmanSyntaxError(f"expected {what}, got {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> AmrGraph:
        if not self.tokens:
            raise PenmanSyntaxError("empty input", 0)
        root = self._node()
        trailing = self._peek()
        if trailing is not None:
            raise PenmanSyntaxError(f"trailing content {trailing[1]!r}", trailing[2])
        return AmrGraph(
            root=root,
            instances=self.instances,
            role_edges=self.role_edges,
            attribute_edges=self.attribute_edges,
        )

    def _node(self) -> str:
        self._next("lparen", "'('")
        _, var, var_off = self._next("atom", "a variable id")
        if not _VAR_RE.match(var):
            raise PenmanSyntaxError(f"invalid variable id {var!r}", var_off)
        self._next("slash", "'/'")
        tok = self._peek()
        if tok is None or tok[0] not in ("atom", "string"):
            off = tok[2] if tok else len(self.text)
            raise PenmanSyntaxError("expected a concept after '/'", off)
        concept = tok[1]
        self.pos += 1
        if var in self.instances and self.instances[var] != concept:
            raise PenmanSyntaxError(
                f"variable {var!r} redefined with conflicting concept", var_off
            )
        self.instances[var] = concept
        while True:
            tok = self._peek()
            if tok is None:
                raise PenmanSyntaxError("unbalanced '(': expected ')'", len(self.text))
            if tok[0] == "rparen":
                self.pos += 1
                return var
            if tok[0] != "role":
                raise PenmanSyntaxError(f"expected a role or ')', got {tok[1]!r}", tok[2])
            role = tok[1]
            self.pos += 1
            self._value(var, role)

    def _value(self, src: str, role: str) -> None:
        tok = self._peek()
        if tok is None:
            raise PenmanSyntaxError(f"missing value for role {role}", len(self.text))
        kind, text, off = tok
        if kind == "lparen":
            target = self._node()
            self.role_edges.append((src, role, target))
        elif kind == "string":
            self.pos += 1
            self.attribute_edges.append((src, role, text))
        elif kind == "atom":
            self.pos += 1
            if text in self.variables:
                self.role_edges.append((src, role, text))
            else:
                self.attribute_edges.append((src, role, text))
        else:
            raise PenmanSyntaxError(f"unexpected {text!r} after role {role}", off)


def parse_penman(text: str) -> AmrGraph:
    """Parse a single PENMAN s-expression into an AmrGraph."""
    return _Parser(text).parse()


def parse_penman_blocks(text: str) -> list[AmrGraph]:
    """Parse a document of graphs separated by blank lines.

    Raised errors carry offsets relative to the failing block; the block
    index is prepended to the message.
    """
    graphs = []
    block_lines: list[str] = []
    blocks: list[str] = []
    for line in text.splitlines():
        if line.strip():
            block_lines.append(line)
        elif block_lines:
            blocks.append("\n".join(block_lines))
            block_lines = []
    if block_lines:
        blocks.append("\n".join(block_lines))
    for i, block in enumerate(blocks):
        try:
            graphs.append(parse_penman(block))
        except PenmanSyntaxError as exc:
            raise PenmanSyntaxError(f"graph {i}: {exc.message}", exc.offset) from None
    return graphs


def serialize_penman(graph: AmrGraph) -> str:
    """Render a graph back to PENMAN text.

    Each instance is defined at its first encounter in a depth-first walk
    from the root; later references are bare variables, so output never
    forward-references. Raises ValueError when some instance is unreachable
    from the root (such a graph cannot be written as one s-expression).
    """
    if graph.root not in graph.instances:
        raise ValueError(f"root {graph.root!r} is not an instance")
    roles_by_src: dict[str, list[tuple[str, str]]] = {}
    for src, role, tgt in graph.role_edges:
        roles_by_src.setdefault(src, []).append((role, tgt))
    attrs_by_src: dict[str, list[tuple[str, str]]] = {}
    for src, role, val in graph.attribute_edges:
        attrs_by_src.setdefault(src, []).append((role, val))
    emitted: set[str] = set()

    def emit(var: str) -> str:
        emitted.add(var)
        parts = [f"({var} / {graph.instances[var]}"]
        for role, tgt in roles_by_src.get(var, []):
            if tgt in emitted:
                parts.append(f" {role} {tgt}")
            else:
                parts.append(f" {role} {emit(tgt)}")
        for role, val in attrs_by_src.get(var, []):
            parts.append(f" {role} {val}")
        parts.append(")")
        return "".join(parts)

    out = emit(graph.root)
    missing = set(graph.instances) - emitted
    if missing:
        raise ValueError(f"instances unreachable from root: {sorted(missing)}")
    return out


def outgoing(graph: AmrGraph, var: str, role: str) -> str | None:
    """First target of ``role`` out of ``var``, in declaration order.

    Role edges are searched before attribute edges. Returns None when the
    node has no such edge; raises UnknownVariable for an unknown ``var``.
    """
    if var not in graph.instances:
        raise UnknownVariable(var)
    for src, r, tgt in graph.role_edges:
        if src == var and r == role:
            return tgt
    for src, r, val in graph.attribute_edges:
        if src == var and r == role:
            return val
    return None


def graphs_equal(a: AmrGraph, b: AmrGraph) -> bool:
    """Structural equality: root, instances, and edge sets."""
    return (
        a.root == b.root
        and a.instances == b.instances
        and set(a.role_edges) == set(b.role_edges)
        and set(a.attribute_edges) == set(b.attribute_edges)
    )

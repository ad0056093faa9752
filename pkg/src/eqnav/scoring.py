"""Structured equation transcripts and the six-indicator correctness metric.

Transcripts use a small linear grammar (fraction, root, exponent, round
brackets, square-bracket matrices, bare symbols).  Scoring compares an answer
tree against a reference tree: every node can earn one identification credit
and one placement credit, insertions are subtracted from what was earned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


class TranscriptError(ValueError):
    """Syntax error in a linear transcript, with position information."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Symbol:
    text: str


@dataclass(frozen=True)
class Exponent:
    base: "Node"
    power: "Node"


@dataclass(frozen=True)
class Fraction:
    numerator: "Node"
    denominator: "Node"


@dataclass(frozen=True)
class Root:
    radicand: "Node"


@dataclass(frozen=True)
class Bracketed:
    body: "Node"
    shape: str = "round"


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple["Node", ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("matrix rows must be non-empty and equally long")


@dataclass(frozen=True)
class Sequence:
    children: tuple["Node", ...]


Node = Symbol | Exponent | Fraction | Root | Bracketed | Matrix | Sequence

# Multi-character tokens accepted as plain symbols.
_NAMED_SYMBOLS = {"\\times": "×"}
_SYMBOL_CHARS = set("0123456789abcdefghijklmnopqrstuvwxyz"
                    "ABCDEFGHIJKLMNOPQRSTUVWXYZ=+-×−.!|<>")


def normalize(node: Node) -> Node:
    """Flatten nested sequences and collapse single-item sequences."""
    if isinstance(node, Sequence):
        flat: list[Node] = []
        for child in node.children:
            child = normalize(child)
            if isinstance(child, Sequence):
                flat.extend(child.children)
            else:
                flat.append(child)
        if len(flat) == 1:
            return flat[0]
        return Sequence(tuple(flat))
    if isinstance(node, Exponent):
        return Exponent(normalize(node.base), normalize(node.power))
    if isinstance(node, Fraction):
        return Fraction(normalize(node.numerator), normalize(node.denominator))
    if isinstance(node, Root):
        return Root(normalize(node.radicand))
    if isinstance(node, Bracketed):
        return Bracketed(normalize(node.body), node.shape)
    if isinstance(node, Matrix):
        return Matrix(tuple(tuple(normalize(c) for c in row) for row in node.rows))
    return node


def as_root(node: Node) -> Sequence:
    """Normalize and wrap in the root sequence used for comparisons."""
    node = normalize(node)
    if isinstance(node, Sequence):
        return node
    return Sequence((node,))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> TranscriptError:
        return TranscriptError(message, self.pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_expr(self, stop: str) -> Sequence:
        items: list[Node] = []
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                break
            if ch == "^":
                self.pos += 1
                if not items:
                    raise self.error("exponent has no base")
                power = self.parse_braced_or_char()
                items[-1] = Exponent(items[-1], power)
                continue
            items.append(self.parse_item())
        return Sequence(tuple(items))

    def parse_braced_or_char(self) -> Node:
        ch = self.peek()
        if ch == "{":
            return self.parse_braced()
        if ch in _SYMBOL_CHARS:
            self.pos += 1
            return Symbol(ch)
        raise self.error("expected '{' or a symbol after '^'")

    def parse_braced(self) -> Node:
        self.expect("{")
        inner = self.parse_expr(stop="}")
        self.expect("}")
        return inner

    def parse_item(self) -> Node:
        ch = self.peek()
        if ch == "\\":
            return self.parse_command()
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr(stop=")")
            self.expect(")")
            return Bracketed(inner, "round")
        if ch == "[":
            return self.parse_matrix()
        if ch in _SYMBOL_CHARS:
            self.pos += 1
            return Symbol("-" if ch == "−" else ch)
        raise self.error(f"unexpected character {ch!r}")

    def parse_command(self) -> Node:
        start = self.pos
        self.pos += 1
        name = "\\"
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            name += self.text[self.pos]
            self.pos += 1
        if name == "\\frac":
            num = self.parse_braced()
            den = self.parse_braced()
            return Fraction(num, den)
        if name == "\\sqrt":
            return Root(self.parse_braced())
        if name in _NAMED_SYMBOLS:
            return Symbol(_NAMED_SYMBOLS[name])
        self.pos = start
        raise self.error(f"unknown command {name!r}")

    def parse_matrix(self) -> Matrix:
        self.expect("[")
        rows: list[tuple[Node, ...]] = []
        current: list[Node] = []
        while True:
            current.append(self.parse_expr(stop=",;]"))
            ch = self.peek()
            if ch == ",":
                self.pos += 1
            elif ch == ";":
                self.pos += 1
                rows.append(tuple(current))
                current = []
            elif ch == "]":
                self.pos += 1
                rows.append(tuple(current))
                break
            else:
                raise self.error("unterminated matrix")
        try:
            return Matrix(tuple(rows))
        except ValueError as exc:
            raise self.error(str(exc)) from exc


def parse_transcript(text: str) -> Sequence:
    """Parse a linear transcript into its normalized tree."""
    parser = _Parser(text)
    tree = parser.parse_expr(stop="")
    if parser.peek() != "":
        raise parser.error("unexpected trailing input")
    if not tree.children:
        raise TranscriptError("empty transcript", 0)
    return as_root(tree)


def render_transcript(node: Node) -> str:
    """Canonical linear form; parse_transcript(render_transcript(t)) == t."""
    node = normalize(node)
    if isinstance(node, Sequence):
        return "".join(render_transcript(c) for c in node.children)
    if isinstance(node, Symbol):
        return "\\times" if node.text == "×" else node.text
    if isinstance(node, Exponent):
        return f"{render_transcript(node.base)}^{{{render_transcript(node.power)}}}"
    if isinstance(node, Fraction):
        return f"\\frac{{{render_transcript(node.numerator)}}}{{{render_transcript(node.denominator)}}}"
    if isinstance(node, Root):
        return f"\\sqrt{{{render_transcript(node.radicand)}}}"
    if isinstance(node, Bracketed):
        return f"({render_transcript(node.body)})"
    if isinstance(node, Matrix):
        return "[" + ";".join(
            ",".join(render_transcript(c) for c in row) for row in node.rows
        ) + "]"
    raise TypeError(f"unknown node {node!r}")


def node_key(node: Node) -> tuple:
    """Category used for identification matching."""
    if isinstance(node, Symbol):
        return ("symbol", node.text)
    if isinstance(node, Exponent):
        return ("exponent",)
    if isinstance(node, Fraction):
        return ("fraction",)
    if isinstance(node, Root):
        return ("root",)
    if isinstance(node, Bracketed):
        return ("bracket", node.shape)
    if isinstance(node, Matrix):
        return ("matrix",)
    if isinstance(node, Sequence):
        return ("sequence",)
    raise TypeError(f"unknown node {node!r}")


def iter_nodes(node: Node):
    yield node
    if isinstance(node, Sequence):
        for c in node.children:
            yield from iter_nodes(c)
    elif isinstance(node, Exponent):
        yield from iter_nodes(node.base)
        yield from iter_nodes(node.power)
    elif isinstance(node, Fraction):
        yield from iter_nodes(node.numerator)
        yield from iter_nodes(node.denominator)
    elif isinstance(node, Root):
        yield from iter_nodes(node.radicand)
    elif isinstance(node, Bracketed):
        yield from iter_nodes(node.body)
    elif isinstance(node, Matrix):
        for row in node.rows:
            for c in row:
                yield from iter_nodes(c)


def _slots(node: Node) -> list[tuple[str, Node]]:
    if isinstance(node, Exponent):
        return [("base", node.base), ("power", node.power)]
    if isinstance(node, Fraction):
        return [("numerator", node.numerator), ("denominator", node.denominator)]
    if isinstance(node, Root):
        return [("radicand", node.radicand)]
    if isinstance(node, Bracketed):
        return [("body", node.body)]
    return []


def _placed_count(ref: Node, ans: Node) -> int:
    """Placement credits for the best structure-preserving alignment.

    Both arguments must share a node key.  A node is placed when its parent
    pair is aligned and it fills the same role (same slot, same matrix cell,
    or an order-preserving position among sequence children).
    """
    total = 1
    for (_, r_child), (_, a_child) in zip(_slots(ref), _slots(ans)):
        if node_key(r_child) == node_key(a_child):
            total += _placed_count(r_child, a_child)
    if isinstance(ref, Sequence) and isinstance(ans, Sequence):
        total += _align_children(ref.children, ans.children)
    if isinstance(ref, Matrix) and isinstance(ans, Matrix):
        for i in range(min(len(ref.rows), len(ans.rows))):
            for j in range(min(len(ref.rows[i]), len(ans.rows[i]))):
                r_cell, a_cell = ref.rows[i][j], ans.rows[i][j]
                if node_key(r_cell) == node_key(a_cell):
                    total += _placed_count(r_cell, a_cell)
    return total


def _align_children(ref_children: tuple[Node, ...], ans_children: tuple[Node, ...]) -> int:
    """Order-preserving alignment of sibling lists maximizing placed credits."""
    n, m = len(ref_children), len(ans_children)
    pair_value: dict[tuple[int, int], int] = {}
    for i, r in enumerate(ref_children):
        for j, a in enumerate(ans_children):
            if node_key(r) == node_key(a):
                pair_value[(i, j)] = _placed_count(r, a)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            best = max(table[i + 1][j], table[i][j + 1])
            if (i, j) in pair_value:
                best = max(best, pair_value[(i, j)] + table[i + 1][j + 1])
            table[i][j] = best
    return table[0][0]


@dataclass(frozen=True)
class ScoreReport:
    max_score: int
    insertions: int
    deletions: int
    misplacements: int
    correctness: float
    completely_correct: bool


def completely_correct(answer: Node, reference: Node) -> bool:
    return as_root(answer) == as_root(reference)


def correctness_score(answer: Node, reference: Node) -> ScoreReport:
    """Score an answer tree against the reference tree.

    Maximum = two credits per reference node.  Identification credits come
    from a bag match over node categories, placement credits from the best
    structure-preserving alignment; insertions are subtracted from earned
    credit, deletions forfeit both credits implicitly.
    """
    ref = as_root(reference)
    ans = as_root(answer)
    ref_nodes = list(iter_nodes(ref))
    ans_nodes = list(iter_nodes(ans))
    ref_keys = Counter(node_key(n) for n in ref_nodes)
    ans_keys = Counter(node_key(n) for n in ans_nodes)
    identified = sum((ref_keys & ans_keys).values())
    placed = _placed_count(ref, ans)
    insertions = len(ans_nodes) - identified
    deletions = len(ref_nodes) - identified
    misplacements = identified - placed
    max_score = 2 * len(ref_nodes)
    earned = identified + placed
    correctness = max(0, earned - insertions) / max_score * 100.0
    return ScoreReport(
        max_score=max_score,
        insertions=insertions,
        deletions=deletions,
        misplacements=misplacements,
        correctness=correctness,
        completely_correct=completely_correct(answer, reference),
    )

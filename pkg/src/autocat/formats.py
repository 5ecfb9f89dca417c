"""Reaction file parsing, canonical text output, JSON reports and DOT export.

Reaction file grammar, one item per line::

    # comment
    label: 2 x1 + x2 -> x3 + 1/2 x4
    x3 -> x1                      (label optional, auto-named r<k>)

Entities are numbered by first appearance and reactions by file order.
Lines starting with ``#!`` are directives; ``#! witness X... : r=v ...``
records a reference witness checked by ``check --witness-paper``.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError
from .network import Reaction, ReactionNetwork

SCHEMA_VERSION = 1

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_COEF = re.compile(r"([0-9]+)(?:\s*/\s*([0-9]+))?")
_ARROW = "->"


@dataclass
class WitnessNote:
    entities: tuple[str, ...]
    values: dict[str, Fraction]
    line: int


@dataclass
class ParsedFile:
    network: ReactionNetwork
    witnesses: list[WitnessNote] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _parse_side(text: str, line: int, col0: int) -> list[tuple[str, Fraction, int]]:
    """Split ``a + 2 b`` into (entity, coefficient, column) terms."""
    terms = []
    pos = 0
    for chunk in text.split("+"):
        start = pos
        pos += len(chunk) + 1
        stripped = chunk.strip()
        col = col0 + start + (len(chunk) - len(chunk.lstrip())) + 1
        if not stripped:
            raise ParseError("empty term", line, col)
        coef = Fraction(1)
        m = _COEF.match(stripped)
        rest = stripped
        if m:
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise ParseError("zero denominator", line, col)
            coef = Fraction(num, den)
            if coef <= 0:
                raise ParseError("coefficient must be positive", line, col)
            rest = stripped[m.end():].lstrip()
        elif stripped.startswith("-"):
            raise ParseError("coefficient must be positive", line, col)
        if not IDENT.fullmatch(rest):
            raise ParseError(f"invalid entity name {rest!r}", line, col + len(stripped) - len(rest))
        terms.append((rest, coef, col))
    return terms


def parse_reactions(text: str, allow_open: bool = False) -> ParsedFile:
    entities: list[str] = []
    seen_entities: dict[str, int] = {}
    raw: list[tuple[str | None, int, list, list]] = []
    witnesses: list[WitnessNote] = []
    labels: dict[str, int] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#!"):
            witnesses.extend(_directive(stripped[2:], lineno))
            continue
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        label = None
        offset = 0
        if ":" in body:
            head, body = body.split(":", 1)
            offset = len(head) + 1
            label = head.strip()
            if not IDENT.fullmatch(label):
                raise ParseError(f"invalid reaction label {label!r}", lineno, 1)
            if label in labels:
                raise ParseError(f"repeated reaction label {label!r} (first on line {labels[label]})",
                                 lineno, 1)
            labels[label] = lineno
        if body.count(_ARROW) != 1:
            raise ParseError("expected exactly one '->'", lineno, offset + 1)
        lhs, rhs = body.split(_ARROW)
        sides = []
        for side_text, col0 in ((lhs, offset), (rhs, offset + len(lhs) + len(_ARROW))):
            if not side_text.strip():
                if not allow_open:
                    raise ParseError("empty side (use --allow-open for inflow/outflow)", lineno, col0 + 1)
                sides.append([])
            else:
                sides.append(_parse_side(side_text, lineno, col0))
        for terms in sides:
            for name, _, _ in terms:
                if name not in seen_entities:
                    seen_entities[name] = len(entities)
                    entities.append(name)
        raw.append((label, lineno, sides[0], sides[1]))

    reactions = []
    used = set(labels)
    for k, (label, lineno, lhs, rhs) in enumerate(raw, start=1):
        if label is None:
            label = f"r{k}"
            while label in used:
                label += "_"
            used.add(label)
        maps = []
        for terms in (lhs, rhs):
            coeffs: dict[int, Fraction] = {}
            for name, c, _ in terms:
                idx = seen_entities[name]
                coeffs[idx] = coeffs.get(idx, Fraction(0)) + c
            maps.append(coeffs)
        reactions.append(Reaction(label, maps[0], maps[1]))
    rn = ReactionNetwork(tuple(entities), tuple(reactions))
    warnings = [f"open reaction {rn.reactions[j].name} is excluded from core search"
                for j in rn.open_reactions()]
    return ParsedFile(rn, witnesses, warnings)


def _directive(text: str, lineno: int) -> list[WitnessNote]:
    words = text.split()
    if not words or words[0] != "witness":
        return []
    rest = " ".join(words[1:])
    if ":" not in rest:
        raise ParseError("witness directive needs 'entities : reaction=value ...'", lineno, 1)
    ents, vals = rest.split(":", 1)
    values = {}
    for item in vals.split():
        name, _, value = item.partition("=")
        try:
            values[name] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad witness value {item!r}", lineno, 1) from None
    return [WitnessNote(tuple(ents.split()), values, lineno)]


def parse(text: str, allow_open: bool = False) -> ReactionNetwork:
    return parse_reactions(text, allow_open).network


def decode(data: bytes) -> str:
    """UTF-8 text of a reaction file, or a ParseError at the first bad byte."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        head = data[:exc.start]
        line = head.count(b"\n") + 1
        column = exc.start - (head.rfind(b"\n") + 1) + 1
        raise ParseError("invalid UTF-8", line, column) from None


def load(path, allow_open: bool = False) -> ParsedFile:
    with open(path, "rb") as fh:
        return parse_reactions(decode(fh.read()), allow_open)


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _side(rn: ReactionNetwork, coeffs: Mapping[int, Fraction]) -> str:
    terms = []
    for x in sorted(coeffs):
        c = coeffs[x]
        terms.append(rn.entities[x] if c == 1 else f"{format_coefficient(c)} {rn.entities[x]}")
    return " + ".join(terms)


def format_network(rn: ReactionNetwork) -> str:
    """Canonical text form; parsing it gives back an equal network.

    Entities that never occur would be lost, and first-appearance order is
    only preserved when it matches the index order, which holds for every
    network produced by the parser.
    """
    lines = [f"{r.name}: {_side(rn, r.reactants)} -> {_side(rn, r.products)}".replace("  ", " ")
             for r in rn.reactions]
    return "\n".join(lines) + "\n"


def digest(rn: ReactionNetwork) -> str:
    canon = "entities: " + " ".join(rn.entities) + "\n" + format_network(rn)
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------- JSON

def rational(v: Fraction) -> str:
    """Rationals as "p" or "p/q" strings so JSON stays exact."""
    return format_coefficient(Fraction(v))


def emit_json(doc: Mapping) -> str:
    """Serialise a report document: stable key order, two-space indent, LF, trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def load_report(text: str) -> dict:
    return json.loads(text)


# ---------------------------------------------------------------- DOT

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g, rn: ReactionNetwork, highlight: Iterable = (), title: str = "koenig") -> str:
    """DOT text for a König (sub)graph.

    Entities are circles, reactions boxes.  ``highlight`` is an iterable of
    vertices ``("x", i)`` / ``("r", j)`` drawn bold and filled.
    """
    marked = set(highlight)
    lines = [f"digraph {_quote(title)} {{"]
    for kind, idx in g.vertices():
        if kind == "x":
            node, label, shape = f"x:{rn.entities[idx]}", rn.entities[idx], "circle"
        else:
            node, label, shape = f"r:{rn.reactions[idx].name}", rn.reactions[idx].name, "box"
        attrs = [f"label={_quote(label)}", f"shape={shape}"]
        if (kind, idx) in marked:
            attrs += ["style=\"bold,filled\"", "fillcolor=\"lightblue\""]
        lines.append(f"  {_quote(node)} [{', '.join(attrs)}];")
    for (ka, a), (kb, b) in g.edges():
        if ka == "x":
            src, dst = f"x:{rn.entities[a]}", f"r:{rn.reactions[b].name}"
            w = rn.s_minus(a, b)
        else:
            src, dst = f"r:{rn.reactions[a].name}", f"x:{rn.entities[b]}"
            w = rn.s_plus(b, a)
        attrs = []
        if w != 1:
            attrs.append(f"label={_quote(format_coefficient(w))}")
        if (ka, a) in marked and (kb, b) in marked:
            attrs.append("penwidth=2")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(src)} -> {_quote(dst)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"

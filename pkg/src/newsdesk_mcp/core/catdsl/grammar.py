"""Category definition grammar.

A definition file starts with optional ``key: value`` header lines
(``label``, ``threshold``, ``country``), followed by the body. ``#``
starts a comment line.

Boolean body::

    earthquake% AND (Italy OR Italia) AND NOT drill
    NEAR/5(virus, "bird flu")

Weighted body (selected by a ``threshold:`` header), one term per line::

    fever      2
    "avian flu" 3
    market    -1
"""

from __future__ import annotations

import math
import re

import pyparsing as pp

from newsdesk_mcp.errors import DefinitionSyntaxError
from newsdesk_mcp.models.category import (
    AndNode,
    CategoryDefinition,
    DefinitionMode,
    NearNode,
    NotNode,
    OrNode,
    Term,
    TermNode,
)

pp.ParserElement.enable_packrat()

_HEADER = re.compile(r"^\s*(label|threshold|country)\s*:\s*(.*?)\s*$")
_WEIGHTED_LINE = re.compile(
    r'^\s*(?:"(?P<phrase>[^"]+)"|(?P<word>[^\s"]+))\s+(?P<weight>[+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)\s*$'
)
_KEYWORD_CHARS = pp.printables.replace("(", "").replace(")", "").replace('"', "").replace(",", "")
_BARE_WORD = re.compile(r'[^\s()",]+')

LPAR, RPAR, COMMA = pp.Suppress.using_each("(),")
and_, or_, not_ = pp.Keyword.using_each(["AND", "OR", "NOT"], ident_chars=_KEYWORD_CHARS)
keyword = and_ | or_ | not_


def _make_term(s: str, loc: int, toks: pp.ParseResults) -> Term:
    text = toks[0]
    if "%%" in text:
        raise pp.ParseFatalException(s, loc, f"adjacent wildcards in term {text!r}")
    if not text.strip():
        raise pp.ParseFatalException(s, loc, "empty term")
    return Term(pattern=text)


bare_word = pp.Regex(r'(?!NEAR/)[^\s()",]+').set_name("term")
phrase = pp.QuotedString('"', unquote_results=True).set_name("phrase")
term = (~keyword + (phrase | bare_word)).set_parse_action(_make_term)


def _make_near(s: str, loc: int, toks: pp.ParseResults) -> NearNode:
    k = int(toks[0])
    if k < 1:
        raise pp.ParseFatalException(s, loc, f"NEAR window must be at least 1, got {k}")
    return NearNode(k=k, left=toks[1], right=toks[2])


near = (
    pp.Regex(r"NEAR/(?P<k>-?\d+)").set_parse_action(lambda t: t.k)
    + LPAR
    + term
    + COMMA
    + term
    + RPAR
).set_parse_action(_make_near)

operand = near | term.copy().add_parse_action(lambda t: TermNode(term=t[0]))


def _make_not(toks: pp.ParseResults) -> NotNode:
    return NotNode(child=toks[0][1])


def _make_and(toks: pp.ParseResults) -> AndNode:
    return AndNode(children=list(toks[0][0::2]))


def _make_or(toks: pp.ParseResults) -> OrNode:
    return OrNode(children=list(toks[0][0::2]))


expression = pp.infix_notation(
    operand,
    [
        (not_, 1, pp.OpAssoc.RIGHT, _make_not),
        (and_, 2, pp.OpAssoc.LEFT, _make_and),
        (or_, 2, pp.OpAssoc.LEFT, _make_or),
    ],
).set_name("category expression")


def parse_expression(text: str):
    """Parse a boolean body into an AST node."""
    try:
        result = expression.parse_string(text, parse_all=True)
    except (pp.ParseException, pp.ParseFatalException) as e:
        raise DefinitionSyntaxError(e.msg, line=e.lineno, column=e.col) from e
    return result[0]


def parse_definition(text: str, category_id: str = "inline") -> CategoryDefinition:
    """Parse definition source (headers and body) into a ``CategoryDefinition``."""
    if not text.strip():
        raise DefinitionSyntaxError("empty definition")

    headers: dict[str, str] = {}
    body_lines: list[str] = []
    in_header = True
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            body_lines.append("")
            continue
        match = _HEADER.match(line) if in_header else None
        if match:
            headers[match.group(1)] = match.group(2)
            body_lines.append("")
            continue
        if stripped:
            in_header = False
        body_lines.append(line)

    label = headers.get("label", category_id)
    country = headers.get("country") or None
    if country is not None:
        country = country.upper()

    if "threshold" in headers:
        return _parse_weighted(category_id, label, country, headers["threshold"], body_lines)

    body = "\n".join(body_lines)
    if not body.strip():
        raise DefinitionSyntaxError("definition has no expression", line=len(body_lines) or 1)
    node = parse_expression(body)
    return CategoryDefinition(
        category_id=category_id,
        label=label,
        mode=DefinitionMode.BOOLEAN,
        country=country,
        expression=node,
    )


def _parse_weighted(
    category_id: str,
    label: str,
    country: str | None,
    threshold_text: str,
    lines: list[str],
) -> CategoryDefinition:
    try:
        threshold = float(threshold_text)
    except ValueError:
        raise DefinitionSyntaxError(f"invalid threshold {threshold_text!r}") from None
    if not math.isfinite(threshold):
        raise DefinitionSyntaxError(f"threshold must be finite, got {threshold_text!r}")

    terms: list[Term] = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        match = _WEIGHTED_LINE.match(line)
        if match is None:
            raise DefinitionSyntaxError(
                "expected '<term> <weight>'", line=number, column=len(line) - len(line.lstrip()) + 1
            )
        pattern = match.group("phrase") or match.group("word")
        if "%%" in pattern:
            raise DefinitionSyntaxError(
                f"adjacent wildcards in term {pattern!r}", line=number, column=match.start() + 1
            )
        terms.append(Term(pattern=pattern, weight=float(match.group("weight"))))

    if not terms:
        raise DefinitionSyntaxError("weighted definition has no terms", line=len(lines) or 1)
    return CategoryDefinition(
        category_id=category_id,
        label=label,
        mode=DefinitionMode.WEIGHTED,
        country=country,
        terms=terms,
        threshold=threshold,
    )


def format_term(term: Term) -> str:
    plain = _BARE_WORD.fullmatch(term.pattern) and not term.pattern.startswith("NEAR/")
    if plain and term.pattern not in ("AND", "OR", "NOT"):
        return term.pattern
    return f'"{term.pattern}"'


def format_expression(node) -> str:
    """Fully parenthesized source text; parsing it yields an equal AST."""
    if isinstance(node, TermNode):
        return format_term(node.term)
    if isinstance(node, NearNode):
        return f"NEAR/{node.k}({format_term(node.left)}, {format_term(node.right)})"
    if isinstance(node, NotNode):
        return f"NOT {format_expression(node.child)}"
    if isinstance(node, AndNode):
        return "(" + " AND ".join(format_expression(c) for c in node.children) + ")"
    if isinstance(node, OrNode):
        return "(" + " OR ".join(format_expression(c) for c in node.children) + ")"
    raise TypeError(f"Unknown node type: {type(node).__name__}")


def format_definition(definition: CategoryDefinition) -> str:
    """Definition file text for ``definition``."""
    lines = [f"label: {definition.label}"]
    if definition.country:
        lines.append(f"country: {definition.country}")
    if definition.mode == DefinitionMode.WEIGHTED:
        lines.append(f"threshold: {definition.threshold!r}")
        for t in definition.terms:
            lines.append(f"{format_term(t)} {t.weight!r}")
    else:
        lines.append(format_expression(definition.expression))
    return "\n".join(lines) + "\n"

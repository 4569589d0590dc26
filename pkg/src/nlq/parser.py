"""Recursive-descent parser for the restricted query grammar.

A query is a head (``Subject* Verb* Object+``) optionally followed by
condition clauses::

    query       := head clause*
    head        := subject* verb* objects
    objects     := value ("and"? value)*
    clause      := "where" body | "with" body | between | "and" body
                 | comparator ...            (attribute pulled back from the head)
    body        := value* comparator values
                 | value* "is"? between
                 | (stray* attribute value+)+   -- "with name X type Y"
    between     := "between" attribute? value ("and" | "to") value attribute?
    comparator  := "is"? ("equal" | "equals") "to"? | "is"
                 | "is"? ("greater" | "less") "than"?
    values      := phrase ("and" phrase)*

The nine named rules are predicates over the parsed shape; :func:`parse`
tries them most-specific first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import EmptyQuery, NoRuleMatched
from .lexer import Token, TokenStream
from .lexicon import ConditionKind, TokenClass


class RuleId(enum.Enum):
    ASTMT = "Astmt"
    BSTMT = "Bstmt"
    CSTMT = "Cstmt"
    STMT1 = "Stmt1"
    STMT2 = "Stmt2"
    CONDBT = "CondBt"
    CONDEQ = "CondEq"
    CONDWEQ = "CondWEq"
    CONDQBT = "CondQBt"

    def __repr__(self):
        return self.value


class StatementKind(enum.Enum):
    KEYWORD = "Keyword"
    SHORT_OBJECTIVE = "ShortObjective"
    SIMPLE_OBJECTIVE = "SimpleObjective"
    MULTI_CONDITION = "MultiCondition"

    def __repr__(self):
        return self.value


Phrase = tuple[Token, ...]

_STRUCTURAL = frozenset({
    "where", "with", "between", "and", "is", "equal", "equals",
    "greater", "less", "than", "to",
})
_COMPARATORS = frozenset({"is", "equal", "equals", "greater", "less"})
_ORDERING = {
    ("greater", False): ConditionKind.GREATER,
    ("greater", True): ConditionKind.GREATER_THAN,
    ("less", False): ConditionKind.LESS,
    ("less", True): ConditionKind.LESS_THAN,
}


def phrase_text(phrase: Phrase) -> str:
    return " ".join(t.normalized for t in phrase)


@dataclass(frozen=True)
class ConditionClause:
    kind: ConditionKind
    attribute: Token | None
    values: tuple[Phrase, ...]
    # non-attribute words written before the attribute ("Document" in
    # "with Document Type doc", "PDM" in "with PDM name PDMDatabase")
    qualifiers: tuple[Token, ...] = ()

    @property
    def attribute_name(self) -> str | None:
        return self.attribute.normalized if self.attribute is not None else None

    def value_texts(self) -> tuple[str, ...]:
        return tuple(phrase_text(p) for p in self.values)

    def key(self):
        """Comparable summary that ignores spans and surface spelling."""
        return (
            self.kind,
            self.attribute_name,
            self.value_texts(),
            tuple(t.normalized for t in self.qualifiers),
        )

    def to_words(self) -> list[str]:
        quals = [t.normalized for t in self.qualifiers]
        attr = [self.attribute.normalized] if self.attribute is not None else []
        values = self.value_texts()
        if self.kind is ConditionKind.BETWEEN:
            bounds = [values[0], "and", values[1]]
            if quals:
                return ["where", *quals, "is", "between", *attr, *bounds]
            return ["between", *attr, *bounds]
        opener = "with" if self.kind is ConditionKind.WITH else "where"
        comparator = {
            ConditionKind.GREATER: ["greater"],
            ConditionKind.GREATER_THAN: ["greater", "than"],
            ConditionKind.LESS: ["less"],
            ConditionKind.LESS_THAN: ["less", "than"],
        }.get(self.kind, ["is"])
        joined: list[str] = []
        for i, v in enumerate(values):
            if i:
                joined.append("and")
            joined.append(v)
        return [opener, *quals, *attr, *comparator, *joined]


@dataclass(frozen=True)
class Statement:
    kind: StatementKind
    matched_rule: RuleId
    subject: tuple[Token, ...] = ()
    verbs: tuple[Token, ...] = ()
    objects: tuple[Token, ...] = ()
    conditions: tuple[ConditionClause, ...] = ()

    def to_text(self) -> str:
        words = [t.normalized for t in (*self.subject, *self.verbs, *self.objects)]
        for clause in self.conditions:
            words.extend(clause.to_words())
        return " ".join(words)


@dataclass
class _Shape:
    subject: list[Token] = field(default_factory=list)
    verbs: list[Token] = field(default_factory=list)
    objects: list[Token] = field(default_factory=list)
    clauses: list[ConditionClause] = field(default_factory=list)


def _word(tok: Token | None, *words: str) -> bool:
    return tok is not None and tok.normalized in words and not tok.is_(TokenClass.LITERAL)


def _valueish(tok: Token | None) -> bool:
    return tok is not None and tok.is_value and tok.normalized not in _STRUCTURAL


class _Parser:
    def __init__(self, tokens: Sequence[Token], source: str):
        self.toks = list(tokens)
        self.source = source
        self.pos = 0

    def peek(self, k: int = 0) -> Token | None:
        i = self.pos + k
        return self.toks[i] if i < len(self.toks) else None

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        if tok is None:
            end = len(self.source)
            span = (end, end)
            message += " at end of input"
        else:
            span = tok.span
            message += f" at {tok.surface!r}"
        raise NoRuleMatched(message, span)

    def value_run(self, allow_attributes: bool = True) -> list[Token]:
        run = []
        while _valueish(self.peek()) and (allow_attributes or not self.peek().attribute):
            run.append(self.advance())
        return run

    # head ---------------------------------------------------------------

    def shape(self) -> _Shape:
        shape = _Shape()
        while self.peek() is not None and self.peek().is_(TokenClass.SUBJECT):
            shape.subject.append(self.advance())
        while self.peek() is not None and self.peek().is_(TokenClass.VERB):
            shape.verbs.append(self.advance())
        shape.objects = self.objects()
        if shape.objects:
            self.clauses(shape)
        if self.peek() is not None:
            self.fail("unexpected word", self.peek())
        return shape

    def objects(self) -> list[Token]:
        objs = []
        while True:
            objs.extend(self.value_run())
            nxt = self.peek(1)
            if objs and _word(self.peek(), "and") and _valueish(nxt) and not nxt.attribute:
                self.advance()
                continue
            return objs

    # conditions ---------------------------------------------------------

    def clauses(self, shape: _Shape) -> None:
        while (tok := self.peek()) is not None:
            if _word(tok, "where"):
                self.advance()
                shape.clauses.extend(self.body(ConditionKind.EQUAL))
            elif _word(tok, "with"):
                self.advance()
                shape.clauses.extend(self.body(ConditionKind.WITH))
            elif _word(tok, "between"):
                shape.clauses.append(self.between())
            elif _word(tok, "and") and shape.clauses:
                self.advance()
                if _word(self.peek(), "where", "with", "between"):
                    continue
                last = shape.clauses[-1].kind
                family = ConditionKind.WITH if last is ConditionKind.WITH else ConditionKind.EQUAL
                shape.clauses.extend(self.body(family))
            elif _word(tok, *_COMPARATORS) and not shape.clauses:
                lhs = []
                if len(shape.objects) > 1 and shape.objects[-1].attribute:
                    lhs.append(shape.objects.pop())
                shape.clauses.extend(self.body(ConditionKind.EQUAL, lhs))
            else:
                return

    def body(self, family: ConditionKind, lhs: list[Token] | None = None) -> list[ConditionClause]:
        lhs = (lhs or []) + self.value_run()
        attrs = [i for i, t in enumerate(lhs) if t.attribute]
        if _word(self.peek(), "between") and attrs and attrs[-1] + 1 < len(lhs):
            # "with name X between ...": the range is a clause of its own
            return self.pairs(family, lhs)
        if _word(self.peek(), *_COMPARATORS, "between"):
            return self.comparison(family, lhs)
        if not lhs:
            self.fail("expected a condition", self.peek())
        return self.pairs(family, lhs)

    def pairs(self, kind: ConditionKind, seg: list[Token]) -> list[ConditionClause]:
        out = []
        strays: list[Token] = []
        i = 0
        while i < len(seg):
            if seg[i].attribute:
                attr = seg[i]
                i += 1
                phrase = []
                while i < len(seg) and not seg[i].attribute:
                    phrase.append(seg[i])
                    i += 1
                if not phrase:
                    self.fail("attribute has no value", attr)
                out.append(ConditionClause(kind, attr, (tuple(phrase),), tuple(strays)))
                strays = []
            else:
                strays.append(seg[i])
                i += 1
        if strays:
            out.append(ConditionClause(kind, None, (tuple(strays),)))
        out[-1] = self.extend_values(out[-1])
        return out

    def extend_values(self, clause: ConditionClause) -> ConditionClause:
        """Absorb ``and <value>`` alternatives; stop where a new condition starts."""
        values = list(clause.values)
        while _word(self.peek(), "and"):
            j = self.pos + 1
            seg = []
            while j < len(self.toks) and _valueish(self.toks[j]):
                seg.append(self.toks[j])
                j += 1
            if not seg or any(t.attribute for t in seg):
                break
            if j < len(self.toks) and _word(self.toks[j], *_COMPARATORS, "between"):
                break
            self.pos = j
            values.append(tuple(seg))
        return ConditionClause(clause.kind, clause.attribute, tuple(values), clause.qualifiers)

    def comparison(self, family: ConditionKind, lhs: list[Token]) -> list[ConditionClause]:
        attr_at = max((i for i, t in enumerate(lhs) if t.attribute), default=None)
        attribute = lhs[attr_at] if attr_at is not None else None
        before = tuple(lhs[:attr_at]) if attr_at is not None else tuple(lhs)
        if attr_at is not None and attr_at + 1 < len(lhs):
            self.fail("unexpected word after attribute", lhs[attr_at + 1])

        kind = family
        if _word(self.peek(), "is"):
            self.advance()
        if _word(self.peek(), "between"):
            return self.is_between(attribute, before)
        if _word(self.peek(), "equal", "equals"):
            self.advance()
            if _word(self.peek(), "to"):
                self.advance()
        elif _word(self.peek(), "greater", "less"):
            word = self.advance().normalized
            than = _word(self.peek(), "than")
            if than:
                self.advance()
            kind = _ORDERING[word, than]

        phrase = self.value_run(allow_attributes=False)
        if not phrase:
            self.fail("expected a value", self.peek())
        clause = ConditionClause(kind, attribute, (tuple(phrase),), before)
        if kind in (ConditionKind.EQUAL, ConditionKind.WITH):
            clause = self.extend_values(clause)
        return [clause]

    def is_between(self, attribute: Token | None, before: tuple[Token, ...]) -> list[ConditionClause]:
        rng = self.between()
        if rng.attribute is None:
            return [ConditionClause(rng.kind, attribute, rng.values, before)]
        if attribute is None:
            return [ConditionClause(rng.kind, rng.attribute, rng.values, before)]
        # "<value> <attribute> is between a to b <attribute>": the words ahead
        # of the first attribute are its value
        if not before:
            self.fail("attribute has no value", attribute)
        return [ConditionClause(ConditionKind.EQUAL, attribute, (before,)), rng]

    def between(self) -> ConditionClause:
        self.advance()  # "between"
        attribute = None
        if _valueish(self.peek()) and self.peek().attribute:
            attribute = self.advance()
        lo = self.bound()
        if not _word(self.peek(), "and", "to"):
            self.fail("expected 'and' or 'to' in range", self.peek())
        self.advance()
        hi = self.bound()
        if attribute is None and _valueish(self.peek()) and self.peek().attribute:
            attribute = self.advance()
        return ConditionClause(ConditionKind.BETWEEN, attribute, ((lo,), (hi,)))

    def bound(self) -> Token:
        tok = self.peek()
        if not _valueish(tok) or tok.attribute:
            self.fail("expected a range bound", tok)
        return self.advance()


def _strip_fillers(tokens: TokenStream | Sequence[Token]) -> list[Token]:
    return [t for t in tokens if not t.is_(TokenClass.FILLER)]


def _source(tokens) -> str:
    return tokens.source if isinstance(tokens, TokenStream) else ""


def _classify_conditions(clauses: Sequence[ConditionClause]) -> RuleId:
    kinds = {c.kind for c in clauses}
    has_between = ConditionKind.BETWEEN in kinds
    has_equality = bool(kinds - {ConditionKind.BETWEEN})
    if has_between and has_equality:
        return RuleId.CONDQBT
    if has_between:
        return RuleId.CONDBT
    if ConditionKind.WITH in kinds:
        return RuleId.CONDWEQ
    return RuleId.CONDEQ


def _shape_matches(shape: _Shape, rule: RuleId) -> bool:
    if not shape.objects:
        return False
    if shape.subject and not shape.verbs:
        return False
    if rule in (RuleId.CONDQBT, RuleId.CONDWEQ, RuleId.CONDBT, RuleId.CONDEQ):
        return bool(shape.clauses) and _classify_conditions(shape.clauses) is rule
    if shape.clauses:
        return False
    if rule is RuleId.STMT1:
        return bool(shape.subject) and bool(shape.verbs)
    if rule is RuleId.STMT2:
        return not shape.subject and bool(shape.verbs)
    if rule is RuleId.CSTMT:
        return not shape.subject and not shape.verbs
    return False


def _parse_shape(toks: list[Token], source: str) -> _Shape:
    return _Parser(toks, source).shape()


def match_rule(tokens: TokenStream | Sequence[Token], rule: RuleId) -> bool:
    """Whether the whole filler-stripped stream derives from ``rule``."""
    toks = _strip_fillers(tokens)
    if not toks:
        return False
    if rule is RuleId.ASTMT:
        return all(t.is_(TokenClass.SUBJECT) for t in toks)
    if rule is RuleId.BSTMT:
        return all(t.is_(TokenClass.VERB) for t in toks)
    try:
        shape = _parse_shape(toks, _source(tokens))
    except NoRuleMatched:
        return False
    return _shape_matches(shape, rule)


PRIORITY = (
    RuleId.CONDQBT, RuleId.CONDWEQ, RuleId.CONDBT, RuleId.CONDEQ,
    RuleId.STMT1, RuleId.STMT2, RuleId.CSTMT,
)

_KIND_OF = {
    RuleId.CSTMT: StatementKind.KEYWORD,
    RuleId.STMT2: StatementKind.SHORT_OBJECTIVE,
    RuleId.STMT1: StatementKind.SIMPLE_OBJECTIVE,
}


def parse(tokens: TokenStream | Sequence[Token]) -> Statement:
    toks = _strip_fillers(tokens)
    source = _source(tokens)
    if not toks:
        raise EmptyQuery("nothing to search for", (0, len(source)))
    shape = _parse_shape(toks, source)
    for rule in PRIORITY:
        if _shape_matches(shape, rule):
            return Statement(
                kind=_KIND_OF.get(rule, StatementKind.MULTI_CONDITION),
                matched_rule=rule,
                subject=tuple(shape.subject),
                verbs=tuple(shape.verbs),
                objects=tuple(shape.objects),
                conditions=tuple(shape.clauses),
            )
    span = (toks[0].span[0], toks[-1].span[1])
    if not shape.objects:
        raise NoRuleMatched("query names nothing to look for", span)
    raise NoRuleMatched("subject without a verb", span)

"""The closed word classes of the query language and word classification."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ConfigError, LexiconSyntaxError


class TokenClass(enum.Enum):
    DIGIT = "Digit"
    NUMBER = "Number"
    SUBJECT = "Subject"
    VERB = "Verb"
    OBJECT = "Object"
    BLANK = "Blank"
    CONDITION = "Condition"
    LITERAL = "Literal"
    FILLER = "Filler"

    def __repr__(self):
        return self.value


class ConditionKind(enum.Enum):
    BETWEEN = "Between"
    EQUAL = "Equal"
    GREATER = "Greater"
    LESS = "Less"
    GREATER_THAN = "GreaterThan"
    LESS_THAN = "LessThan"
    WITH = "With"

    def __repr__(self):
        return self.value


SUBJECT_WORDS = ("i", "we", "he", "she", "they", "you", "it")
VERB_WORDS = (
    "is", "am", "are", "need", "needs", "want", "wants", "look", "looks",
    "looking", "give", "search", "searching", "find", "show",
)
ENTITY_NOUNS = (
    "document", "documents", "project", "projects", "product", "products",
    "person", "persons", "design", "designs",
)
DOMAIN_NOUNS = ("pdm", "cad")
ATTRIBUTE_NOUNS = ("name", "type", "author", "date", "number", "title", "category")
CONDITION_WORDS = (
    "where", "between", "equal", "equals", "and", "with", "is", "to",
    "greater", "less", "than",
)
# generic nouns ("PDM systems", "car parts") narrow nothing, so they are skipped
FILLER_WORDS = ("for", "a", "an", "the", "of", "me", "details", "all", "any",
                "system", "systems", "part", "parts")

# word-list keys accepted in lexicon files
_FILE_CLASSES = {
    "subject": TokenClass.SUBJECT,
    "verb": TokenClass.VERB,
    "object": TokenClass.OBJECT,
    "attribute": TokenClass.OBJECT,
    "condition": TokenClass.CONDITION,
    "filler": TokenClass.FILLER,
}

_DIGITS = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Lexicon:
    """Case-folded dictionary from word to the set of classes it belongs to.

    Attribute nouns (``name``, ``type``...) classify as Object but are also
    listed in ``attributes`` so later stages can tell them from entity nouns.
    """

    entries: Mapping[str, frozenset[TokenClass]]
    attributes: frozenset[str] = field(default_factory=frozenset)

    def classify(self, word: str) -> frozenset[TokenClass]:
        return classify(self, word)

    def is_attribute(self, word: str) -> bool:
        return word.casefold() in self.attributes

    def words_of(self, cls: TokenClass) -> tuple[str, ...]:
        return tuple(sorted(w for w, classes in self.entries.items() if cls in classes))

    @property
    def subject_words(self):
        return self.words_of(TokenClass.SUBJECT)

    @property
    def verb_words(self):
        return self.words_of(TokenClass.VERB)

    @property
    def object_nouns(self):
        return tuple(w for w in self.words_of(TokenClass.OBJECT) if w not in self.attributes)

    @property
    def attribute_nouns(self):
        return tuple(sorted(self.attributes))

    @property
    def condition_words(self):
        return self.words_of(TokenClass.CONDITION)

    @property
    def filler_words(self):
        return self.words_of(TokenClass.FILLER)

    def extended(
        self,
        additions: Iterable[tuple[str, TokenClass]] = (),
        attributes: Iterable[str] = (),
    ) -> "Lexicon":
        """Return a new lexicon with extra words; class sets of existing words are merged."""
        entries = {w: set(c) for w, c in self.entries.items()}
        attrs = set(self.attributes)
        for word, cls in additions:
            entries.setdefault(word.casefold(), set()).add(cls)
        for word in attributes:
            word = word.casefold()
            entries.setdefault(word, set()).add(TokenClass.OBJECT)
            attrs.add(word)
        return _freeze(entries, attrs)


def _freeze(entries: dict[str, set[TokenClass]], attributes: set[str]) -> Lexicon:
    frozen = {w: frozenset(c) for w, c in entries.items()}
    return Lexicon(MappingProxyType(frozen), frozenset(attributes))


def classify(lexicon: Lexicon, word: str) -> frozenset[TokenClass]:
    """Classes of ``word``: digit strings are Number, unknown words are Literal."""
    if _DIGITS.fullmatch(word):
        return frozenset({TokenClass.NUMBER})
    found = lexicon.entries.get(word.casefold())
    if not found:
        return frozenset({TokenClass.LITERAL})
    return found


_BUILTIN: Lexicon | None = None


def builtin_lexicon() -> Lexicon:
    global _BUILTIN
    if _BUILTIN is None:
        entries: dict[str, set[TokenClass]] = {}

        def add(words, cls):
            for w in words:
                entries.setdefault(w, set()).add(cls)

        add(SUBJECT_WORDS, TokenClass.SUBJECT)
        add(VERB_WORDS, TokenClass.VERB)
        add(ENTITY_NOUNS, TokenClass.OBJECT)
        add(DOMAIN_NOUNS, TokenClass.OBJECT)
        add(ATTRIBUTE_NOUNS, TokenClass.OBJECT)
        add(CONDITION_WORDS, TokenClass.CONDITION)
        add(FILLER_WORDS, TokenClass.FILLER)
        _BUILTIN = _freeze(entries, set(ATTRIBUTE_NOUNS))
    return _BUILTIN


def load_lexicon(source: str) -> Lexicon:
    """Extend the builtin lexicon with word lists written as ``class: w1, w2``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    additions: list[tuple[str, TokenClass]] = []
    attributes: list[str] = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, rest = line.partition(":")
        if not sep:
            raise LexiconSyntaxError(f"expected '<class>: words', got {line!r}", lineno)
        name = name.strip().lower()
        if name not in _FILE_CLASSES:
            raise ConfigError(f"line {lineno}: unknown word class {name!r}")
        words = [w.strip() for w in rest.split(",")]
        for w in words:
            if not w or any(ch.isspace() for ch in w):
                raise LexiconSyntaxError(f"bad word {w!r} (words are single, non-empty)", lineno)
            if name == "attribute":
                attributes.append(w)
            else:
                additions.append((w, _FILE_CLASSES[name]))
    return builtin_lexicon().extended(additions, attributes)

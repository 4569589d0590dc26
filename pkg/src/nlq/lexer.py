"""Split query text into classified tokens."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import Lexicon, TokenClass, classify

PUNCTUATION = ".,;:?!\"'()"

_FRAGMENT = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    classes: frozenset[TokenClass]
    span: tuple[int, int]
    attribute: bool = False

    def is_(self, cls: TokenClass) -> bool:
        return cls in self.classes

    @property
    def is_value(self) -> bool:
        """True for tokens that can stand in an object or value slot."""
        c = self.classes
        return TokenClass.OBJECT in c or TokenClass.LITERAL in c or TokenClass.NUMBER in c

    def __repr__(self):
        classes = ",".join(sorted(c.value for c in self.classes))
        mark = "(attr)" if self.attribute else ""
        return f"{self.surface}:{{{classes}}}{mark}"


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    source: str

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]


def tokenize(text: str, lexicon: Lexicon) -> TokenStream:
    tokens = []
    for m in _FRAGMENT.finditer(text):
        fragment = m.group()
        stripped = fragment.strip(PUNCTUATION)
        if not stripped:
            continue
        normalized = stripped.casefold()
        tokens.append(Token(
            surface=fragment,
            normalized=normalized,
            classes=classify(lexicon, normalized),
            span=m.span(),
            attribute=lexicon.is_attribute(normalized),
        ))
    return TokenStream(tuple(tokens), text)

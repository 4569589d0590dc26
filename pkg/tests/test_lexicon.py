import pytest
from hypothesis import given, strategies as st

from nlq.errors import ConfigError, LexiconSyntaxError
from nlq.lexicon import TokenClass, builtin_lexicon, classify, load_lexicon

T = TokenClass


def test_builtin_examples():
    lex = builtin_lexicon()
    assert lex.classify("i") == {T.SUBJECT}
    assert lex.classify("is") == {T.VERB, T.CONDITION}
    assert lex.classify("between") == {T.CONDITION}


def test_classify_examples():
    lex = builtin_lexicon()
    assert classify(lex, "PDM") == {T.OBJECT}
    assert classify(lex, "123") == {T.NUMBER}
    assert classify(lex, "MotorEngine") == {T.LITERAL}
    assert classify(lex, "for") == {T.FILLER}


def test_attribute_nouns_are_objects():
    lex = builtin_lexicon()
    for noun in lex.attribute_nouns:
        assert T.OBJECT in lex.classify(noun)
        assert lex.is_attribute(noun.upper())


def test_load_lexicon_examples():
    assert load_lexicon("object: screw").classify("screw") == {T.OBJECT}
    assert load_lexicon("") == builtin_lexicon()
    assert load_lexicon("verb: fetch").classify("FETCH") == {T.VERB}


def test_load_lexicon_keeps_builtin_and_merges_classes():
    lex = load_lexicon("# extra words\ncondition: want\nattribute: colour, Weight\n")
    assert lex.classify("want") == {T.VERB, T.CONDITION}
    assert lex.classify("Colour") == {T.OBJECT}
    assert lex.is_attribute("weight")
    assert lex.classify("pdm") == {T.OBJECT}


def test_load_lexicon_malformed_line_names_line():
    with pytest.raises(LexiconSyntaxError) as info:
        load_lexicon("object: screw\nthis line has no colon\n")
    assert info.value.line == 2
    assert "2" in str(info.value)


def test_load_lexicon_unknown_class():
    with pytest.raises(ConfigError):
        load_lexicon("adverb: quickly")


ALL_WORDS = sorted({w for ws in builtin_lexicon().entries for w in [ws]})


@given(st.one_of(st.sampled_from(ALL_WORDS), st.text(min_size=1, max_size=12)))
def test_classification_is_case_insensitive(word):
    lex = builtin_lexicon()
    assert classify(lex, word) == classify(lex, word.upper()) == classify(lex, word.lower())


@given(st.text(max_size=12))
def test_classify_is_total(word):
    assert builtin_lexicon().classify(word)


# every dictionary word of the golden queries is known; only data values fall through
GOLDEN_WORDS = """
pdm cad documents want need i am looking for he is where document type and with she
give design between number name project a date details equal to author equals
me of systems parts designs
""".split()
DATA_VALUES = {"car", "motorengine", "bmp", "pdmdatabase", "michael", "screw", "doc", "pdf", "desing"}


def test_golden_vocabulary_is_known():
    lex = builtin_lexicon()
    for word in GOLDEN_WORDS:
        assert T.LITERAL not in lex.classify(word), word
    for word in DATA_VALUES:
        assert lex.classify(word) == {T.LITERAL}, word

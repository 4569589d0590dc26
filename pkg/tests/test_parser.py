import pytest
from hypothesis import given, settings, strategies as st

from nlq.errors import EmptyQuery, NoRuleMatched
from nlq.lexer import tokenize
from nlq.lexicon import ConditionKind, builtin_lexicon
from nlq.parser import RuleId, StatementKind, match_rule, parse

from golden import GOLDEN

LEX = builtin_lexicon()
K = ConditionKind


def p(text):
    return parse(tokenize(text, LEX))


def words(tokens):
    return [t.normalized for t in tokens]


@pytest.mark.parametrize("query,kind,rule", GOLDEN)
def test_golden_table(query, kind, rule):
    stmt = p(query)
    assert (stmt.kind.value, stmt.matched_rule.value) == (kind, rule)


def test_keyword():
    stmt = p("PDM")
    assert stmt.kind is StatementKind.KEYWORD
    assert words(stmt.objects) == ["pdm"]
    assert not stmt.subject and not stmt.verbs and not stmt.conditions


def test_short_objective():
    assert p("want PDM").matched_rule is RuleId.STMT2


def test_simple_objective_parts():
    stmt = p("I am looking for CAD document")
    assert stmt.matched_rule is RuleId.STMT1
    assert words(stmt.subject) == ["i"]
    assert words(stmt.verbs) == ["am", "looking"]
    assert words(stmt.objects) == ["cad", "document"]


def test_where_equal():
    stmt = p("I am looking for PDM where Document Type is doc")
    assert stmt.matched_rule is RuleId.CONDEQ
    assert [c.key() for c in stmt.conditions] == [(K.EQUAL, "type", ("doc",), ("document",))]


def test_between():
    stmt = p("I am looking for CAD Design between Number 100 and 200")
    assert stmt.matched_rule is RuleId.CONDBT
    (c,) = stmt.conditions
    assert (c.kind, c.attribute_name, c.value_texts()) == (K.BETWEEN, "number", ("100", "200"))


def test_and_extends_values():
    (c,) = p("I need PDF with Document Type doc and pdf").conditions
    assert (c.kind, c.attribute_name, c.value_texts()) == (K.WITH, "type", ("doc", "pdf"))


def test_and_before_attribute_starts_new_clause():
    cs = p("I need CAD with name MotorEngine and type BMP").conditions
    assert [(c.attribute_name, c.value_texts()) for c in cs] == [
        ("name", ("motorengine",)), ("type", ("bmp",))]


def test_and_between_entities_extends_objects():
    assert words(p("I need Product and Project Document").objects) == ["product", "project", "document"]


def test_stray_word_in_with_clause_is_qualifier():
    (c,) = p("I want Project with PDM name PDMDatabase").conditions
    assert c.key() == (K.WITH, "name", ("pdmdatabase",), ("pdm",))


def test_is_between_splits_value_and_range():
    cs = p("looking for a Project where PDMDatabase name is between 2000 to 2009 Date").conditions
    assert [c.key() for c in cs] == [
        (K.EQUAL, "name", ("pdmdatabase",), ()),
        (K.BETWEEN, "date", ("2000", "2009"), ()),
    ]


def test_date_range():
    (c,) = p("We are looking for Project details between Date 01-09-08 and 01-09-09").conditions
    assert (c.attribute_name, c.value_texts()) == ("date", ("01-09-08", "01-09-09"))


@pytest.mark.parametrize("text,kind", [
    ("documents where number greater 5", K.GREATER),
    ("documents where number greater than 5", K.GREATER_THAN),
    ("documents where number is less 5", K.LESS),
    ("documents where number is less than 5", K.LESS_THAN),
])
def test_ordering_comparisons(text, kind):
    (c,) = p(text).conditions
    assert (c.kind, c.attribute_name, c.value_texts()) == (kind, "number", ("5",))
    assert p(text).matched_rule is RuleId.CONDEQ


def test_attributeless_equal():
    (c,) = p("I am looking for CAD where document equals to Screw").conditions
    assert c.key() == (K.EQUAL, None, ("screw",), ("document",))


@pytest.mark.parametrize("text,rule,expected", [
    ("I", RuleId.ASTMT, True),
    ("we", RuleId.ASTMT, True),
    ("want", RuleId.BSTMT, True),
    ("give CAD design", RuleId.STMT2, True),
    ("give CAD desing", RuleId.STMT2, True),
    ("I want Project with PDM name PDMDatabase", RuleId.CONDWEQ, True),
    ("I want Project with PDM name PDMDatabase", RuleId.CONDEQ, False),
    ("PDM", RuleId.CSTMT, True),
    ("PDM", RuleId.STMT1, False),
    ("I PDM", RuleId.CSTMT, False),
    ("", RuleId.ASTMT, False),
])
def test_match_rule(text, rule, expected):
    assert match_rule(tokenize(text, LEX), rule) is expected


def test_empty_query():
    for text in ("", "   ", "the of a", "?!"):
        with pytest.raises(EmptyQuery):
            p(text)


@pytest.mark.parametrize("text", ["I", "I want", "I PDM", "PDM where", "PDM between 1",
                                  "documents where number greater"])
def test_no_rule_matched(text):
    with pytest.raises(NoRuleMatched) as info:
        p(text)
    assert info.value.span is not None


# grammar-driven statement generator --------------------------------------

subjects = st.lists(st.sampled_from(["i", "we", "he", "she", "they"]), max_size=1)
verbs = st.lists(st.sampled_from(["am", "need", "want", "looking", "give", "find"]), max_size=2)
nouns = st.sampled_from(["pdm", "cad", "document", "project", "design", "products", "gearbox", "pdf"])
values = st.sampled_from(["doc", "pdf", "michael", "screw", "bmp", "xls"])
numbers = st.integers(0, 9999).map(str)
attributes = st.sampled_from(["name", "type", "author", "date", "number", "title", "category"])


@st.composite
def clause(draw):
    form = draw(st.sampled_from(["where", "with", "between", "greater", "less"]))
    attr = draw(attributes)
    if form == "between":
        return f"between {attr} {draw(numbers)} {draw(st.sampled_from(['and', 'to']))} {draw(numbers)}"
    if form in ("greater", "less"):
        than = draw(st.sampled_from(["", " than"]))
        return f"where {attr} is {form}{than} {draw(numbers)}"
    vals = " and ".join(draw(st.lists(values, min_size=1, max_size=3)))
    if form == "with":
        return f"with {attr} {vals}"
    comparator = draw(st.sampled_from(["is", "equal to", "equals", "is equal to"]))
    return f"where {attr} {comparator} {vals}"


@st.composite
def statement_text(draw):
    head = draw(subjects)
    vs = draw(verbs)
    if head and not vs:
        vs = ["need"]
    objs = draw(st.lists(nouns, min_size=1, max_size=3))
    clauses = draw(st.lists(clause(), max_size=3))
    return " ".join([*head, *vs, *objs, *clauses])


def check_kind_invariants(stmt):
    if stmt.kind is StatementKind.KEYWORD:
        assert not stmt.subject and not stmt.verbs and not stmt.conditions and stmt.objects
    if stmt.kind is StatementKind.SHORT_OBJECTIVE:
        assert stmt.verbs and not stmt.subject
    if stmt.kind is StatementKind.SIMPLE_OBJECTIVE:
        assert stmt.subject and stmt.verbs and not stmt.conditions
    if stmt.kind is StatementKind.MULTI_CONDITION:
        assert stmt.conditions
    for c in stmt.conditions:
        if c.kind is K.BETWEEN:
            assert len(c.values) == 2
        assert len(c.values) >= 1


@given(statement_text())
@settings(max_examples=300)
def test_generated_statements_parse(text):
    stmt = p(text)
    check_kind_invariants(stmt)
    assert match_rule(tokenize(text, LEX), stmt.matched_rule)


@given(statement_text())
@settings(max_examples=300)
def test_regenerated_statement_reparses_identically(text):
    stmt = p(text)
    again = p(stmt.to_text())
    assert again.kind == stmt.kind
    assert again.matched_rule == stmt.matched_rule
    assert [c.key() for c in again.conditions] == [c.key() for c in stmt.conditions]


@given(statement_text())
def test_parse_is_deterministic(text):
    tokens = tokenize(text, LEX)
    assert parse(tokens) == parse(tokens)


vocab = sorted(LEX.entries) + ["doc", "42", "01-09-08", "x"]


@given(st.lists(st.sampled_from(vocab), max_size=10))
@settings(max_examples=500)
def test_random_streams_parse_or_diagnose(ws):
    try:
        stmt = p(" ".join(ws))
    except (EmptyQuery, NoRuleMatched) as exc:
        assert exc.message
        return
    check_kind_invariants(stmt)
    again = p(stmt.to_text())
    assert (again.kind, again.matched_rule) == (stmt.kind, stmt.matched_rule)
    assert [c.key() for c in again.conditions] == [c.key() for c in stmt.conditions]

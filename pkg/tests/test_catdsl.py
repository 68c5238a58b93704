"""Tests for the category definition language."""

import itertools
import random

import pytest

from tests.conftest import FIXTURES_DIR
from newsdesk_mcp.core.catdsl import (
    CategoryMatcher,
    classify_all,
    evaluate,
    format_definition,
    load_categories,
    load_definition,
    match_category,
    match_term,
    parse_definition,
    parse_expression,
)
from newsdesk_mcp.core.catdsl.matcher import pattern_words
from newsdesk_mcp.core.text import words
from newsdesk_mcp.errors import DefinitionError, DefinitionSyntaxError
from newsdesk_mcp.models.category import AndNode, DefinitionMode, NearNode, NotNode, OrNode, Term, TermNode


def matched(source: str, text: str) -> bool:
    definition = parse_definition(source)
    return CategoryMatcher([definition]).match(definition, words(text)).matched


class TestTerms:
    @pytest.mark.parametrize(
        "token", ["tuberculosis", "tuberculose", "tuberkulose", "Tuberkulose", "tuberculeux", "Tuberculosis"]
    )
    def test_single_char_wildcard(self, token):
        assert match_term(Term(pattern="tuber_ul%"), [token]) == [0]

    def test_wildcard_needs_whole_token(self):
        assert match_term(Term(pattern="tuber_ul%"), ["tuber"]) == []
        assert match_term(Term(pattern="tuber_ul%"), ["tubercle"]) == []
        assert match_term(Term(pattern="quake"), ["earthquake"]) == []

    def test_upper_case_matches_only_upper_case(self):
        assert match_term(Term(pattern="AIDS"), ["AIDS"]) == [0]
        assert match_term(Term(pattern="AIDS"), ["aids"]) == []
        assert match_term(Term(pattern="AIDS"), ["Aids"]) == []

    def test_lower_case_matches_any_case(self):
        tokens = ["aids", "AIDS", "Aids"]
        assert match_term(Term(pattern="aids"), tokens) == [0, 1, 2]
        assert match_term(Term(pattern="séisme%"), ["Séismes"]) == [0]

    def test_phrase_offsets(self):
        assert match_term(Term(pattern="bird flu"), words("the bird flu and bird song and bird flu")) == [1, 7]

    def test_pattern_words_follow_tokenizer(self):
        assert pattern_words("Etats-Unis") == ["Etats", "Unis"]
        assert pattern_words("tuber_ul%") == ["tuber_ul%"]

    def test_adjacent_wildcards_rejected(self):
        with pytest.raises(ValueError):
            Term(pattern="tuber%%")


class TestBoolean:
    def test_parse_tree(self):
        node = parse_expression('earthquake% AND (Italy OR Italia) AND NOT drill')
        assert isinstance(node, AndNode)
        assert isinstance(node.children[1], OrNode)
        assert isinstance(node.children[2], NotNode)

    def test_precedence(self):
        node = parse_expression("a OR b AND c")
        assert isinstance(node, OrNode)
        assert isinstance(node.children[1], AndNode)

    def test_and_not(self):
        source = "earthquake% AND (Italy OR Italia) AND NOT drill"
        assert matched(source, "An earthquake struck Italy")
        assert matched(source, "Earthquakes in Italia")
        assert not matched(source, "An earthquake drill in Italy")
        assert not matched(source, "An earthquake struck Chile")

    def test_near_window(self):
        text = "virus one two three flu"
        assert not matched("NEAR/3(virus, flu)", text)
        assert matched("NEAR/4(virus, flu)", text)
        assert matched("NEAR/4(flu, virus)", text)

    def test_near_same_term_needs_two_occurrences(self):
        assert not matched("NEAR/3(flood%, flood%)", "the flood receded")
        assert matched("NEAR/3(flood%, flood%)", "flood after flooding")
        assert not matched("NEAR/3(flood%, flood%)", "flood one two three four flooding")

    def test_near_with_phrase(self):
        node = parse_expression('NEAR/5(virus, "bird flu")')
        assert isinstance(node, NearNode)
        assert node.right.pattern == "bird flu"
        assert matched('NEAR/5(virus, "bird flu")', "the virus that causes bird flu")

    def test_negation_alone_never_matches(self):
        assert not matched("NOT drill", "nothing relevant here")

    def test_matched_terms_have_offsets(self):
        definition = parse_definition("quake% OR flood%")
        result = CategoryMatcher([definition]).match(definition, words("flood after the quake"))
        assert [(h.term, h.offset) for h in result.matched_terms] == [("flood%", 0), ("quake%", 3)]


def _random_expression(rng: random.Random, depth: int):
    """(source, truth, witness) of a random expression over four words."""
    vocabulary = ["alpha", "beta", "gamma", "delta"]
    if depth == 0 or rng.random() < 0.3:
        word = rng.choice(vocabulary)
        return word, (lambda present, w=word: w in present), (lambda present, w=word: w in present)
    kind = rng.choice(["and", "or", "not"])
    if kind == "not":
        src, truth, _ = _random_expression(rng, depth - 1)
        return f"NOT ({src})", (lambda present: not truth(present)), (lambda present: False)
    left = _random_expression(rng, depth - 1)
    right = _random_expression(rng, depth - 1)
    if kind == "and":
        def truth(present):
            return left[1](present) and right[1](present)

        def witness(present):
            return truth(present) and (left[2](present) or right[2](present))

        return f"({left[0]} AND {right[0]})", truth, witness

    def truth(present):
        return left[1](present) or right[1](present)

    def witness(present):
        return (left[1](present) and left[2](present)) or (right[1](present) and right[2](present))

    return f"({left[0]} OR {right[0]})", truth, witness


class TestTruthTableOracle:
    def test_random_expressions(self):
        rng = random.Random(7)
        vocabulary = ["alpha", "beta", "gamma", "delta"]
        subsets = [set(c) for n in range(5) for c in itertools.combinations(vocabulary, n)]
        for _ in range(60):
            source, truth, witness = _random_expression(rng, 3)
            definition = parse_definition(source)
            matcher = CategoryMatcher([definition])
            for present in subsets:
                tokens = ["filler", *sorted(present), "filler"]
                expected = truth(present) and witness(present)
                assert matcher.match(definition, tokens).matched == expected, (source, present)


class TestWeighted:
    SOURCE = "label: Outbreak\nthreshold: 3\noutbreak 2\n\"health authorities\" 1\ncholera 2\ndrill -2\n"

    def test_parse(self):
        definition = parse_definition(self.SOURCE, category_id="outbreak")
        assert definition.mode == DefinitionMode.WEIGHTED
        assert definition.threshold == 3.0
        assert [t.pattern for t in definition.terms] == ["outbreak", "health authorities", "cholera", "drill"]

    def test_threshold(self):
        definition = parse_definition(self.SOURCE)
        matcher = CategoryMatcher([definition])
        hit = matcher.match(definition, words("Health authorities report a cholera outbreak"))
        assert hit.matched and hit.score == 5.0
        miss = matcher.match(definition, words("A cholera outbreak drill"))
        assert not miss.matched and miss.score == 2.0

    def test_each_term_counts_once(self):
        definition = parse_definition(self.SOURCE)
        result = evaluate(definition, {"outbreak": [0, 4, 9]})
        assert result.score == 2.0 and not result.matched


class TestSyntaxErrors:
    def test_empty_definition(self):
        with pytest.raises(DefinitionSyntaxError):
            parse_definition("   \n")

    def test_near_window_must_be_positive(self):
        with pytest.raises(DefinitionSyntaxError) as info:
            parse_definition("label: X\n\nNEAR/0(virus, flu)")
        assert info.value.line == 3
        assert info.value.column == 1

    def test_adjacent_wildcards(self):
        with pytest.raises(DefinitionSyntaxError, match="adjacent"):
            parse_definition("tuber%%")

    def test_unbalanced_parenthesis(self):
        with pytest.raises(DefinitionSyntaxError):
            parse_definition("earthquake AND (Italy OR")

    def test_weighted_line_position(self):
        with pytest.raises(DefinitionSyntaxError) as info:
            parse_definition("threshold: 3\nfever 2\nnot a weighted line\n")
        assert info.value.line == 3

    def test_bad_threshold(self):
        with pytest.raises(DefinitionSyntaxError, match="threshold"):
            parse_definition("threshold: lots\nfever 2\n")

    def test_file_error_names_file_once(self, tmp_path):
        path = tmp_path / "broken.cat"
        path.write_text("label: Broken\nNEAR/0(a, b)\n", encoding="utf-8")
        with pytest.raises(DefinitionSyntaxError) as info:
            load_definition(path)
        message = str(info.value)
        assert message.startswith("broken.cat:")
        assert message.count("(line") == 1
        assert info.value.line == 2

    def test_unknown_country(self, tmp_path):
        path = tmp_path / "atlantis.cat"
        path.write_text("country: QQ\nAtlantis\n", encoding="utf-8")
        with pytest.raises(DefinitionError, match="QQ"):
            load_definition(path)


class TestArticles:
    def test_match_category_reports_terms(self, make_article):
        definition = parse_definition("label: Quake\nquake% OR séisme%", category_id="quake")
        result = match_category(definition, make_article(title="Quake hits", body="Another séisme followed"))
        assert result.matched
        assert [(h.term, h.offset) for h in result.matched_terms] == [("quake%", 0), ("séisme%", 3)]

    def test_classify_all(self, make_article):
        article = make_article(body="Un fort séisme a frappé l'Italie", language="fr")
        assert {"earthquake", "italy"} <= classify_all(load_categories(), article)
        assert classify_all([], article) == set()


class TestShippedCategories:
    def test_load(self):
        definitions = load_categories()
        ids = [d.category_id for d in definitions]
        assert ids == sorted(ids)
        assert {"earthquake", "tuberculosis", "aids", "italy", "turkey"} <= set(ids)
        countries = {d.country for d in definitions if d.country}
        assert {"IT", "TR", "BR", "KE", "MX", "AU", "KR", "PL"} <= countries
        assert any(d.mode == DefinitionMode.WEIGHTED for d in definitions)

    def test_format_reparses_to_same_definition(self):
        for definition in load_categories():
            again = parse_definition(format_definition(definition), category_id=definition.category_id)
            assert again == definition

    def test_multilingual_matching(self):
        definitions = {d.category_id: d for d in load_categories()}
        matcher = CategoryMatcher(definitions.values())
        assert {"earthquake", "italy"} <= matcher.classify(words("Un fort séisme a frappé l'Italie"))
        assert {"tuberculosis", "kenya"} <= matcher.classify(words("Tuberculosis outbreak in Nairobi schools"))
        assert "aids" not in matcher.classify(words("The new law aids farmers"))
        assert "aids" in matcher.classify(words("AIDS clinics reopen"))

    def test_automaton_agrees_with_plain_matching(self):
        definitions = load_categories()
        matcher = CategoryMatcher(definitions)
        texts = [
            "Flash floods swept through the Turkish city of Izmir on Monday",
            "Des crues soudaines ont balayé lundi la ville turque d'Izmir",
            "Thousands of shipyard workers walked off the job in Busan, saying the strike would go on",
            "Le dirigeant syndical a déclaré que la grève durera; les ouvriers attendent",
        ]
        for text in texts:
            tokens = words(text)
            offsets = matcher.term_offsets(tokens)
            for definition in definitions:
                for term in definition.all_terms():
                    assert offsets.get(term.pattern, []) == match_term(term, tokens), term.pattern

    def test_node_types_are_exported(self):
        node = parse_expression("quake")
        assert isinstance(node, TermNode)


class TestCustomDirectory:
    def test_load_fixture_directory(self):
        definitions = load_categories(FIXTURES_DIR / "categories")
        assert [d.category_id for d in definitions] == ["drought", "volcano"]
        assert definitions[0].mode == DefinitionMode.WEIGHTED
        assert definitions[1].country == "CL"
        matcher = CategoryMatcher(definitions)
        assert matcher.classify(words("Une éruption volcanique")) == {"volcano"}
        assert matcher.classify(words("Drought and water shortage, no rain")) == {"drought"}

    def test_missing_directory(self, tmp_path):
        with pytest.raises(DefinitionError, match="not found"):
            load_categories(tmp_path / "nothing")

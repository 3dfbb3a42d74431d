import pytest

from core.errors import LexiconError
from core.lexicon import (COMMON_NOUN, DEFINITE, NO_ARTICLE, UNCOUNTABLE, EnglishGloss, analyze_compound,
                          load_lexicon, lookup, segment)


def test_lookup(lex):
    [mizu] = lookup(lex, "mizu")
    assert mizu.pos == COMMON_NOUN
    assert mizu.categories == ("liquid",)
    assert mizu.senses[0].gloss.lemma == "water"
    assert mizu.senses[0].gloss.countability == UNCOUNTABLE

    assert lookup(lex, "zzz-unknown") == []

    [gakko] = lookup(lex, "gakkō")
    assert gakko.categories == ("organization", "location")


def test_lookup_keeps_file_order_across_parts_of_speech(lex):
    assert [entry.pos for entry in lookup(lex, "furui")] == ["common-noun", "adjective"]
    assert lex.conjugation_class("furui") == "i-adjective"
    assert lex.conjugation_class("mizu") is None


def test_compound_with_ministry_head(lex, ont):
    compound = analyze_compound(lex, ont, "kensetsushō")
    assert compound.modifier.surface == "kensetsu"
    assert compound.head.surface == "shō"
    assert compound.relation == "ministry"
    assert compound.gloss.lemma == "Ministry of Construction"
    assert compound.gloss.article_policy == DEFINITE


def test_compound_default_and_route_templates(lex, ont):
    jazz = analyze_compound(lex, ont, "modan-jazu")
    assert (jazz.modifier.surface, jazz.head.surface) == ("modan", "jazu")
    assert jazz.gloss.lemma == "modern jazz"
    assert jazz.relation == "modifier-head"

    river = analyze_compound(lex, ont, "kawa-zoi")
    assert river.gloss.lemma == "along the river"
    assert river.gloss.article_policy == NO_ARTICLE
    assert river.senses[0].categories == ("route",)


def test_compound_without_split(lex, ont):
    assert analyze_compound(lex, ont, "zzzz") is None
    assert analyze_compound(lex, ont, "mizuzzz") is None


def test_compound_parts_always_resolve(lex, ont):
    for surface in ("kensetsushō", "modan-jazu", "kawa-zoi", "hitoshō", "mizu-zoi"):
        compound = analyze_compound(lex, ont, surface)
        assert lookup(lex, compound.head.surface)
        assert lookup(lex, compound.modifier.surface)


@pytest.mark.parametrize("token, expected", [
    ("mizu-o", ("mizu", ["o"])),
    ("kawa-zoi-ni", ("kawa-zoi", ["ni"])),
    ("kare", ("kare", [])),
    ("ōkami-no", ("ōkami", ["no"])),
    ("gakkō-kara-made", ("gakkō", ["kara", "made"])),
])
def test_segment(lex, token, expected):
    assert segment(lex, token) == expected


def test_gloss_validation():
    with pytest.raises(ValueError):
        EnglishGloss("water", countability="uncountable", irregular_plural="waters")
    with pytest.raises(ValueError):
        EnglishGloss("water", article_policy="some")
    with pytest.raises(ValueError):
        EnglishGloss("")


def load(ont, *lines):
    return load_lexicon("\n".join(lines) + "\n", ont)


def test_load_minimal(ont):
    lex = load(ont, "mizu\tcommon-noun\t-\tliquid|water|uncountable|indefinite",
               "kakeru\tverb\tichidan\t-")
    assert len(lex) == 2
    assert lex.deinflect("kaketa")[0][0] == "kakeru"


@pytest.mark.parametrize("line, fragment", [
    ("x\tcommon-noun\t-\tno-such-category|x|countable|indefinite", "unknown category no-such-category"),
    ("x\tcommon-noun\t-\thuman,kin,agent,animal,beast,wolf|x|countable|indefinite", "exceed the ceiling of 5"),
    ("x\tcommon-noun\t-\tliquid|x|uncountable|indefinite|xs", "irregular plural"),
    ("x\tverb\t-\t-", "conjugation class"),
    ("kakeru\tverb\tgodan-k\t-", "does not end in"),
    ("x\tnoun\t-\tliquid|x|countable|indefinite", "unknown part of speech"),
    ("x\tcommon-noun\t-\t-", "no senses"),
    ("x\tcommon-noun\tichidan\tliquid|x|countable|indefinite", "cannot have conjugation class"),
    ("x\tcommon-noun\t-", "expected 4 fields"),
])
def test_load_errors(ont, line, fragment):
    with pytest.raises(LexiconError) as info:
        load(ont, line)
    assert fragment in str(info.value)
    assert info.value.line == 1


def test_proper_noun_ceiling_is_ten(ont):
    load(ont, "x\tproper-noun\t-\tproper-person,proper-place,proper-country,proper-organization|X|countable|none")


def test_load_collects_every_error(ont):
    with pytest.raises(LexiconError) as info:
        load(ont,
             "mizu\tcommon-noun\t-\tliquid|water|uncountable|indefinite",
             "mizu\tcommon-noun\t-\tliquid|water|uncountable|indefinite",
             "y\tcommon-noun\t-\tzzz|y|countable|indefinite")
    errors = info.value.errors
    assert [error.line for error in errors] == [2, 3]
    assert errors[0].ident == "mizu"
    assert "duplicate" in errors[0].message

import pytest

from core.analyzer import (CONTRASTIVE, HABITUAL, NO_CONNECTIVE, NONPAST, PAST, SEQUENTIAL, deinflect,
                           parse_sentence, tokenize)
from core.errors import AnalysisError
from core.morphology import PASSIVE, PROGRESSIVE, inflect

RIVER = "kare-wa basu-ni notte gakkō-e itta ga, watashi-wa kawa-ni sotte aruite gakkō-e itta."


def test_deinflect(lex):
    [(lemma, features)] = deinflect(lex, "kaketa")
    assert (lemma, features.tense) == ("kakeru", PAST)

    [(lemma, features)] = deinflect(lex, "osowareta")
    assert (lemma, features.voice, features.tense) == ("osou", PASSIVE, PAST)

    [(lemma, features)] = deinflect(lex, "kaketeiru")
    assert (lemma, features.aspect, features.tense) == ("kakeru", PROGRESSIVE, NONPAST)

    [(lemma, features)] = deinflect(lex, "notte")
    assert (lemma, features.connective_to_next) == ("noru", SEQUENTIAL)

    assert deinflect(lex, "zzz") == []


def test_single_clause(lex, ont):
    [clause] = parse_sentence(lex, ont, "kanojo-wa hana-ni mizu-o kaketa.")
    assert clause.predicate == "kakeru"
    assert clause.topic.phrase.head == "kanojo"
    assert [(a.particle, a.phrase.head) for a in clause.arguments] == [("ni", "hana"), ("o", "mizu")]
    assert clause.subjective.tense == PAST
    assert clause.subjective.connective_to_next == NO_CONNECTIVE


def test_objective_content_is_unmarked(lex, ont):
    for sentence in ("kanojo-wa hana-ni mizu-o kaketa.", "kare-wa isu-ni koshi-o kaketeiru.",
                     "ushi-no mure-ga hachi-no mure-ni osowareta."):
        [clause] = parse_sentence(lex, ont, sentence)
        assert clause.predicate in lex
        assert inflect(clause.predicate, clause.conjugation_class, clause.subjective.to_form()) == clause.surface


def test_clause_chain(lex, ont):
    clauses = parse_sentence(lex, ont, RIVER)
    assert [c.predicate for c in clauses] == ["noru", "iku", "sou", "aruku", "iku"]
    assert [c.subjective.connective_to_next for c in clauses] == [
        SEQUENTIAL, CONTRASTIVE, SEQUENTIAL, SEQUENTIAL, NO_CONNECTIVE]
    # te-clauses take the tense of the chain-final verb
    assert all(c.subjective.tense == PAST for c in clauses)

    assert clauses[0].topic.phrase.head == "kare" and not clauses[0].topic.inherited
    assert clauses[1].topic.phrase.head == "kare" and clauses[1].topic.inherited
    assert clauses[2].topic.phrase.head == "watashi"
    assert clauses[4].topic.inherited


def test_genitive_modifiers(lex, ont):
    [clause] = parse_sentence(lex, ont, "ōkami-no mure-ga hitsuji-no mure-o otta.")
    assert clause.predicate == "ou"
    subject, obj = clause.arguments
    assert (subject.particle, subject.phrase.head, subject.phrase.modifier.head) == ("ga", "mure", "ōkami")
    assert (obj.particle, obj.phrase.head, obj.phrase.modifier.head) == ("o", "mure", "hitsuji")
    assert clause.topic is None


def test_compounds_and_determiners(lex, ont):
    [clause] = parse_sentence(lex, ont, "ano kissaten-wa modan-jazu-o kaketeiru.")
    assert clause.topic.phrase.determiner.surface == "ano"
    jazz = clause.argument("o").phrase
    assert jazz.compound is not None
    assert jazz.senses[0].gloss.lemma == "modern jazz"


def test_habitual_reading(lex, ont):
    sentence = "kanojo-wa mainichi rōka-ni zōkin-o kaketeiru."
    [clause] = parse_sentence(lex, ont, sentence)
    assert clause.subjective.aspect == HABITUAL
    assert [adverb.gloss for adverb in clause.adverbs] == ["every day"]

    [plain] = parse_sentence(lex, ont, sentence, habitual_category=None)
    assert plain.subjective.aspect == PROGRESSIVE


def test_tokenize():
    assert tokenize("  kare-wa itta. ") == ["kare-wa", "itta"]
    with pytest.raises(AnalysisError):
        tokenize("kare-wa itta")
    with pytest.raises(AnalysisError):
        tokenize(".")


@pytest.mark.parametrize("sentence, fragment, position", [
    ("zzz-o kaketa.", "unknown word 'zzz'", 0),
    ("kanojo-wa hana-ni mizu-o.", "no predicate", 2),
    ("kanojo-wa basu-ni notte.", "inside a clause chain", 2),
    ("kaketa kanojo-wa kaketa.", "finite predicate", 0),
    ("kanojo-wa kare-wa kaketa.", "second topic", 1),
    ("ga, kaketa.", "contrastive", 0),
    ("kanojo-wa zzz kaketa.", "unknown word", 1),
])
def test_analysis_errors(lex, ont, sentence, fragment, position):
    with pytest.raises(AnalysisError) as info:
        parse_sentence(lex, ont, sentence)
    assert fragment in str(info.value)
    assert info.value.position == position

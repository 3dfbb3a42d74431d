import pytest

from core.analyzer import HABITUAL, PAS, PAST, PROGRESSIVE, SubjectiveFeatures, parse_sentence
from core.errors import TransferError
from core.generator import PAST as EN_PAST, PRESENT, VerbPlan, realize_sentence
from core.morphology import NEGATIVE, PASSIVE
from core.patterns import GENERAL, IDIOMATIC, VALENCY, match_patterns, select_pattern
from core.trace import Trace
from core.transfer import DiscourseContext, fill_ellipsis, map_subjective, transfer_clause


def transfer(dicts, sentence, ctx=None, trace=None, pd=None):
    ctx = ctx if ctx is not None else DiscourseContext()
    specs = [transfer_clause(clause, pd or dicts.patterns, dicts.ontology, dicts.lexicon, ctx, trace)
             for clause in parse_sentence(dicts.lexicon, dicts.ontology, sentence)]
    return specs


def english(dicts, sentence, **kwargs):
    return realize_sentence(transfer(dicts, sentence, **kwargs))


def test_map_subjective():
    assert map_subjective(SubjectiveFeatures()) == VerbPlan(PRESENT)
    features = SubjectiveFeatures(tense=PAST, aspect=PROGRESSIVE, voice=PASSIVE, polarity=NEGATIVE)
    assert map_subjective(features) == VerbPlan(EN_PAST, progressive=True, passive=True, negative=True)
    # habitual actions read as the English simple present
    assert map_subjective(SubjectiveFeatures(aspect=HABITUAL)) == VerbPlan(PRESENT)


@pytest.mark.parametrize("sentence, expected, level", [
    ("kanojo-wa hana-ni mizu-o kaketa.", "She poured water on a flower.", VALENCY),
    ("watashi-wa karera-ni meiwaku-o kaketa.", "I caused them trouble.", IDIOMATIC),
    ("kare-wa isu-ni koshi-o kaketeiru.", "He is sitting down on a chair.", IDIOMATIC),
    ("kanojo-wa mainichi rōka-ni zōkin-o kaketeiru.", "She mops up the corridor every day.", IDIOMATIC),
    ("kanojo-wa hon-o kaketa.", "She hung a book.", GENERAL),
    ("kare-wa gakkō-e itta.", "He went to school.", VALENCY),
])
def test_transfer_clause(dicts, sentence, expected, level):
    [spec] = transfer(dicts, sentence)
    assert spec.level == level
    assert realize_sentence([spec]) == expected


def test_passive_agent_becomes_by_phrase(dicts):
    [spec] = transfer(dicts, "ushi-no mure-ga hachi-no mure-ni osowareta.")
    assert spec.pattern_id == "os-attack"
    assert spec.subject_text == "a herd of cattle"
    assert spec.preps == ("by a swarm of bees",)
    assert realize_sentence([spec]) == "A herd of cattle was attacked by a swarm of bees."


def test_noun_patterns_are_traced(dicts):
    trace = Trace()
    transfer(dicts, "ōkami-no mure-ga hitsuji-no mure-o otta.", trace=trace)
    scopes = [(event["scope"], event["pattern"]) for event in trace.of_stage("pattern")]
    assert ("noun", "mr-pack") in scopes
    assert ("noun", "mr-flock-sheep") in scopes
    assert ("clause", "ou-chase") in scopes
    assert trace.level_counts() == {IDIOMATIC: 0, VALENCY: 0, GENERAL: 1}


def test_ellipsis_from_context(dicts):
    ctx = DiscourseContext()
    trace = Trace()
    assert english(dicts, "kare-wa gakkō-e itta.", ctx=ctx, trace=trace) == "He went to school."
    assert ctx.last_subject.head == "kare"
    assert english(dicts, "hon-o katta.", ctx=ctx, trace=trace) == "He bought a book."
    [event] = trace.of_stage("ellipsis")
    assert (event["filled"], event["source"], event["pattern"]) == ("kare", "context", "ka-buy-agent")


def test_ellipsis_falls_back_to_the_default_pronoun(dicts):
    ctx = DiscourseContext()
    trace = Trace()
    english(dicts, "basu-ga gakkō-e itta.", ctx=ctx, trace=trace)
    assert english(dicts, "hon-o katta.", ctx=ctx, trace=trace) == "It bought a book."
    event = trace.of_stage("ellipsis")[0]
    assert (event["filled"], event["source"]) == ("it", "default")
    # the default pronoun is not an antecedent and clears the remembered subject
    assert ctx.last_subject is None
    assert english(dicts, "gakkō-e itta.", ctx=ctx, trace=trace) == "It went to school."
    assert [event["source"] for event in trace.of_stage("ellipsis")] == ["default", "default"]


def test_ellipsis_without_context(dicts):
    assert english(dicts, "hon-o katta.") == "It bought a book."
    assert english(dicts, "hon-o katta.", ctx=DiscourseContext(default_pronoun="they")) == "They bought a book."


def test_present_subject_is_left_alone(dicts):
    [clause] = parse_sentence(dicts.lexicon, dicts.ontology, "kanojo-wa hana-ni mizu-o kaketa.")
    winner = select_pattern(match_patterns(dicts.patterns, clause, dicts.ontology, dicts.lexicon))
    ctx = DiscourseContext()
    trace = Trace()
    assert fill_ellipsis(clause, winner, ctx, dicts.ontology, trace) is clause
    assert len(trace) == 0


def test_general_patterns_alone(dicts):
    general = dicts.patterns.without_levels(IDIOMATIC, VALENCY)
    [spec] = transfer(dicts, "kanojo-wa hana-ni mizu-o kaketa.", pd=general)
    assert spec.level == GENERAL
    assert realize_sentence([spec]) == "She hung water on a flower."


def test_levels_are_tried_most_specific_first(dicts):
    [spec] = transfer(dicts, "kare-wa isu-ni koshi-o kaketeiru.")
    assert spec.pattern_id == "kk-sit"
    [spec] = transfer(dicts, "kare-wa isu-ni koshi-o kaketeiru.", pd=dicts.patterns.without_levels(IDIOMATIC))
    assert spec.pattern_id == "kk-hang"


def test_transfer_is_deterministic(dicts):
    for sentence in ("kanojo-wa hana-ni mizu-o kaketa.", "ushi-no mure-ga hachi-no mure-ni osowareta.",
                     "kare-wa basu-de gakkō-e itta ga, watashi-wa kawa-zoi-ni toho-de gakkō-e itta."):
        assert transfer(dicts, sentence) == transfer(dicts, sentence)


def test_unknown_predicate(dicts):
    clause = PAS("zzz", (), SubjectiveFeatures())
    with pytest.raises(TransferError):
        transfer_clause(clause, dicts.patterns, dicts.ontology, dicts.lexicon, DiscourseContext())

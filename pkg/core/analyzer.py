"""
Japanese analysis: hyphen-romanized sentence -> clauses of predicate-argument
structure, with the subjective features (tense, aspect, voice, polarity and
clause connective) held apart from the objective content.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from core.errors import AnalysisError
from core.lexicon import (ADVERB, NOUN_POS, PRENOMINAL, CompoundAnalysis, LexicalEntry, Lexicon, Sense,
                          analyze_compound, segment)
from core.morphology import (ACTIVE, AFFIRMATIVE, PASSIVE, PAST as PAST_ENDING, PLAIN, PROGRESSIVE, SIMPLE, TE,
                             VerbForm)
from core.ontology import CategoryHierarchy

logger = logging.getLogger("analyzer")

PAST = "past"
NONPAST = "nonpast"
HABITUAL = "habitual"

NO_CONNECTIVE = "none"
CONTRASTIVE = "contrastive"
SEQUENTIAL = "sequential"

TOPIC = "wa"
GENITIVE = "no"
CONTRASTIVE_TOKEN = "ga,"


@dataclass(frozen=True)
class SubjectiveFeatures:
    tense: str = NONPAST
    aspect: str = SIMPLE
    voice: str = ACTIVE
    polarity: str = AFFIRMATIVE
    connective_to_next: str = NO_CONNECTIVE

    @classmethod
    def from_form(cls, form: VerbForm) -> "SubjectiveFeatures":
        return cls(
            tense=PAST if form.ending == PAST_ENDING else NONPAST,
            aspect=form.aspect,
            voice=form.voice,
            polarity=form.polarity,
            connective_to_next=SEQUENTIAL if form.ending == TE else NO_CONNECTIVE,
        )

    def to_form(self) -> VerbForm:
        if self.connective_to_next == SEQUENTIAL:
            ending = TE
        else:
            ending = PAST_ENDING if self.tense == PAST else PLAIN
        aspect = PROGRESSIVE if self.aspect in (PROGRESSIVE, HABITUAL) else SIMPLE
        return VerbForm(self.voice, aspect, self.polarity, ending)

    @property
    def passive(self) -> bool:
        return self.voice == PASSIVE


@dataclass(frozen=True)
class NounPhrase:
    head: str
    senses: Tuple[Sense, ...]
    modifier: Optional["NounPhrase"] = None
    determiner: Optional[LexicalEntry] = None
    compound: Optional[CompoundAnalysis] = None

    @property
    def categories(self) -> Tuple[str, ...]:
        return tuple(category for sense in self.senses for category in sense.categories)

    def surface(self) -> str:
        words = []
        if self.determiner is not None:
            words.append(self.determiner.surface)
        if self.modifier is not None:
            words.append(f"{self.modifier.surface()}-{GENITIVE}")
        words.append(self.head)
        return " ".join(words)


@dataclass(frozen=True)
class Argument:
    particle: str
    phrase: NounPhrase
    particles: Tuple[str, ...] = ()
    inherited: bool = False
    supplied: bool = False

    def surface(self) -> str:
        return "-".join((self.phrase.surface(),) + (self.particles or (self.particle,)))


@dataclass(frozen=True)
class Adverbial:
    surface: str
    entry: LexicalEntry

    @property
    def gloss(self) -> str:
        return self.entry.senses[0].gloss.lemma

    @property
    def categories(self) -> Tuple[str, ...]:
        return self.entry.categories


@dataclass(frozen=True)
class PAS:
    """One clause: predicate lemma, particle-marked arguments, subjective features."""

    predicate: str
    arguments: Tuple[Argument, ...]
    subjective: SubjectiveFeatures
    topic: Optional[Argument] = None
    adverbs: Tuple[Adverbial, ...] = ()
    conjugation_class: Optional[str] = None
    surface: str = ""

    def argument(self, particle: str) -> Optional[Argument]:
        for argument in self.arguments:
            if argument.particle == particle:
                return argument
        return None


def deinflect(lex: Lexicon, verbform: str) -> List[Tuple[str, SubjectiveFeatures]]:
    return [(lemma, SubjectiveFeatures.from_form(form)) for lemma, form in lex.deinflect(verbform)]


def resolve_noun_phrase(lex: Lexicon, ont: CategoryHierarchy, content: str) -> Optional[NounPhrase]:
    """Whole-word noun lookup first, compound analysis second."""
    entries = lex.lookup_pos(content, *NOUN_POS)
    if entries:
        senses = tuple(sense for entry in entries for sense in entry.senses)
        return NounPhrase(content, senses)
    compound = analyze_compound(lex, ont, content)
    if compound is not None:
        return NounPhrase(content, compound.senses, compound=compound)
    return None


def tokenize(sentence: str) -> List[str]:
    text = sentence.strip()
    if not text.endswith("."):
        raise AnalysisError("sentence must end with '.'")
    tokens = text[:-1].split()
    if not tokens:
        raise AnalysisError("empty sentence")
    logger.debug("Tokens: %s", tokens)
    return tokens


class _ClauseBuilder:

    def __init__(self):
        self.topic: Optional[Argument] = None
        self.arguments: List[Argument] = []
        self.adverbs: List[Adverbial] = []
        self.modifier: Optional[NounPhrase] = None
        self.determiner: Optional[LexicalEntry] = None

    def empty(self) -> bool:
        return not (self.topic or self.arguments or self.adverbs or self.modifier or self.determiner)


def parse_sentence(lex: Lexicon, ont: CategoryHierarchy, sentence: str,
                   habitual_category: Optional[str] = "frequency") -> List[PAS]:
    tokens = tokenize(sentence)
    clauses: List[PAS] = []
    builder = _ClauseBuilder()

    position = 0
    while position < len(tokens):
        token = tokens[position]
        if token == CONTRASTIVE_TOKEN:
            raise AnalysisError("contrastive 'ga,' must follow a finite predicate", position, token)

        content, particles = segment(lex, token)
        if particles:
            phrase = resolve_noun_phrase(lex, ont, content)
            if phrase is None:
                raise AnalysisError(f"unknown word {content!r}", position, token)
            phrase = replace(phrase, modifier=builder.modifier, determiner=builder.determiner)
            builder.modifier = builder.determiner = None

            particle = particles[-1]
            argument = Argument(particle, phrase, tuple(particles))
            if particle == GENITIVE:
                builder.modifier = phrase
            elif particle == TOPIC:
                if builder.topic is not None:
                    raise AnalysisError("second topic in one clause", position, token)
                builder.topic = argument
            else:
                builder.arguments.append(argument)
            position += 1
            continue

        analyses = deinflect(lex, content)
        if analyses:
            if builder.modifier is not None or builder.determiner is not None:
                raise AnalysisError("modifier without a head noun", position, token)
            lemma, features = analyses[0]
            if features.connective_to_next != SEQUENTIAL:
                if position + 1 < len(tokens) and tokens[position + 1] == CONTRASTIVE_TOKEN:
                    features = replace(features, connective_to_next=CONTRASTIVE)
                    position += 1
                elif position != len(tokens) - 1:
                    raise AnalysisError("finite predicate before the end of the sentence", position, token)
            clauses.append(PAS(
                predicate=lemma,
                arguments=tuple(builder.arguments),
                subjective=features,
                topic=builder.topic,
                adverbs=tuple(builder.adverbs),
                conjugation_class=lex.conjugation_class(lemma),
                surface=content,
            ))
            builder = _ClauseBuilder()
            position += 1
            continue

        adverbs = lex.lookup_pos(content, ADVERB)
        prenominals = lex.lookup_pos(content, PRENOMINAL)
        if adverbs:
            builder.adverbs.append(Adverbial(content, adverbs[0]))
        elif prenominals:
            builder.determiner = prenominals[0]
        else:
            raise AnalysisError(f"unknown word {content!r}", position, token)
        position += 1

    if not builder.empty() or not clauses:
        raise AnalysisError("no predicate found", len(tokens) - 1, tokens[-1])
    if clauses[-1].subjective.connective_to_next != NO_CONNECTIVE:
        raise AnalysisError("sentence ends inside a clause chain", len(tokens) - 1, tokens[-1])

    clauses = _link_chains(clauses)
    clauses = [_habitual(ont, clause, habitual_category) for clause in clauses]
    logger.debug("Parsed %d clause(s): %s", len(clauses), ", ".join(c.predicate for c in clauses))
    return clauses


def chains(clauses: Sequence[PAS]) -> List[List[int]]:
    """Group clause indexes into te-chains."""
    groups, current = [], []
    for index, clause in enumerate(clauses):
        current.append(index)
        if clause.subjective.connective_to_next != SEQUENTIAL:
            groups.append(current)
            current = []
    if current:
        groups.append(current)
    return groups


def _link_chains(clauses: List[PAS]) -> List[PAS]:
    # te-clauses take the chain-final tense; the wa-topic carries forward
    linked = list(clauses)
    for group in chains(clauses):
        final = clauses[group[-1]]
        topic = None
        for index in group:
            clause = linked[index]
            if index != group[-1]:
                clause = replace(clause, subjective=replace(clause.subjective, tense=final.subjective.tense))
            if clause.topic is None and topic is not None:
                clause = replace(clause, topic=replace(topic, inherited=True))
            elif clause.topic is not None:
                topic = clause.topic
            linked[index] = clause
    return linked


def _habitual(ont: CategoryHierarchy, clause: PAS, habitual_category: Optional[str]) -> PAS:
    if (clause.subjective.aspect != PROGRESSIVE or not habitual_category
            or habitual_category not in ont):
        return clause
    for adverb in clause.adverbs:
        if any(ont.subsumes(habitual_category, category) for category in adverb.categories):
            return replace(clause, subjective=replace(clause.subjective, aspect=HABITUAL))
    return clause

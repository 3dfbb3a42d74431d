"""
Multi-level transfer: per-clause pattern selection (idiomatic, then valency,
then general), ellipsis supplementation from discourse context, and mapping
of the subjective features onto an English verb plan.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from core.analyzer import (CONTRASTIVE, PAST as JA_PAST, PROGRESSIVE, SEQUENTIAL, PAS, Argument,
                           NounPhrase, SubjectiveFeatures)
from core.errors import TransferError
from core.generator import (OBJECT_CASE, PAST, PRESENT, SUBJECT_CASE, EnglishClauseSpec, NounPlan, VerbPlan,
                            noun_phrase)
from core.lexicon import NO_ARTICLE, EnglishGloss, Lexicon, Sense
from core.morphology import NEGATIVE, PASSIVE
from core.ontology import PROPER, CategoryHierarchy
from core.patterns import (ABSORBED, BARE, OBJECT, PREP, SUBJECT, PatternDictionary, PatternMatch, Placeholder,
                           Realization, match_pattern, match_patterns, noun_frame, satisfies, select_pattern)

logger = logging.getLogger("transfer")

CONNECTIVES = {CONTRASTIVE: "but", SEQUENTIAL: "and"}


@dataclass
class DiscourseContext:
    """Per-document state; one prior clause of memory."""

    last_subject: Optional[NounPhrase] = None
    default_pronoun: str = "it"

    def pronoun_phrase(self) -> NounPhrase:
        gloss = EnglishGloss(self.default_pronoun, article_policy=NO_ARTICLE)
        return NounPhrase(self.default_pronoun, (Sense((), gloss),))


def map_subjective(features: SubjectiveFeatures) -> VerbPlan:
    return VerbPlan(
        tense=PAST if features.tense == JA_PAST else PRESENT,
        progressive=features.aspect == PROGRESSIVE,
        passive=features.voice == PASSIVE,
        negative=features.polarity == NEGATIVE,
    )


def english_subject_particle(pas: PAS, match: PatternMatch) -> Optional[str]:
    """Active-frame particle of the slot that becomes the English subject."""
    if pas.subjective.passive:
        return "o" if match.pattern.slot("o") is not None else None
    subject = match.pattern.subject_slot
    return subject.particle if subject is not None else None


def fill_ellipsis(pas: PAS, winner: PatternMatch, ctx: DiscourseContext, ont: CategoryHierarchy,
                  trace=None) -> PAS:
    """Supply a missing English subject from the previous clause, or the default pronoun.

    The filler is added as a ga-argument; in a passive clause that is the
    active-frame o slot, the English subject either way.
    """
    particle = english_subject_particle(pas, winner)
    if particle is None or winner.binding(particle) is not None:
        return pas
    slot = winner.pattern.slot(particle)

    filled = None
    source = "default"
    if ctx.last_subject is not None:
        candidate = Argument("ga", ctx.last_subject, ("ga",), supplied=True)
        if satisfies(ont, slot.constraint, candidate) is not None:
            filled, source = candidate, "context"
    if filled is None:
        filled = Argument("ga", ctx.pronoun_phrase(), ("ga",), supplied=True)

    logger.debug("Ellipsis in %s filled from %s with %s", pas.predicate, source, filled.phrase.head)
    if trace is not None:
        trace.add("ellipsis", predicate=pas.predicate, pattern=winner.pattern_id,
                  filled=filled.phrase.head, source=source)
    return replace(pas, arguments=pas.arguments + (filled,))


class _Transfer:
    """Transfer of one clause against one set of dictionaries."""

    def __init__(self, pd: PatternDictionary, ont: CategoryHierarchy, lex: Lexicon, trace=None):
        self.pd = pd
        self.ont = ont
        self.lex = lex
        self.trace = trace

    def plan_phrase(self, phrase: NounPhrase, sense: Optional[Sense] = None) -> NounPlan:
        if sense is None:
            if not phrase.senses:
                raise TransferError(f"no sense for {phrase.head}")
            sense = phrase.senses[0]
        gloss = sense.gloss
        determiner = phrase.determiner.senses[0].gloss.lemma if phrase.determiner is not None else None
        plan = NounPlan(gloss, determiner=determiner)
        if phrase.modifier is None:
            return plan

        if self.pd.has_noun_patterns(phrase.head):
            frame = noun_frame(phrase)
            match = select_pattern(match_patterns(self.pd, frame, self.ont, self.lex))
            self._record("noun", frame, match)
            tail = match.pattern.template.render(lambda p: self._placeholder(match, p, frozenset()))
            return replace(plan, gloss=replace(gloss, lemma=match.pattern.template.head,
                                               irregular_plural=None), tail=tail)

        modifier = self.plan_phrase(phrase.modifier)
        if modifier.is_pronoun:
            return replace(plan, possessor=modifier)
        return replace(plan, tail=f"of {noun_phrase(modifier, OBJECT_CASE)}")

    def _placeholder(self, match: PatternMatch, placeholder: Placeholder, hidden) -> Optional[str]:
        if placeholder.particle in hidden:
            return None
        binding = match.binding(placeholder.particle)
        if binding is None:
            return None
        plan = self.plan_phrase(binding.argument.phrase, binding.sense)
        if placeholder.plural and not self._is_proper(binding.argument.phrase, binding.sense):
            plan = replace(plan, plural=True, zero_article=True, determiner=None)
        case = SUBJECT_CASE if binding.slot.realization.kind == SUBJECT else OBJECT_CASE
        return noun_phrase(plan, case)

    def _is_proper(self, phrase: NounPhrase, sense: Optional[Sense]) -> bool:
        sense = sense or (phrase.senses[0] if phrase.senses else None)
        return sense is not None and any(self.ont.kind(c) == PROPER for c in sense.categories)

    def _literal(self, realization: Realization, plan: NounPlan) -> Tuple[str, str]:
        """(kind, text) for an argument realized outside the template."""
        if realization.zero_article:
            plan = replace(plan, zero_article=True)
        if realization.kind == OBJECT:
            return OBJECT, noun_phrase(plan, OBJECT_CASE)
        text = noun_phrase(plan, OBJECT_CASE)
        if realization.kind == PREP:
            return PREP, f"{realization.preposition} {text}"
        return BARE, text

    def _record(self, scope: str, pas: PAS, match: PatternMatch) -> None:
        logger.debug("%s %s -> %s (%s)", scope, pas.predicate, match.pattern_id, match.level)
        if self.trace is not None:
            self.trace.add("pattern", scope=scope, predicate=pas.predicate, pattern=match.pattern_id,
                           level=match.level, specificity=list(match.specificity))

    def clause(self, pas: PAS, ctx: DiscourseContext) -> EnglishClauseSpec:
        matches = match_patterns(self.pd, pas, self.ont, self.lex)
        if not matches:
            raise TransferError(f"no pattern matched predicate {pas.predicate}")
        winner = select_pattern(matches)

        filled = fill_ellipsis(pas, winner, ctx, self.ont, self.trace)
        if filled is not pas:
            pas = filled
            winner = match_pattern(winner.pattern, pas, self.ont)
            if winner is None:
                raise TransferError(f"ellipsis fill broke pattern for {pas.predicate}")
        self._record("clause", pas, winner)

        passive = pas.subjective.passive
        subject_particle = english_subject_particle(pas, winner)
        subject_binding = winner.binding(subject_particle) if subject_particle else None
        if subject_binding is not None:
            subject_phrase = subject_binding.argument.phrase
            subject = self.plan_phrase(subject_phrase, subject_binding.sense)
        else:
            subject_phrase = ctx.pronoun_phrase()
            subject = self.plan_phrase(subject_phrase)

        hidden = {subject_particle} if subject_particle else set()
        agent = None
        if passive and winner.pattern.subject_slot is not None:
            agent = winner.binding(winner.pattern.subject_slot.particle)
            hidden.add(winner.pattern.subject_slot.particle)

        template = winner.pattern.template
        complement = template.render(lambda p: self._placeholder(winner, p, hidden))
        placed = {p.particle for p in template.placeholders}

        objects: List[str] = []
        phrases: List[Tuple[int, str]] = []
        for binding in winner.bindings:
            kind = binding.slot.realization.kind
            if binding is subject_binding or binding is agent or kind in (SUBJECT, ABSORBED):
                continue
            if binding.slot.particle in placed:
                continue
            plan = self.plan_phrase(binding.argument.phrase, binding.sense)
            kind, text = self._literal(binding.slot.realization, plan)
            if kind == OBJECT:
                objects.append(text)
            else:
                phrases.append((binding.position, text))

        if agent is not None:
            plan = self.plan_phrase(agent.argument.phrase, agent.sense)
            phrases.append((agent.position, f"by {noun_phrase(plan, OBJECT_CASE)}"))

        bound = {binding.position for binding in winner.bindings}
        leftovers = [(i, a) for i, a in enumerate(pas.arguments) if not a.supplied]
        if pas.topic is not None:
            leftovers.append((-1, replace(pas.topic, particle="wa")))
        for position, argument in leftovers:
            if position in bound:
                continue
            realization = self.pd.slot_realization(argument)
            kind, text = self._literal(realization, self.plan_phrase(argument.phrase))
            if kind == OBJECT:
                objects.append(text)
            else:
                phrases.append((position, text))

        # mirror of the Japanese surface order
        phrases.sort(key=lambda item: -item[0])

        spec = EnglishClauseSpec(
            subject=subject,
            verb=template.head,
            plan=map_subjective(pas.subjective),
            complement=complement,
            objects=tuple(objects),
            preps=tuple(text for _, text in phrases),
            adverbs=tuple(adverb.gloss for adverb in pas.adverbs),
            connective=CONNECTIVES.get(pas.subjective.connective_to_next, ""),
            pattern_id=winner.pattern_id,
            level=winner.level,
        )

        if subject_binding is not None:
            # a default fill leaves no antecedent for the next clause
            default = _is_default(subject_binding.argument, ctx)
            ctx.last_subject = None if default else subject_phrase
        return spec


def _is_default(argument: Argument, ctx: DiscourseContext) -> bool:
    return argument.supplied and argument.phrase.head == ctx.default_pronoun and not argument.phrase.categories


def transfer_clause(pas: PAS, pd: PatternDictionary, ont: CategoryHierarchy, lex: Lexicon,
                    ctx: DiscourseContext, trace=None) -> EnglishClauseSpec:
    return _Transfer(pd, ont, lex, trace).clause(pas, ctx)

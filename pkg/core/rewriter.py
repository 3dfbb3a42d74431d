"""
Japanese-to-Japanese rewriting ahead of transfer.

A rule names the predicate of a te-form clause, category guards on its
arguments, and an adjunct to synthesize. When it fires, the te-clause is
removed and the adjunct joins the following clause, e.g.

    kare-wa basu-ni notte gakkō-e itta.  ->  kare-wa basu-de gakkō-e itta.
"""

import logging
import re
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from core.analyzer import PAS, SEQUENTIAL, CONTRASTIVE, Argument, resolve_noun_phrase
from core.errors import RewriteRuleError, raise_collected
from core.lexicon import PARTICLES, Lexicon
from core.morphology import inflect
from core.ontology import CategoryHierarchy
from core.patterns import SlotConstraint, satisfies
from utils.tsv import iter_records, split_list

logger = logging.getLogger("rewriter")

_REFERENCE = re.compile(r"\{([a-z]+)\}")


@dataclass(frozen=True)
class RewriteGuard:
    particle: str
    constraint: SlotConstraint

    def __str__(self) -> str:
        return f"{self.particle}:{self.constraint}"


@dataclass(frozen=True)
class AdjunctTemplate:
    particle: str
    content: str

    @property
    def references(self) -> Tuple[str, ...]:
        return tuple(_REFERENCE.findall(self.content))


@dataclass(frozen=True)
class RewriteRule:
    id: str
    trigger: str
    guards: Tuple[RewriteGuard, ...]
    adjunct: AdjunctTemplate
    line: int = 0


@dataclass(frozen=True)
class RewriteStep:
    rule_id: str
    index: int
    consumed: PAS
    produced: Argument
    referenced: Tuple[int, ...]


@dataclass(frozen=True)
class RewriteTrace:
    steps: Tuple[RewriteStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, clauses: Sequence[PAS]) -> List[PAS]:
        """Re-apply the recorded steps to the original clause list."""
        result = list(clauses)
        for step in self.steps:
            if step.index >= len(result) - 1 or result[step.index] != step.consumed:
                raise ValueError(f"trace step {step.rule_id} does not apply at clause {step.index}")
            _merge(result, step.index, step.produced, step.referenced)
        return result


class RewriteRuleSet:
    """Rules in file order, bound to the lexicon adjuncts resolve against."""

    def __init__(self, rules: Sequence[RewriteRule], lexicon: Lexicon, ontology: CategoryHierarchy):
        self.rules = tuple(rules)
        self.lexicon = lexicon
        self.ontology = ontology

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def _guard_candidates(clause: PAS, particle: str) -> List[Tuple[int, Argument]]:
    candidates = [(i, a) for i, a in enumerate(clause.arguments) if a.particle == particle]
    if particle == "ga" and clause.topic is not None:
        candidates.append((-1, clause.topic))
    return candidates


def _try_rule(rule: RewriteRule, clause: PAS, rules: RewriteRuleSet,
              ont: CategoryHierarchy) -> Optional[Tuple[Argument, Tuple[int, ...]]]:
    if clause.predicate != rule.trigger:
        return None
    bound = {}
    for guard in rule.guards:
        hit = next(((i, a) for i, a in _guard_candidates(clause, guard.particle)
                    if satisfies(ont, guard.constraint, a) is not None), None)
        if hit is None:
            return None
        bound[guard.particle] = hit

    content = _REFERENCE.sub(lambda m: bound[m.group(1)][1].phrase.head, rule.adjunct.content)
    phrase = resolve_noun_phrase(rules.lexicon, ont, content)
    if phrase is None:
        logger.debug("Rule %s: adjunct %r does not resolve", rule.id, content)
        return None
    referenced = tuple(sorted(bound[p][0] for p in rule.adjunct.references if bound[p][0] >= 0))
    return Argument(rule.adjunct.particle, phrase, (rule.adjunct.particle,)), referenced


def _merge(clauses: List[PAS], index: int, adjunct: Argument, referenced: Tuple[int, ...]) -> None:
    consumed = clauses[index]
    following = clauses[index + 1]
    moved = tuple(a for i, a in enumerate(consumed.arguments) if i not in referenced)
    topic = following.topic
    if consumed.topic is not None and not consumed.topic.inherited and (topic is None or topic.inherited):
        topic = consumed.topic
    clauses[index + 1] = replace(
        following,
        arguments=moved + (adjunct,) + following.arguments,
        adverbs=consumed.adverbs + following.adverbs,
        topic=topic,
    )
    del clauses[index]


def apply_rewrites(rules: RewriteRuleSet, clauses: Sequence[PAS],
                   ont: CategoryHierarchy) -> Tuple[List[PAS], RewriteTrace]:
    result = list(clauses)
    steps = []
    index = 0
    while index < len(result) - 1:
        clause = result[index]
        if clause.subjective.connective_to_next != SEQUENTIAL:
            index += 1
            continue
        for rule in rules:
            fired = _try_rule(rule, clause, rules, ont)
            if fired is not None:
                adjunct, referenced = fired
                steps.append(RewriteStep(rule.id, index, clause, adjunct, referenced))
                _merge(result, index, adjunct, referenced)
                logger.debug("Rule %s rewrote %s into %s", rule.id, clause.surface, adjunct.surface())
                break
        else:
            index += 1
    return result, RewriteTrace(tuple(steps))


def render_japanese(clauses: Sequence[PAS], lex: Lexicon) -> str:
    """Re-serialize clauses in hyphenated romanization."""
    words = []
    for clause in clauses:
        if clause.topic is not None and not clause.topic.inherited:
            words.append(clause.topic.surface())
        words.extend(adverb.surface for adverb in clause.adverbs)
        words.extend(a.surface() for a in clause.arguments if not a.inherited and not a.supplied)
        conjugation = clause.conjugation_class or lex.conjugation_class(clause.predicate)
        words.append(inflect(clause.predicate, conjugation, clause.subjective.to_form()))
        if clause.subjective.connective_to_next == CONTRASTIVE:
            words.append("ga,")
    return " ".join(words) + "." if words else ""


def load_rewrites(source: str, lex: Lexicon, ont: CategoryHierarchy,
                  source_name: str = "rewrites.tsv") -> RewriteRuleSet:
    """Parse `id <TAB> trigger <TAB> guards <TAB> adjunct` records."""
    rules = []
    seen = {}
    errors = []
    for record in iter_records(source):
        def fail(message, ident=None):
            errors.append(RewriteRuleError(message, source_name, record.line, ident))

        if len(record.fields) != 4:
            fail(f"expected 4 fields, got {len(record.fields)}")
            continue
        rid, trigger, guard_field, adjunct_field = record.fields
        if rid in seen:
            fail(f"duplicate rule id (first on line {seen[rid]})", rid)
            continue
        seen[rid] = record.line
        if not any(entry.is_predicate for entry in lex.lookup(trigger)):
            fail(f"unknown trigger predicate {trigger}", rid)
            continue

        guards = []
        problems = []
        for text in split_list(guard_field, ";"):
            particle, _, constraint_text = text.partition(":")
            particle = particle.strip()
            try:
                constraint = SlotConstraint.parse(constraint_text.strip())
            except ValueError as e:
                problems.append(str(e))
                continue
            if particle not in PARTICLES:
                problems.append(f"unknown particle {particle!r}")
            if constraint.kind == "category":
                problems.extend(f"unknown category {m}" for m in constraint.categories if m not in ont)
            if constraint.kind == "word" and constraint.lemma not in lex:
                problems.append(f"unknown word-locked lemma {constraint.lemma}")
            guards.append(RewriteGuard(particle, constraint))

        particle, _, content = adjunct_field.partition(":")
        adjunct = AdjunctTemplate(particle.strip(), content.strip())
        if adjunct.particle not in PARTICLES or not adjunct.content:
            problems.append(f"bad adjunct {adjunct_field!r}")
        guarded = {guard.particle for guard in guards}
        problems.extend(f"adjunct references unguarded slot {p}" for p in adjunct.references if p not in guarded)

        if problems:
            for problem in problems:
                fail(problem, rid)
            continue
        rules.append(RewriteRule(rid, trigger, tuple(guards), adjunct, record.line))

    raise_collected(errors)
    logger.debug("Loaded %d rewrite rules", len(rules))
    return RewriteRuleSet(rules, lex, ont)

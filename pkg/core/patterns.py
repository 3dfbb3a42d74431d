"""
Semantic structure dictionary.

Each transfer pattern is a case frame for one predicate (a verb, an
adjective, or a noun such as "mure" that selects its English head by the
category of its no-modifier) tagged with one of three transfer levels:

- idiomatic: fixed multi-word expressions, at least one word-locked slot
- valency:   category-constrained case frames
- general:   unconstrained fallback, one or more per predicate

Rows of level "slot" form the literal realization table used for arguments
no selected pattern consumes.
"""

import logging
import re
from dataclasses import dataclass, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from core.analyzer import PAS, Argument, SubjectiveFeatures, NounPhrase
from core.errors import PatternError, TransferError, raise_collected
from core.lexicon import PARTICLES, Lexicon, Sense
from core.ontology import CategoryConstraint, CategoryHierarchy
from utils.tsv import iter_records, split_list

logger = logging.getLogger("patterns")

IDIOMATIC = "idiomatic"
VALENCY = "valency"
GENERAL = "general"
SLOT = "slot"
LEVELS = (IDIOMATIC, VALENCY, GENERAL)
LEVEL_RANK = {GENERAL: 0, VALENCY: 1, IDIOMATIC: 2}

WORD = "word"
CATEGORY = "category"
ANY = "any"

SUBJECT = "subject"
OBJECT = "object"
ABSORBED = "absorbed"
BARE = "bare"
PREP = "prep"
REALIZATIONS = (SUBJECT, OBJECT, ABSORBED, BARE, PREP)

_TEMPLATE_TOKEN = re.compile(r"\[|\]|\{[^}]*\}|[^\s\[\]{}]+")
_PLACEHOLDER = re.compile(r"^\{slot:([a-z]+)(\|pl)?\}$")


@dataclass(frozen=True)
class SlotConstraint:
    kind: str
    lemma: Optional[str] = None
    categories: Optional[CategoryConstraint] = None

    @classmethod
    def parse(cls, text: str) -> "SlotConstraint":
        if text == "*":
            return cls(ANY)
        if text.startswith("=") and len(text) > 1:
            return cls(WORD, lemma=text[1:])
        if text.startswith("@"):
            members = tuple(split_list(text[1:]))
            if members:
                return cls(CATEGORY, categories=CategoryConstraint(members))
        raise ValueError(f"bad constraint {text!r}")

    def __str__(self) -> str:
        if self.kind == WORD:
            return f"={self.lemma}"
        if self.kind == CATEGORY:
            return f"@{self.categories}"
        return "*"


@dataclass(frozen=True)
class Realization:
    kind: str
    preposition: Optional[str] = None
    zero_article: bool = False

    @classmethod
    def parse(cls, text: str) -> "Realization":
        if text.startswith("prep="):
            word, _, flag = text[len("prep="):].partition("/")
            if not word.strip() or flag not in ("", "zero"):
                raise ValueError(f"bad realization {text!r}")
            return cls(PREP, word.strip(), flag == "zero")
        if text in (SUBJECT, OBJECT, ABSORBED, BARE):
            return cls(text)
        raise ValueError(f"bad realization {text!r}")


@dataclass(frozen=True)
class CaseSlotPattern:
    particle: str
    constraint: SlotConstraint
    required: bool
    realization: Realization

    @classmethod
    def parse(cls, text: str) -> "CaseSlotPattern":
        parts = [part.strip() for part in text.split(":", 3)]
        if len(parts) != 4:
            raise ValueError(f"slot {text!r} needs particle:constraint:req|opt:realization")
        particle, constraint, required, realization = parts
        if particle not in PARTICLES:
            raise ValueError(f"unknown particle {particle!r}")
        if required not in ("req", "opt"):
            raise ValueError(f"slot {text!r}: expected req or opt, got {required!r}")
        return cls(particle, SlotConstraint.parse(constraint), required == "req", Realization.parse(realization))

    @property
    def is_subject(self) -> bool:
        return self.realization.kind == SUBJECT


@dataclass(frozen=True)
class Placeholder:
    particle: str
    plural: bool = False


@dataclass(frozen=True)
class OptionalGroup:
    items: Tuple[Union[str, Placeholder], ...]


TemplateItem = Union[str, Placeholder, OptionalGroup]


@dataclass(frozen=True)
class EnglishTemplate:
    """Fixed words plus `{slot:P}` placeholders; `[...]` groups drop when a placeholder in them is unbound."""

    source: str
    items: Tuple[TemplateItem, ...]

    @classmethod
    def parse(cls, text: str) -> "EnglishTemplate":
        items: List[TemplateItem] = []
        group: Optional[List] = None
        for token in _TEMPLATE_TOKEN.findall(text):
            if token == "[":
                if group is not None:
                    raise ValueError("nested optional group")
                group = []
                continue
            if token == "]":
                if group is None:
                    raise ValueError("unbalanced ']'")
                items.append(OptionalGroup(tuple(group)))
                group = None
                continue
            if token.startswith("{"):
                match = _PLACEHOLDER.match(token)
                if not match:
                    raise ValueError(f"bad placeholder {token}")
                item = Placeholder(match.group(1), bool(match.group(2)))
            else:
                item = token
            (items if group is None else group).append(item)
        if group is not None:
            raise ValueError("unclosed '['")
        if not items or not isinstance(items[0], str):
            raise ValueError("template must start with a word")
        return cls(text, tuple(items))

    @property
    def head(self) -> str:
        return self.items[0]

    @property
    def placeholders(self) -> Tuple[Placeholder, ...]:
        found = []
        for item in self.items:
            if isinstance(item, Placeholder):
                found.append(item)
            elif isinstance(item, OptionalGroup):
                found.extend(sub for sub in item.items if isinstance(sub, Placeholder))
        return tuple(found)

    def render(self, resolve: Callable[[Placeholder], Optional[str]]) -> str:
        """Render everything after the head word."""
        words = []
        for item in self.items[1:]:
            if isinstance(item, str):
                words.append(item)
            elif isinstance(item, Placeholder):
                value = resolve(item)
                if value:
                    words.append(value)
            else:
                parts = []
                for sub in item.items:
                    value = sub if isinstance(sub, str) else resolve(sub)
                    if not value:
                        break
                    parts.append(value)
                else:
                    words.extend(parts)
        return " ".join(words)


@dataclass(frozen=True)
class TransferPattern:
    id: str
    level: str
    predicate: str
    slots: Tuple[CaseSlotPattern, ...]
    template: EnglishTemplate
    order: int
    noun: bool = False
    line: int = 0

    @property
    def subject_slot(self) -> Optional[CaseSlotPattern]:
        return next((slot for slot in self.slots if slot.is_subject), None)

    def slot(self, particle: str) -> Optional[CaseSlotPattern]:
        return next((slot for slot in self.slots if slot.particle == particle), None)


@dataclass(frozen=True)
class SlotRule:
    id: str
    particle: str
    constraint: SlotConstraint
    realization: Realization
    order: int


@dataclass(frozen=True)
class SlotBinding:
    slot: CaseSlotPattern
    argument: Argument
    sense: Optional[Sense]
    depth: int
    position: int
    via_topic: bool = False


@dataclass(frozen=True)
class PatternMatch:
    pattern: TransferPattern
    bindings: Tuple[SlotBinding, ...]
    specificity: Tuple[int, int, int, int]

    @property
    def pattern_id(self) -> str:
        return self.pattern.id

    @property
    def level(self) -> str:
        return self.pattern.level

    def binding(self, particle: str) -> Optional[SlotBinding]:
        return next((b for b in self.bindings if b.slot.particle == particle), None)


class PatternDictionary:
    """Transfer patterns indexed by predicate lemma, plus the slot table."""

    def __init__(self, patterns: Sequence[TransferPattern], slot_rules: Sequence[SlotRule] = (),
                 ontology: Optional[CategoryHierarchy] = None):
        self.ontology = ontology
        self._patterns = tuple(patterns)
        self._slot_rules = tuple(slot_rules)
        self._by_predicate: Dict[str, Tuple[TransferPattern, ...]] = {}
        for pattern in self._patterns:
            self._by_predicate[pattern.predicate] = self._by_predicate.get(pattern.predicate, ()) + (pattern,)

    def __len__(self) -> int:
        return len(self._patterns)

    def __iter__(self):
        return iter(self._patterns)

    @property
    def predicates(self) -> Tuple[str, ...]:
        return tuple(self._by_predicate)

    @property
    def slot_rules(self) -> Tuple[SlotRule, ...]:
        return self._slot_rules

    def lookup(self, predicate: str) -> Tuple[TransferPattern, ...]:
        return self._by_predicate.get(predicate, ())

    def has_noun_patterns(self, head: str) -> bool:
        return any(pattern.noun for pattern in self.lookup(head))

    def without_levels(self, *levels: str) -> "PatternDictionary":
        kept = [pattern for pattern in self._patterns if pattern.level not in levels]
        return PatternDictionary(kept, self._slot_rules, self.ontology)

    def slot_realization(self, argument: Argument) -> Realization:
        """Literal realization of an argument: deepest matching slot row for its particle."""
        best, best_depth = None, -1
        for rule in self._slot_rules:
            if rule.particle != argument.particle:
                continue
            found = satisfies(self.ontology, rule.constraint, argument)
            if found is not None and found[1] > best_depth:
                best, best_depth = rule, found[1]
        return best.realization if best is not None else Realization(BARE)


def satisfies(ont: Optional[CategoryHierarchy], constraint: SlotConstraint,
              argument: Argument) -> Optional[Tuple[Optional[Sense], int]]:
    """(sense, depth) when the argument fills the constraint, else None."""
    phrase = argument.phrase
    first = phrase.senses[0] if phrase.senses else None
    if argument.supplied and not phrase.categories:
        # the default pronoun fills any slot
        return first, 0
    if constraint.kind == ANY:
        return first, 0
    if constraint.kind == WORD:
        return (first, 0) if phrase.head == constraint.lemma else None

    best = None
    for sense in phrase.senses:
        match = ont.best_match(sense.categories, constraint.categories)
        if match is not None and (best is None or match.depth > best[1]):
            best = (sense, match.depth)
    return best


def active_frame(pas: PAS) -> Tuple[List[Tuple[int, Argument]], Optional[Argument]]:
    """Arguments with their surface positions, re-marked into the active case frame.

    Passive clauses map ga to o and the ni-agent to ga; a topic stands in for
    the missing ga.
    """
    frame = list(enumerate(pas.arguments))
    topic = pas.topic
    if not pas.subjective.passive:
        return frame, topic
    mapping = {"ga": "o", "ni": "ga"}
    frame = [(position, replace(argument, particle=mapping.get(argument.particle, argument.particle)))
             for position, argument in frame]
    if topic is not None and pas.argument("ga") is None:
        frame.insert(0, (-1, replace(topic, particle="o")))
        topic = None
    return frame, topic


def match_pattern(pattern: TransferPattern, pas: PAS, ont: CategoryHierarchy) -> Optional[PatternMatch]:
    frame, topic = active_frame(pas)
    used = set()
    bindings: List[SlotBinding] = []

    for slot in pattern.slots:
        found = None
        has_candidate = False
        for index, (position, argument) in enumerate(frame):
            if index in used or argument.particle != slot.particle:
                continue
            has_candidate = True
            satisfied = satisfies(ont, slot.constraint, argument)
            if satisfied is not None:
                found = (index, position, argument, satisfied)
                break

        if found is not None:
            index, position, argument, (sense, depth) = found
            used.add(index)
            bindings.append(SlotBinding(slot, argument, sense, depth, position))
            continue

        if slot.is_subject:
            satisfied = satisfies(ont, slot.constraint, topic) if topic is not None else None
            if satisfied is not None:
                bindings.append(SlotBinding(slot, topic, satisfied[0], satisfied[1], -1, via_topic=True))
                continue
            # No candidate at all is an ellipsis; a mismatching one rules the pattern out
            if slot.required and (has_candidate or topic is not None):
                return None
            continue

        if slot.required:
            return None

    locked = sum(1 for binding in bindings if binding.slot.constraint.kind == WORD)
    depth = sum(binding.depth for binding in bindings)
    specificity = (LEVEL_RANK[pattern.level], locked, depth, -pattern.order)
    return PatternMatch(pattern, tuple(bindings), specificity)


def match_patterns(pd: PatternDictionary, pas: PAS, ont: CategoryHierarchy,
                   lex: Optional[Lexicon] = None) -> List[PatternMatch]:
    matches = []
    for pattern in pd.lookup(pas.predicate):
        match = match_pattern(pattern, pas, ont)
        if match is not None:
            matches.append(match)
    return matches


def select_pattern(matches: Iterable[PatternMatch]) -> PatternMatch:
    matches = list(matches)
    if not matches:
        raise TransferError("no pattern matched")
    return max(matches, key=lambda match: match.specificity)


def noun_frame(phrase: NounPhrase) -> PAS:
    """A noun phrase with a no-modifier, viewed as a case frame of its head."""
    return PAS(phrase.head, (Argument("no", phrase.modifier, ("no",)),), SubjectiveFeatures())


def _check_constraint(constraint: SlotConstraint, lex: Lexicon, ont: CategoryHierarchy) -> List[str]:
    problems = []
    if constraint.kind == WORD and constraint.lemma not in lex:
        problems.append(f"unknown word-locked lemma {constraint.lemma}")
    if constraint.kind == CATEGORY:
        problems.extend(f"unknown category {member}" for member in constraint.categories if member not in ont)
    return problems


def load_patterns(source: str, lex: Lexicon, ont: CategoryHierarchy,
                  source_name: str = "patterns.tsv") -> PatternDictionary:
    """Parse `id <TAB> level <TAB> predicate <TAB> slots <TAB> template` records."""
    patterns: List[TransferPattern] = []
    slot_rules: List[SlotRule] = []
    seen: Dict[str, int] = {}
    errors: List[PatternError] = []

    for record in iter_records(source):
        def fail(message, ident=None):
            errors.append(PatternError(message, source_name, record.line, ident))

        if len(record.fields) != 5:
            fail(f"expected 5 fields, got {len(record.fields)}")
            continue
        pid, level, predicate, slot_field, template_text = record.fields
        if pid in seen:
            fail(f"duplicate pattern id (first on line {seen[pid]})", pid)
            continue
        seen[pid] = record.line
        if level not in LEVELS + (SLOT,):
            fail(f"unknown level {level!r}", pid)
            continue

        try:
            slots = tuple(CaseSlotPattern.parse(text) for text in split_list(slot_field, ";"))
        except ValueError as e:
            fail(str(e), pid)
            continue
        problems = [problem for slot in slots for problem in _check_constraint(slot.constraint, lex, ont)]
        if problems:
            for problem in problems:
                fail(problem, pid)
            continue

        if level == SLOT:
            if predicate != "*" or len(slots) != 1:
                fail("slot rows need predicate '*' and exactly one slot", pid)
                continue
            slot = slots[0]
            if slot.constraint.kind == WORD or slot.realization.kind in (SUBJECT, ABSORBED):
                fail("slot rows take category or '*' constraints and a literal realization", pid)
                continue
            slot_rules.append(SlotRule(pid, slot.particle, slot.constraint, slot.realization, record.line))
            continue

        entries = lex.lookup(predicate)
        if any(entry.is_predicate for entry in entries):
            noun = False
        elif any(entry.is_noun for entry in entries):
            noun = True
        else:
            fail(f"unknown predicate {predicate}", pid)
            continue

        try:
            template = EnglishTemplate.parse(template_text)
        except ValueError as e:
            fail(f"template: {e}", pid)
            continue

        kinds = [slot.constraint.kind for slot in slots]
        subjects = sum(1 for slot in slots if slot.is_subject)
        particles = [slot.particle for slot in slots]
        absorbed = {slot.particle for slot in slots if slot.realization.kind == ABSORBED}
        if level == IDIOMATIC and WORD not in kinds:
            fail("idiomatic pattern needs a word-locked slot", pid)
        elif level == GENERAL and (WORD in kinds or CATEGORY in kinds):
            fail("general pattern cannot constrain its slots", pid)
        elif noun and subjects:
            fail("noun pattern cannot have a subject slot", pid)
        elif not noun and subjects != 1:
            fail(f"clause pattern needs exactly one subject slot, has {subjects}", pid)
        elif len(set(particles)) != len(particles):
            fail("particle used twice", pid)
        else:
            bad = [p.particle for p in template.placeholders if p.particle not in particles or p.particle in absorbed]
            if bad:
                fail(f"template references undeclared or absorbed slot {', '.join(bad)}", pid)
            else:
                patterns.append(TransferPattern(pid, level, predicate, slots, template, record.line, noun,
                                                record.line))

    for predicate in dict.fromkeys(pattern.predicate for pattern in patterns):
        if not any(p.level == GENERAL for p in patterns if p.predicate == predicate):
            errors.append(PatternError("predicate has no general pattern", source_name, ident=predicate))

    raise_collected(errors)
    dictionary = PatternDictionary(patterns, slot_rules, ont)
    logger.debug("Loaded %d patterns for %d predicates and %d slot rows",
                 len(dictionary), len(dictionary.predicates), len(slot_rules))
    return dictionary

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import LexiconError, raise_collected
from core.morphology import I_ADJECTIVE, VERB_CLASSES, VerbForm, build_form_index, forms_for, inflect
from core.ontology import COMMON, PROPER, CategoryConstraint, CategoryHierarchy
from utils.tsv import iter_records, split_list

logger = logging.getLogger("lexicon")

# Closed particle set
PARTICLES = ("wa", "ga", "o", "ni", "de", "e", "no", "to", "kara", "made")

COMMON_NOUN = "common-noun"
PROPER_NOUN = "proper-noun"
VERB = "verb"
ADJECTIVE = "adjective"
SUFFIX = "suffix"
PREFIX = "prefix"
ADVERB = "adverb"
PRENOMINAL = "prenominal"
PARTS_OF_SPEECH = (COMMON_NOUN, PROPER_NOUN, VERB, ADJECTIVE, SUFFIX, PREFIX, ADVERB, PRENOMINAL)

NOUN_POS = (COMMON_NOUN, PROPER_NOUN)
PREDICATE_POS = (VERB, ADJECTIVE)
COMPOUND_HEAD_POS = (COMMON_NOUN, PROPER_NOUN, SUFFIX)
COMPOUND_MODIFIER_POS = (COMMON_NOUN, PROPER_NOUN, PREFIX)

COUNTABLE = "countable"
UNCOUNTABLE = "uncountable"
PLURAL_ONLY = "plural-only"
COUNTABILITIES = (COUNTABLE, UNCOUNTABLE, PLURAL_ONLY)

INDEFINITE = "indefinite"
DEFINITE = "definite"
NO_ARTICLE = "none"
ARTICLE_POLICIES = (INDEFINITE, DEFINITE, NO_ARTICLE)

# Per-word category ceilings of the full-scale dictionary
MAX_CATEGORIES = {COMMON: 5, PROPER: 10}


@dataclass(frozen=True)
class EnglishGloss:
    lemma: str
    countability: str = COUNTABLE
    article_policy: str = INDEFINITE
    irregular_plural: Optional[str] = None

    def __post_init__(self):
        if not self.lemma:
            raise ValueError("gloss lemma must not be empty")
        if self.countability not in COUNTABILITIES:
            raise ValueError(f"unknown countability {self.countability!r}")
        if self.article_policy not in ARTICLE_POLICIES:
            raise ValueError(f"unknown article policy {self.article_policy!r}")
        if self.irregular_plural and self.countability != COUNTABLE:
            raise ValueError(f"irregular plural given for {self.countability} gloss {self.lemma!r}")


@dataclass(frozen=True)
class Sense:
    categories: Tuple[str, ...]
    gloss: EnglishGloss


@dataclass(frozen=True)
class LexicalEntry:
    surface: str
    pos: str
    conjugation_class: Optional[str] = None
    senses: Tuple[Sense, ...] = ()
    line: int = 0

    @property
    def is_noun(self) -> bool:
        return self.pos in NOUN_POS

    @property
    def is_predicate(self) -> bool:
        return self.pos in PREDICATE_POS

    @property
    def categories(self) -> Tuple[str, ...]:
        seen = []
        for sense in self.senses:
            for category in sense.categories:
                if category not in seen:
                    seen.append(category)
        return tuple(seen)


@dataclass(frozen=True)
class CompoundAnalysis:
    head: LexicalEntry
    modifier: LexicalEntry
    relation: str
    gloss: EnglishGloss
    senses: Tuple[Sense, ...] = field(default=())


@dataclass(frozen=True)
class CompoundTemplate:
    category: str
    pattern: str
    article_policy: Optional[str] = None

    def render(self, head: EnglishGloss, modifier: EnglishGloss) -> EnglishGloss:
        text = (self.pattern
                .replace("{head}", head.lemma)
                .replace("{modifier:title}", modifier.lemma.title())
                .replace("{modifier}", modifier.lemma))
        if self.article_policy is None:
            plural = f"{modifier.lemma} {head.irregular_plural}" if head.irregular_plural else None
            return EnglishGloss(text, head.countability, head.article_policy, plural)
        return EnglishGloss(text, head.countability, self.article_policy)


# Head-category driven renderings; the deepest applicable category wins.
COMPOUND_TEMPLATES = (
    CompoundTemplate("ministry", "{head} of {modifier:title}", DEFINITE),
    CompoundTemplate("organization", "{head} of {modifier}", DEFINITE),
    CompoundTemplate("route", "along the {modifier}", NO_ARTICLE),
)
DEFAULT_COMPOUND_TEMPLATE = CompoundTemplate("modifier-head", "{modifier} {head}")


class Lexicon:
    """Entries indexed by surface form, plus the inflected-form index."""

    def __init__(self, entries: Sequence[LexicalEntry]):
        self._entries: Tuple[LexicalEntry, ...] = tuple(entries)
        self._by_surface: Dict[str, List[LexicalEntry]] = {}
        for entry in self._entries:
            existing = self._by_surface.setdefault(entry.surface, [])
            if any(other.pos == entry.pos for other in existing):
                raise LexiconError(f"duplicate {entry.pos} entry", line=entry.line or None, ident=entry.surface)
            existing.append(entry)
        self._forms = build_form_index(e for e in self._entries if e.is_predicate)

    def __contains__(self, surface: str) -> bool:
        return surface in self._by_surface

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def lookup(self, surface: str) -> List[LexicalEntry]:
        return list(self._by_surface.get(surface, ()))

    def lookup_pos(self, surface: str, *pos: str) -> List[LexicalEntry]:
        return [entry for entry in self._by_surface.get(surface, ()) if entry.pos in pos]

    def deinflect(self, surface: str) -> List[Tuple[str, VerbForm]]:
        return list(self._forms.get(surface, ()))

    def conjugation_class(self, lemma: str) -> Optional[str]:
        for entry in self.lookup_pos(lemma, *PREDICATE_POS):
            return entry.conjugation_class
        return None


def _parse_sense(raw: str) -> Tuple[Tuple[str, ...], EnglishGloss]:
    parts = [part.strip() for part in raw.split("|")]
    if len(parts) not in (4, 5):
        raise ValueError(f"sense {raw!r} needs 4 or 5 '|'-separated fields")
    categories = tuple(split_list(parts[0]))
    if not categories:
        raise ValueError(f"sense {raw!r} names no category")
    plural = parts[4] if len(parts) == 5 and parts[4] else None
    return categories, EnglishGloss(parts[1], parts[2], parts[3], plural)


def load_lexicon(source: str, ontology: CategoryHierarchy, source_name: str = "lexicon.tsv") -> Lexicon:
    """Parse `surface <TAB> pos <TAB> conjugation-class <TAB> senses` records."""
    entries = []
    seen = {}
    errors = []

    for record in iter_records(source):
        def fail(message, ident=None):
            errors.append(LexiconError(message, source_name, record.line, ident))

        if len(record.fields) != 4:
            fail(f"expected 4 fields, got {len(record.fields)}")
            continue
        surface, pos, conjugation, sense_field = record.fields
        if pos not in PARTS_OF_SPEECH:
            fail(f"unknown part of speech {pos!r}", surface)
            continue
        if (surface, pos) in seen:
            fail(f"duplicate {pos} entry (first on line {seen[surface, pos]})", surface)
            continue

        conjugation = None if conjugation == "-" else conjugation
        if pos in PREDICATE_POS:
            valid = (I_ADJECTIVE,) if pos == ADJECTIVE else VERB_CLASSES
            if conjugation not in valid:
                fail(f"{pos} needs a conjugation class from {', '.join(valid)}", surface)
                continue
            try:
                for form in forms_for(conjugation):
                    inflect(surface, conjugation, form)
            except ValueError as e:
                fail(str(e), surface)
                continue
        elif conjugation is not None:
            fail(f"{pos} cannot have conjugation class {conjugation!r}", surface)
            continue

        senses = []
        bad = False
        for raw in split_list(sense_field, ";"):
            try:
                categories, gloss = _parse_sense(raw)
            except ValueError as e:
                fail(str(e), surface)
                bad = True
                continue
            for category in categories:
                if category not in ontology:
                    fail(f"unknown category {category}", surface)
                    bad = True
            senses.append(Sense(categories, gloss))
        if bad:
            continue
        if pos not in PREDICATE_POS and not senses:
            fail(f"{pos} entry has no senses", surface)
            continue

        entry = LexicalEntry(surface, pos, conjugation, tuple(senses), record.line)
        for kind, ceiling in MAX_CATEGORIES.items():
            count = sum(1 for category in entry.categories if ontology.kind(category) == kind)
            if count > ceiling:
                fail(f"{count} {kind}-noun categories exceed the ceiling of {ceiling}", surface)
                bad = True
        if bad:
            continue

        seen[surface, pos] = record.line
        entries.append(entry)

    raise_collected(errors)
    lexicon = Lexicon(entries)
    logger.debug("Loaded %d lexical entries", len(lexicon))
    return lexicon


def lookup(lex: Lexicon, surface: str) -> List[LexicalEntry]:
    return lex.lookup(surface)


def _choose_template(ontology: CategoryHierarchy, categories: Sequence[str]) -> CompoundTemplate:
    templates = [t for t in COMPOUND_TEMPLATES if t.category in ontology]
    if not templates or not categories:
        return DEFAULT_COMPOUND_TEMPLATE
    match = ontology.best_match(categories, CategoryConstraint(tuple(t.category for t in templates)))
    if match is None:
        return DEFAULT_COMPOUND_TEMPLATE
    return next(t for t in templates if t.category == match.member)


def analyze_compound(lex: Lexicon, ontology: CategoryHierarchy, surface: str) -> Optional[CompoundAnalysis]:
    """Binary right-headed split, longest head first."""
    for i in range(1, len(surface)):
        modifier_surface = surface[:i].rstrip("-")
        head_surface = surface[i:].lstrip("-")
        if not modifier_surface or not head_surface:
            continue
        heads = lex.lookup_pos(head_surface, *COMPOUND_HEAD_POS)
        modifiers = lex.lookup_pos(modifier_surface, *COMPOUND_MODIFIER_POS)
        if not heads or not modifiers:
            continue

        head, modifier = heads[0], modifiers[0]
        modifier_gloss = modifier.senses[0].gloss
        senses = []
        relations = []
        for sense in head.senses:
            template = _choose_template(ontology, sense.categories)
            senses.append(Sense(sense.categories, template.render(sense.gloss, modifier_gloss)))
            relations.append(template.category)
        logger.debug("Compound %s = %s + %s (%s)", surface, modifier.surface, head.surface, relations[0])
        return CompoundAnalysis(head, modifier, relations[0], senses[0].gloss, tuple(senses))
    return None


def segment(lex: Lexicon, token: str) -> Tuple[str, List[str]]:
    """Split trailing hyphen-joined particles off a token."""
    parts = token.split("-")
    particles: List[str] = []
    while len(parts) > 1 and parts[-1] in PARTICLES and "-".join(parts) not in lex:
        particles.insert(0, parts.pop())
    return "-".join(parts), particles

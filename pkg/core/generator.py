"""
English surface realization: verb groups, noun phrases with articles and
number, pronoun case, and clause chains.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from core.lexicon import (COUNTABLE, DEFINITE, NO_ARTICLE, PLURAL_ONLY, UNCOUNTABLE, EnglishGloss)

logger = logging.getLogger("generator")

PRESENT = "present"
PAST = "past"

SUBJECT_CASE = "subject"
OBJECT_CASE = "object"

# lemma -> (past, past participle)
IRREGULAR_VERBS = {
    "be": ("was", "been"),
    "build": ("built", "built"),
    "buy": ("bought", "bought"),
    "come": ("came", "come"),
    "do": ("did", "done"),
    "get": ("got", "gotten"),
    "go": ("went", "gone"),
    "hang": ("hung", "hung"),
    "have": ("had", "had"),
    "make": ("made", "made"),
    "put": ("put", "put"),
    "ride": ("rode", "ridden"),
    "run": ("ran", "run"),
    "see": ("saw", "seen"),
    "sit": ("sat", "sat"),
    "spread": ("spread", "spread"),
    "take": ("took", "taken"),
    "tie": ("tied", "tied"),
}

IRREGULAR_PLURALS = {
    "cattle": "cattle",
    "child": "children",
    "deer": "deer",
    "fish": "fish",
    "foot": "feet",
    "knife": "knives",
    "leaf": "leaves",
    "man": "men",
    "mouse": "mice",
    "person": "people",
    "sheep": "sheep",
    "tooth": "teeth",
    "wolf": "wolves",
    "woman": "women",
}

# Final-stress polysyllables that double their last consonant
DOUBLING = {"admit", "commit", "control", "occur", "patrol", "permit", "prefer", "refer", "regret"}

# subject form -> (object, possessive, person, number)
PRONOUNS = {
    "I": ("me", "my", 1, "sg"),
    "you": ("you", "your", 2, "sg"),
    "he": ("him", "his", 3, "sg"),
    "she": ("her", "her", 3, "sg"),
    "it": ("it", "its", 3, "sg"),
    "we": ("us", "our", 1, "pl"),
    "they": ("them", "their", 3, "pl"),
}

VOWELS = "aeiou"


@dataclass(frozen=True)
class VerbPlan:
    tense: str = PRESENT
    progressive: bool = False
    passive: bool = False
    negative: bool = False


@dataclass(frozen=True)
class NounPlan:
    gloss: EnglishGloss
    determiner: Optional[str] = None
    zero_article: bool = False
    plural: bool = False
    tail: str = ""
    possessor: Optional["NounPlan"] = None

    @property
    def is_pronoun(self) -> bool:
        return self.gloss.lemma in PRONOUNS and self.gloss.article_policy == NO_ARTICLE

    @property
    def person(self) -> int:
        return PRONOUNS[self.gloss.lemma][2] if self.is_pronoun else 3

    @property
    def number(self) -> str:
        if self.is_pronoun:
            return PRONOUNS[self.gloss.lemma][3]
        if self.plural or self.gloss.countability == PLURAL_ONLY:
            return "pl"
        return "sg"


def pronoun(lemma: str, case: str = SUBJECT_CASE) -> str:
    obj, possessive, _, _ = PRONOUNS[lemma]
    return {SUBJECT_CASE: lemma, OBJECT_CASE: obj, "possessive": possessive}[case]


def _is_cvc_monosyllable(word: str) -> bool:
    if len(re.findall(f"[{VOWELS}]+", word)) != 1:
        return False
    return bool(re.search(f"[^{VOWELS}][{VOWELS}][^{VOWELS}wxy]$", word))


def _doubles(word: str) -> bool:
    return word in DOUBLING or _is_cvc_monosyllable(word)


def past_tense(verb: str) -> str:
    if verb in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[verb][0]
    return _regular_ed(verb)


def past_participle(verb: str) -> str:
    if verb in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[verb][1]
    return _regular_ed(verb)


def _regular_ed(verb: str) -> str:
    if verb.endswith("e"):
        return verb + "d"
    if re.search(f"[^{VOWELS}]y$", verb):
        return verb[:-1] + "ied"
    if _doubles(verb):
        return verb + verb[-1] + "ed"
    return verb + "ed"


def present_participle(verb: str) -> str:
    if verb == "be":
        return "being"
    if verb.endswith("ie"):
        return verb[:-2] + "ying"
    if verb.endswith("e") and not verb.endswith(("ee", "ye", "oe")):
        return verb[:-1] + "ing"
    if _doubles(verb):
        return verb + verb[-1] + "ing"
    return verb + "ing"


def third_singular(verb: str) -> str:
    if verb == "have":
        return "has"
    if verb == "be":
        return "is"
    if re.search(r"(s|sh|ch|x|z|o)$", verb):
        return verb + "es"
    if re.search(f"[^{VOWELS}]y$", verb):
        return verb[:-1] + "ies"
    return verb + "s"


def _be(tense: str, person: int, number: str) -> str:
    if tense == PAST:
        return "was" if number == "sg" and person != 2 else "were"
    if number == "sg" and person == 1:
        return "am"
    return "is" if number == "sg" and person == 3 else "are"


def _finite(verb: str, tense: str, person: int, number: str) -> str:
    if verb == "be":
        return _be(tense, person, number)
    if tense == PAST:
        return past_tense(verb)
    return third_singular(verb) if person == 3 and number == "sg" else verb


def inflect_verb(lemma: str, plan: VerbPlan, person: int = 3, number: str = "sg") -> str:
    """Verb group for a (possibly multi-word) verb; only the first word inflects."""
    verb, _, particle = lemma.partition(" ")
    if plan.passive:
        chain = ["be"] + (["being"] if plan.progressive else []) + [past_participle(verb)]
    elif plan.progressive:
        chain = ["be", present_participle(verb)]
    elif plan.negative and verb != "be":
        chain = ["do", verb]
    else:
        chain = [verb]

    words = [_finite(chain[0], plan.tense, person, number)] + chain[1:]
    if plan.negative:
        words.insert(1, "not")
    if particle:
        words.append(particle)
    return " ".join(words)


def pluralize(word: str, irregular: Optional[str] = None) -> str:
    if irregular:
        return irregular
    head, _, last = word.rpartition(" ")
    prefix = head + " " if head else ""
    if last in IRREGULAR_PLURALS:
        return prefix + IRREGULAR_PLURALS[last]
    if re.search(r"(s|x|z|ch|sh)$", last):
        return prefix + last + "es"
    if re.search(f"[^{VOWELS}]y$", last):
        return prefix + last[:-1] + "ies"
    return prefix + last + "s"


def choose_article(gloss: EnglishGloss, plural: bool = False, zero: bool = False) -> str:
    if zero or gloss.article_policy == NO_ARTICLE:
        return ""
    if gloss.article_policy == DEFINITE:
        return "the"
    if plural or gloss.countability in (UNCOUNTABLE, PLURAL_ONLY):
        return ""
    return "an" if gloss.lemma[:1].lower() in VOWELS else "a"


def noun_phrase(plan: NounPlan, case: str = SUBJECT_CASE) -> str:
    if plan.is_pronoun:
        return pronoun(plan.gloss.lemma, case)

    gloss = plan.gloss
    head = gloss.lemma
    if plan.plural and gloss.countability == COUNTABLE:
        head = pluralize(head, gloss.irregular_plural)

    words = []
    if plan.determiner:
        words.append(plan.determiner)
    elif plan.possessor is not None:
        if plan.possessor.is_pronoun:
            words.append(pronoun(plan.possessor.gloss.lemma, "possessive"))
        else:
            words.append(noun_phrase(plan.possessor, OBJECT_CASE) + "'s")
    else:
        article = choose_article(gloss, plan.plural, plan.zero_article)
        if article:
            words.append(article)
    words.append(head)
    if plan.tail:
        words.append(plan.tail)
    return " ".join(words)


@dataclass(frozen=True)
class EnglishClauseSpec:
    subject: NounPlan
    verb: str
    plan: VerbPlan
    complement: str = ""
    objects: Tuple[str, ...] = ()
    preps: Tuple[str, ...] = ()
    adverbs: Tuple[str, ...] = ()
    connective: str = ""
    pattern_id: str = ""
    level: str = ""

    @property
    def subject_text(self) -> str:
        return noun_phrase(self.subject, SUBJECT_CASE)


def realize_clause(spec: EnglishClauseSpec, with_subject: bool = True) -> str:
    words = []
    if with_subject:
        words.append(spec.subject_text)
    words.append(inflect_verb(spec.verb, spec.plan, spec.subject.person, spec.subject.number))
    words.append(spec.complement)
    words.extend(spec.objects)
    words.extend(spec.preps)
    words.extend(spec.adverbs)
    return " ".join(word for word in words if word)


def _coordinate(parts: Sequence[str]) -> str:
    if len(parts) == 1:
        return parts[0]
    return ", ".join(parts[:-1]) + " and " + parts[-1]


def _capitalize(text: str) -> str:
    return text[:1].upper() + text[1:]


def realize_sentence(specs: Sequence[EnglishClauseSpec]) -> str:
    """Join clause chains: "and" inside a te-chain, ", but" between contrasted chains."""
    if not specs:
        return ""
    chains: List[List[EnglishClauseSpec]] = [[]]
    for spec in specs:
        chains[-1].append(spec)
        if spec.connective != "and":
            chains.append([])
    chains = [chain for chain in chains if chain]

    text = ""
    for number, chain in enumerate(chains):
        subject = chain[0].subject_text
        parts = [realize_clause(chain[0])]
        for spec in chain[1:]:
            parts.append(realize_clause(spec, with_subject=spec.subject_text != subject))
        chain_text = _coordinate(parts)
        if number:
            joiner = ", but " if chains[number - 1][-1].connective == "but" else ", "
            text += joiner + chain_text
        else:
            text = chain_text
    sentence = _capitalize(" ".join(text.split())) + "."
    logger.debug("Realized %r", sentence)
    return sentence

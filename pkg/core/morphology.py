"""
Japanese conjugation over hyphen-free romanization.

Forms are generated from the dictionary form and its conjugation class;
deinflection is the inverse lookup over every form the lexicon's verbs and
adjectives can take, so the two directions always agree.

Supported classes:
- godan-k, godan-g, godan-s, godan-t, godan-n, godan-b, godan-m, godan-r, godan-w
- ichidan
- i-adjective
- irregular tables: iku, suru, kuru
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

logger = logging.getLogger("morphology")

# row -> (dictionary ending, negative/passive stem ending, te-form ending, ta-form ending)
GODAN_ROWS = {
    "godan-k": ("ku", "ka", "ite", "ita"),
    "godan-g": ("gu", "ga", "ide", "ida"),
    "godan-s": ("su", "sa", "shite", "shita"),
    "godan-t": ("tsu", "ta", "tte", "tta"),
    "godan-n": ("nu", "na", "nde", "nda"),
    "godan-b": ("bu", "ba", "nde", "nda"),
    "godan-m": ("mu", "ma", "nde", "nda"),
    "godan-r": ("ru", "ra", "tte", "tta"),
    "godan-w": ("u", "wa", "tte", "tta"),
}

# irregular id -> (dictionary ending, negative stem, passive, te-form, ta-form)
IRREGULAR_VERBS = {
    "iku": ("ku", "ka", "kareru", "tte", "tta"),
    "suru": ("suru", "shi", "sareru", "shite", "shita"),
    "kuru": ("kuru", "ko", "korareru", "kite", "kita"),
}

ICHIDAN = "ichidan"
I_ADJECTIVE = "i-adjective"

VERB_CLASSES = tuple(GODAN_ROWS) + (ICHIDAN,) + tuple(IRREGULAR_VERBS)
CONJUGATION_CLASSES = VERB_CLASSES + (I_ADJECTIVE,)

ACTIVE, PASSIVE = "active", "passive"
SIMPLE, PROGRESSIVE = "simple", "progressive"
AFFIRMATIVE, NEGATIVE = "affirmative", "negative"
PLAIN, PAST, TE = "plain", "past", "te"


@dataclass(frozen=True)
class VerbForm:
    """The morphological feature bundle a surface form carries."""

    voice: str = ACTIVE
    aspect: str = SIMPLE
    polarity: str = AFFIRMATIVE
    ending: str = PLAIN

    def __str__(self) -> str:
        parts = [part for part in (self.voice, self.aspect, self.polarity) if part not in (ACTIVE, SIMPLE, AFFIRMATIVE)]
        parts.append(self.ending)
        return "+".join(parts)


def verb_forms() -> Tuple[VerbForm, ...]:
    return tuple(VerbForm(voice, aspect, polarity, ending)
                 for voice, aspect, polarity, ending in itertools.product(
                     (ACTIVE, PASSIVE), (SIMPLE, PROGRESSIVE), (AFFIRMATIVE, NEGATIVE), (PLAIN, PAST, TE)))


def adjective_forms() -> Tuple[VerbForm, ...]:
    return tuple(VerbForm(polarity=polarity, ending=ending)
                 for polarity, ending in itertools.product((AFFIRMATIVE, NEGATIVE), (PLAIN, PAST, TE)))


def forms_for(conjugation_class: str) -> Tuple[VerbForm, ...]:
    return adjective_forms() if conjugation_class == I_ADJECTIVE else verb_forms()


def _stem(lemma: str, ending: str, allow_empty: bool = False) -> str:
    if not lemma.endswith(ending) or (len(lemma) == len(ending) and not allow_empty):
        raise ValueError(f"{lemma!r} does not end in {ending!r}")
    return lemma[:-len(ending)]


def _parts(lemma: str, conjugation_class: str) -> Dict[str, str]:
    """Stems a lemma conjugates from: negative stem, passive, te, ta."""
    if conjugation_class == ICHIDAN:
        stem = _stem(lemma, "ru")
        return {"neg": stem, "passive": stem + "rareru", "te": stem + "te", "ta": stem + "ta"}
    if conjugation_class in GODAN_ROWS:
        ending, a_stem, te, ta = GODAN_ROWS[conjugation_class]
        stem = _stem(lemma, ending)
        return {"neg": stem + a_stem, "passive": stem + a_stem + "reru", "te": stem + te, "ta": stem + ta}
    if conjugation_class in IRREGULAR_VERBS:
        ending, neg, passive, te, ta = IRREGULAR_VERBS[conjugation_class]
        stem = _stem(lemma, ending, allow_empty=True)
        return {"neg": stem + neg, "passive": stem + passive, "te": stem + te, "ta": stem + ta}
    raise ValueError(f"unknown conjugation class {conjugation_class!r}")


def _inflect_adjective(lemma: str, form: VerbForm) -> str:
    if form.voice != ACTIVE or form.aspect != SIMPLE:
        raise ValueError(f"adjectives have no {form.voice}/{form.aspect} forms")
    stem = _stem(lemma, "i")
    if form.polarity == NEGATIVE:
        stem, lemma = stem + "kuna", stem + "kunai"
    return {PLAIN: lemma, PAST: stem + "katta", TE: stem + "kute"}[form.ending]


def inflect(lemma: str, conjugation_class: str, form: VerbForm) -> str:
    if conjugation_class == I_ADJECTIVE:
        return _inflect_adjective(lemma, form)

    base, base_class = lemma, conjugation_class
    if form.voice == PASSIVE:
        base, base_class = _parts(base, base_class)["passive"], ICHIDAN
    if form.aspect == PROGRESSIVE:
        base, base_class = _parts(base, base_class)["te"] + "iru", ICHIDAN

    if form.polarity == NEGATIVE:
        # -nai conjugates like an i-adjective
        return _inflect_adjective(_parts(base, base_class)["neg"] + "nai", VerbForm(ending=form.ending))

    if form.ending == PLAIN:
        return base
    return _parts(base, base_class)["ta" if form.ending == PAST else "te"]


def build_form_index(entries: Iterable) -> Dict[str, List[Tuple[str, VerbForm]]]:
    """Map every generated surface form to its (lemma, form) analyses.

    `entries` are lexical entries with `surface` and `conjugation_class`.
    """
    index: Dict[str, List[Tuple[str, VerbForm]]] = {}
    for entry in entries:
        if not entry.conjugation_class:
            continue
        for form in forms_for(entry.conjugation_class):
            surface = inflect(entry.surface, entry.conjugation_class, form)
            analyses = index.setdefault(surface, [])
            if (entry.surface, form) not in analyses:
                analyses.append((entry.surface, form))
    logger.debug("Built form index with %d surface forms", len(index))
    return index

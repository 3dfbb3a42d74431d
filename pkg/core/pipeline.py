import logging
import os
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from core.analyzer import parse_sentence, tokenize
from core.errors import DictionaryError, EncodingError, TranslationError
from core.generator import realize_sentence
from core.lexicon import Lexicon, load_lexicon
from core.ontology import CategoryHierarchy, load_hierarchy
from core.patterns import PatternDictionary, load_patterns
from core.rewriter import RewriteRuleSet, apply_rewrites, load_rewrites, render_japanese
from core.trace import Trace
from core.transfer import DiscourseContext, transfer_clause
from utils.tsv import read_text

logger = logging.getLogger("pipeline")

CATEGORY_FILE = "categories.tsv"
LEXICON_FILE = "lexicon.tsv"
PATTERN_FILE = "patterns.tsv"
REWRITE_FILE = "rewrites.tsv"

_SENTENCE = re.compile(r"[^.]*\.|[^.]+$")


@dataclass(frozen=True)
class Dictionaries:
    ontology: CategoryHierarchy
    lexicon: Lexicon
    patterns: PatternDictionary
    rewrites: RewriteRuleSet
    directory: str = ""


def _read(directory: str, name: str) -> str:
    path = os.path.join(directory, name)
    try:
        return read_text(path)
    except OSError as e:
        raise DictionaryError(f"cannot read dictionary file: {e.strerror}", path)
    except EncodingError as e:
        raise DictionaryError(f"not valid UTF-8 at byte {e.offset}", path)


def load_dictionaries(directory: str) -> Dictionaries:
    ontology = load_hierarchy(_read(directory, CATEGORY_FILE), CATEGORY_FILE)
    lexicon = load_lexicon(_read(directory, LEXICON_FILE), ontology, LEXICON_FILE)
    patterns = load_patterns(_read(directory, PATTERN_FILE), lexicon, ontology, PATTERN_FILE)
    rewrites = load_rewrites(_read(directory, REWRITE_FILE), lexicon, ontology, REWRITE_FILE)
    logger.info("Loaded dictionaries from %s: %d categories, %d entries, %d patterns, %d rewrite rules",
                directory, len(ontology), len(lexicon), len(patterns), len(rewrites))
    return Dictionaries(ontology, lexicon, patterns, rewrites, directory)


def validate_dictionaries(directory: str) -> List[DictionaryError]:
    """Every problem across the four files; files that depend on a broken one are skipped."""
    try:
        ontology = load_hierarchy(_read(directory, CATEGORY_FILE), CATEGORY_FILE)
    except DictionaryError as e:
        return list(e.errors)
    try:
        lexicon = load_lexicon(_read(directory, LEXICON_FILE), ontology, LEXICON_FILE)
    except DictionaryError as e:
        return list(e.errors)

    errors: List[DictionaryError] = []
    try:
        load_patterns(_read(directory, PATTERN_FILE), lexicon, ontology, PATTERN_FILE)
    except DictionaryError as e:
        errors.extend(e.errors)
    try:
        load_rewrites(_read(directory, REWRITE_FILE), lexicon, ontology, REWRITE_FILE)
    except DictionaryError as e:
        errors.extend(e.errors)
    return errors


def split_sentences(text: str) -> List[str]:
    return [match.strip() for match in _SENTENCE.findall(text) if match.strip()]


def translate_sentence(dicts: Dictionaries, sentence: str, ctx: DiscourseContext, trace: Trace,
                       rewrite: bool = True, habitual_category: Optional[str] = "frequency") -> str:
    trace.add("sentence", source=sentence)
    trace.add("tokens", tokens=tokenize(sentence))
    clauses = parse_sentence(dicts.lexicon, dicts.ontology, sentence, habitual_category)
    trace.add("clauses", count=len(clauses), predicates=[clause.predicate for clause in clauses],
              connectives=[clause.subjective.connective_to_next for clause in clauses])

    if rewrite:
        clauses, steps = apply_rewrites(dicts.rewrites, clauses, dicts.ontology)
        for step in steps.steps:
            trace.add("rewrite", rule=step.rule_id, consumed=step.consumed.surface, adjunct=step.produced.surface())
        if steps.steps:
            trace.add("rewritten", japanese=render_japanese(clauses, dicts.lexicon), count=len(clauses))

    specs = [transfer_clause(clause, dicts.patterns, dicts.ontology, dicts.lexicon, ctx, trace)
             for clause in clauses]
    english = realize_sentence(specs)
    trace.add("output", english=english)
    return english


def translate_document(dicts: Dictionaries, text: str, ctx: Optional[DiscourseContext] = None,
                       rewrite: bool = True, trace: Optional[Trace] = None,
                       habitual_category: Optional[str] = "frequency",
                       default_pronoun: str = "it") -> Tuple[str, Trace]:
    """Translate sentence by sentence over one discourse context.

    A sentence that fails analysis or transfer is left out of the output and
    recorded as an error event; the rest of the document still translates.
    """
    trace = trace if trace is not None else Trace()
    ctx = ctx if ctx is not None else DiscourseContext(default_pronoun=default_pronoun)
    outputs = []
    for sentence in split_sentences(text):
        try:
            outputs.append(translate_sentence(dicts, sentence, ctx, trace, rewrite, habitual_category))
        except TranslationError as e:
            logger.warning("Could not translate %r: %s", sentence, e)
            trace.add("error", source=sentence, error=type(e).__name__, message=str(e))
    return " ".join(outputs), trace

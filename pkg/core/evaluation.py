"""
Corpus regression and grading.

Corpus file: `id <TAB> source <TAB> expected [<TAB> #tag ...]`. Consecutive
lines form one document that shares a discourse context; blank lines
separate documents. Grade file: `sentence-id <TAB> grader-id <TAB> grade`.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.errors import CorpusError, GradeError
from core.pipeline import Dictionaries, translate_document
from core.trace import Trace
from core.transfer import DiscourseContext
from utils.tsv import iter_records

logger = logging.getLogger("evaluation")

BLIND = "blind"
WINDOW = "window"
MODES = (BLIND, WINDOW)


@dataclass(frozen=True)
class CorpusCase:
    id: str
    source: str
    expected: str
    tags: Tuple[str, ...] = ()
    document: int = 0
    line: int = 0


@dataclass(frozen=True)
class Corpus:
    cases: Tuple[CorpusCase, ...]

    def __len__(self) -> int:
        return len(self.cases)

    @property
    def documents(self) -> List[List[CorpusCase]]:
        grouped: Dict[int, List[CorpusCase]] = {}
        for case in self.cases:
            grouped.setdefault(case.document, []).append(case)
        return list(grouped.values())


def parse_corpus(text: str) -> Corpus:
    cases = []
    seen = {}
    document = 0
    in_document = False
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            if in_document:
                document += 1
                in_document = False
            continue
        if stripped.startswith("#"):
            continue
        fields = [part.strip() for part in raw.split("\t")]
        if len(fields) not in (3, 4):
            raise CorpusError(f"expected 3 or 4 tab-separated fields, got {len(fields)}", number)
        case_id, source, expected = fields[:3]
        if not case_id or not source or not expected:
            raise CorpusError("empty id, source or expected string", number)
        if case_id in seen:
            raise CorpusError(f"duplicate case id {case_id} (first on line {seen[case_id]})", number)
        seen[case_id] = number
        tags = ()
        if len(fields) == 4:
            tags = tuple(tag.lstrip("#") for tag in fields[3].replace(",", " ").split() if tag.lstrip("#"))
        cases.append(CorpusCase(case_id, source, expected, tags, document, number))
        in_document = True
    return Corpus(tuple(cases))


def normalize(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class CaseResult:
    id: str
    source: str
    expected: str
    output: str
    passed: bool
    excluded: bool
    tags: Tuple[str, ...]
    levels: Dict[str, int]
    errors: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "id": self.id,
            "source": self.source,
            "expected": self.expected,
            "output": self.output,
            "passed": self.passed,
            "excluded": self.excluded,
            "tags": list(self.tags),
            "levels": dict(self.levels),
            "errors": list(self.errors),
        }


@dataclass(frozen=True)
class EvalReport:
    mode: str
    results: Tuple[CaseResult, ...]
    level_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def gated(self) -> List[CaseResult]:
        return [result for result in self.results if not result.excluded]

    @property
    def total(self) -> int:
        return len(self.gated)

    @property
    def passes(self) -> int:
        return sum(1 for result in self.gated if result.passed)

    @property
    def pass_rate(self) -> Fraction:
        return Fraction(self.passes, self.total) if self.total else Fraction(0)

    @property
    def clauses(self) -> int:
        return sum(self.level_counts.values())

    @property
    def failures(self) -> List[CaseResult]:
        return [result for result in self.gated if not result.passed]

    def to_dict(self) -> Dict:
        return {
            "mode": self.mode,
            "total": self.total,
            "passes": self.passes,
            "pass_rate": float(self.pass_rate),
            "excluded": [result.id for result in self.results if result.excluded],
            "level_counts": dict(self.level_counts),
            "clauses": self.clauses,
            "cases": [result.to_dict() for result in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def _run_document(dicts: Dictionaries, cases: Sequence[CorpusCase], excluded_tags: Iterable[str],
                  rewrite: bool, habitual_category: Optional[str], default_pronoun: str) -> List[CaseResult]:
    ctx = DiscourseContext(default_pronoun=default_pronoun)
    excluded_tags = set(excluded_tags)
    results = []
    for case in cases:
        output, trace = translate_document(dicts, case.source, ctx=ctx, rewrite=rewrite, trace=Trace(),
                                           habitual_category=habitual_category)
        passed = normalize(output) == normalize(case.expected) and not trace.errors
        results.append(CaseResult(
            id=case.id,
            source=case.source,
            expected=case.expected,
            output=output,
            passed=passed,
            excluded=bool(excluded_tags.intersection(case.tags)),
            tags=case.tags,
            levels=trace.level_counts(),
            errors=tuple(event["message"] for event in trace.errors),
        ))
    return results


def run_corpus(dicts: Dictionaries, corpus: Corpus, mode: str = BLIND,
               excluded_tags: Iterable[str] = ("paper-garbled",), workers: int = 4,
               rewrite: bool = True, habitual_category: Optional[str] = "frequency",
               default_pronoun: str = "it") -> EvalReport:
    """Translate every case and compare against its expected string.

    Documents run concurrently; cases within a document run in order.
    """
    if not len(corpus):
        raise CorpusError("corpus has no cases")
    if mode not in MODES:
        raise CorpusError(f"unknown mode {mode!r}")
    excluded_tags = tuple(excluded_tags)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        batches = list(pool.map(lambda cases: _run_document(dicts, cases, excluded_tags, rewrite,
                                                            habitual_category, default_pronoun),
                                corpus.documents))

    by_id = {result.id: result for batch in batches for result in batch}
    results = tuple(by_id[case.id] for case in corpus.cases)

    level_counts: Dict[str, int] = {}
    for result in results:
        for level, count in result.levels.items():
            level_counts[level] = level_counts.get(level, 0) + count

    report = EvalReport(mode, results, level_counts)
    logger.info("Evaluated %d cases (%d excluded): %d/%d passed", len(results),
                len(results) - report.total, report.passes, report.total)
    return report


@dataclass(frozen=True)
class GradeRecord:
    sentence_id: str
    grader_id: str
    grade: int
    line: int = 0


@dataclass(frozen=True)
class SentenceGrade:
    sentence_id: str
    mean: Fraction
    passed: bool
    graders: int


@dataclass(frozen=True)
class GradeSummary:
    sentences: Tuple[SentenceGrade, ...]
    threshold: float

    @property
    def passes(self) -> int:
        return sum(1 for sentence in self.sentences if sentence.passed)

    @property
    def pass_rate(self) -> Fraction:
        return Fraction(self.passes, len(self.sentences)) if self.sentences else Fraction(0)


def parse_grades(text: str, min_grade: int = 0, max_grade: int = 10) -> List[GradeRecord]:
    records = []
    for record in iter_records(text):
        if len(record.fields) != 3:
            raise GradeError(f"expected 3 fields, got {len(record.fields)}", record.line)
        sentence_id, grader_id, grade_text = record.fields
        try:
            grade = int(grade_text)
        except ValueError:
            raise GradeError(f"grade {grade_text!r} is not an integer", record.line)
        if not min_grade <= grade <= max_grade:
            raise GradeError(f"grade {grade} outside [{min_grade}, {max_grade}]", record.line)
        records.append(GradeRecord(sentence_id, grader_id, grade, record.line))
    return records


def score_grades(records: Iterable[GradeRecord], sentence_ids: Optional[Sequence[str]] = None,
                 threshold: float = 6.0, min_grade: int = 0, max_grade: int = 10) -> GradeSummary:
    """A sentence passes when its mean grade across graders reaches the threshold."""
    grades: Dict[str, List[int]] = {}
    known = set(sentence_ids) if sentence_ids is not None else None
    for record in records:
        if not min_grade <= record.grade <= max_grade:
            raise GradeError(f"grade {record.grade} outside [{min_grade}, {max_grade}]", record.line or None)
        if known is not None and record.sentence_id not in known:
            raise GradeError(f"unknown sentence id {record.sentence_id}", record.line or None)
        grades.setdefault(record.sentence_id, []).append(record.grade)

    if not grades:
        raise GradeError("no grade records")
    order = list(sentence_ids) if sentence_ids is not None else sorted(grades)
    missing = [sentence_id for sentence_id in order if sentence_id not in grades]
    if missing:
        raise GradeError(f"no grades for {', '.join(missing)}")

    limit = Fraction(str(threshold))
    sentences = []
    for sentence_id in order:
        values = grades[sentence_id]
        mean = Fraction(sum(values), len(values))
        sentences.append(SentenceGrade(sentence_id, mean, mean >= limit, len(values)))
    return GradeSummary(tuple(sentences), threshold)

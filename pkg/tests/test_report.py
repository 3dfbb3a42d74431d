import json
import os

import pytest

from core.evaluation import parse_corpus, parse_grades, run_corpus, score_grades
from reports.report_generator import ReportGenerator
from tests.conftest import GRADES_FILE
from utils.config import Config
from utils.tsv import read_text


@pytest.fixture
def generator(tmp_path):
    return ReportGenerator(Config(str(tmp_path / "none.json")), str(tmp_path / "out"))


def test_eval_report(dicts, corpus, generator):
    report = run_corpus(dicts, corpus)
    paths = generator.generate_eval_report(report)

    with open(paths["json"], encoding="utf-8") as f:
        assert json.load(f)["total"] == 20

    page = read_text(paths["html"])
    assert "{{" not in page
    assert "Translation Regression Report" in page
    assert "20/20 passed" in page
    assert "data:image/png;base64," in page
    for case in corpus.cases:
        assert f"<td>{case.id}</td>" in page


def test_report_escapes_text(dicts, generator):
    corpus = parse_corpus("x\tkanojo-wa hana-ni mizu-o kaketa.\t<b>She</b> poured water.\n")
    paths = generator.generate_eval_report(run_corpus(dicts, corpus), include_charts=False, report_name="escaped")
    page = read_text(paths["html"])
    assert "&lt;b&gt;She&lt;/b&gt;" in page
    assert "<b>She</b>" not in page
    assert os.path.basename(paths["html"]) == "escaped.html"


def test_grade_report(generator):
    summary = score_grades(parse_grades(read_text(GRADES_FILE)))
    path = generator.generate_grade_report(summary)
    page = read_text(path)
    assert "6/10 sentences pass" in page
    assert "<td>s02</td>" in page
    assert "5.67" in page
    assert "data:image/png;base64," in page


def test_reports_dir_from_config(tmp_path):
    config = Config(str(tmp_path / "none.json"))
    config.set("evaluation", "reports_dir", str(tmp_path / "configured"))
    generator = ReportGenerator(config)
    assert os.path.isdir(generator.reports_dir)

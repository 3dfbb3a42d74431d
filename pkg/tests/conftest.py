import os
import shutil

import pytest

from core.evaluation import parse_corpus
from core.pipeline import load_dictionaries, translate_document
from utils.tsv import read_text

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DICT_DIR = os.path.join(ROOT, "data", "dict")
CORPUS_FILE = os.path.join(ROOT, "data", "corpus.tsv")
GRADES_FILE = os.path.join(ROOT, "data", "grades_sample.tsv")


@pytest.fixture(scope="session")
def dicts():
    return load_dictionaries(DICT_DIR)


@pytest.fixture(scope="session")
def ont(dicts):
    return dicts.ontology


@pytest.fixture(scope="session")
def lex(dicts):
    return dicts.lexicon


@pytest.fixture(scope="session")
def pd(dicts):
    return dicts.patterns


@pytest.fixture(scope="session")
def corpus():
    return parse_corpus(read_text(CORPUS_FILE))


@pytest.fixture
def translate(dicts):
    def _translate(text, **kwargs):
        return translate_document(dicts, text, **kwargs)[0]
    return _translate


@pytest.fixture
def dict_copy(tmp_path):
    """Copy the shipped dictionaries, then apply (file, old, new) edits."""
    def _copy(*edits):
        target = tmp_path / "dict"
        shutil.copytree(DICT_DIR, target)
        for name, old, new in edits:
            path = target / name
            text = path.read_text(encoding="utf-8")
            assert old in text, f"{old!r} not found in {name}"
            path.write_text(text.replace(old, new), encoding="utf-8")
        return str(target)
    return _copy

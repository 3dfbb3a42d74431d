import os

import pytest

from core.errors import DictionaryError, EncodingError
from core.pipeline import load_dictionaries, split_sentences, translate_document, validate_dictionaries
from core.transfer import DiscourseContext
from tests.conftest import DICT_DIR
from utils.tsv import read_text

RIVER = "kare-wa basu-ni notte gakkō-e itta ga, watashi-wa kawa-ni sotte aruite gakkō-e itta."
RIVER_EN = "He went to school by bus, but I went to school on foot along the river."


def test_corpus_documents_translate(dicts, corpus):
    checked = 0
    for document in corpus.documents:
        if any("paper-garbled" in case.tags for case in document):
            continue
        source = " ".join(case.source for case in document)
        expected = " ".join(case.expected for case in document)
        output, trace = translate_document(dicts, source)
        assert output == expected
        assert not trace.errors
        checked += len(document)
    assert checked == 20


def test_te_chain_sentence(translate):
    assert translate(RIVER) == RIVER_EN


def test_tablecloth(translate):
    assert translate("kanojo-wa shokutaku-ni tēburukurosu-o kaketa.") == "She spread a tablecloth on a dining table."


def test_literal_translation_skips_rewriting(dicts):
    output, trace = translate_document(dicts, RIVER, rewrite=False)
    assert output == "He rode a bus and went to school, but I paralleled the river, walked and went to school."
    assert not trace.of_stage("rewrite")


def test_empty_document(dicts):
    output, trace = translate_document(dicts, "   ")
    assert output == ""
    assert len(trace) == 0


def test_bad_sentence_does_not_stop_the_document(dicts):
    text = "kanojo-wa hana-ni mizu-o kaketa. zzz-o kaketa. kare-wa gakkō-e itta."
    output, trace = translate_document(dicts, text)
    assert output == "She poured water on a flower. He went to school."
    [error] = trace.errors
    assert error["error"] == "AnalysisError"
    assert error["source"] == "zzz-o kaketa."


def test_trace_stages(dicts):
    _, trace = translate_document(dicts, "kanojo-wa hana-ni mizu-o kaketa.")
    assert [event["stage"] for event in trace] == ["sentence", "tokens", "clauses", "pattern", "output"]

    _, trace = translate_document(dicts, RIVER)
    assert [event["rule"] for event in trace.of_stage("rewrite")] == [
        "rw-ride-vehicle", "rw-along-route", "rw-walk-on-foot"]
    [rewritten] = trace.of_stage("rewritten")
    assert rewritten["count"] == 2
    assert rewritten["japanese"] == "kare-wa basu-de gakkō-e itta ga, watashi-wa kawa-zoi-ni toho-de gakkō-e itta."
    assert all(line.startswith("[") for line in trace.lines())


def test_shared_context_across_calls(dicts):
    ctx = DiscourseContext()
    translate_document(dicts, "kare-wa gakkō-e itta.", ctx=ctx)
    output, _ = translate_document(dicts, "hon-o katta.", ctx=ctx)
    assert output == "He bought a book."
    output, _ = translate_document(dicts, "hon-o katta.")
    assert output == "It bought a book."


def test_split_sentences():
    assert split_sentences("kare-wa itta.  hon-o katta. ") == ["kare-wa itta.", "hon-o katta."]
    assert split_sentences("kare-wa itta") == ["kare-wa itta"]
    assert split_sentences("") == []


def test_shipped_dictionaries_validate():
    assert validate_dictionaries(DICT_DIR) == []


def test_validation_collects_across_files(dict_copy):
    directory = dict_copy(("patterns.tsv", "o:@liquid:req", "o:@zzz:req"),
                          ("rewrites.tsv", "ni:@vehicle", "ni:@yyy"))
    errors = validate_dictionaries(directory)
    assert {error.source for error in errors} == {"patterns.tsv", "rewrites.tsv"}
    assert any("zzz" in str(error) for error in errors)
    assert any("yyy" in str(error) for error in errors)
    with pytest.raises(DictionaryError):
        load_dictionaries(directory)


def test_broken_hierarchy_stops_validation(dict_copy):
    directory = dict_copy(("categories.tsv", "liquid\tcommon\tsubstance", "liquid\tcommon\tno-such-parent"))
    errors = validate_dictionaries(directory)
    assert errors
    assert all(error.source == "categories.tsv" for error in errors)


def test_missing_directory(tmp_path):
    with pytest.raises(DictionaryError):
        load_dictionaries(str(tmp_path / "missing"))
    assert validate_dictionaries(str(tmp_path / "missing"))


def test_dictionary_that_is_not_utf8(dict_copy):
    directory = dict_copy()
    path = os.path.join(directory, "lexicon.tsv")
    with open(path, "rb") as f:
        data = f.read()
    with open(path, "wb") as f:
        f.write(b"# broken \xff\n" + data)
    [error] = validate_dictionaries(directory)
    assert error.source == path
    assert error.message == "not valid UTF-8 at byte 9"
    with pytest.raises(DictionaryError):
        load_dictionaries(directory)


def test_read_text_reports_the_byte_offset(tmp_path):
    path = tmp_path / "doc.txt"
    path.write_bytes("kare-wa gakkō".encode("utf-8") + b"\xff-e itta.")
    with pytest.raises(EncodingError) as info:
        read_text(path)
    assert (info.value.path, info.value.offset) == (str(path), 14)


def test_proper_nouns_stay_singular_in_plural_slots(translate):
    assert translate("hito-no mure-ga kawatta.") == "A group of people changed."
    assert translate("nihon-no mure-ga kawatta.") == "A group of Japan changed."

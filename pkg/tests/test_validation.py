from __future__ import annotations

import random

import pytest

from treekit.conllu import Document, Token, parse_document, serialize_document
from treekit.validation import (
    CONNECTED_TREE,
    DUPLICATE_SENT_ID,
    FEATS_FORMAT,
    HEAD_RANGE,
    ID_SEQUENCE,
    RANGE_FIELDS,
    SINGLE_ROOT,
    UNKNOWN_DEPREL,
    UNKNOWN_UPOS,
    DEFAULT_SCHEMA,
    Schema,
    load_schema,
    validate_document,
    validate_sentence,
)

from conftest import EXAMPLE_SENTENCE, make_sentence


def one_sentence(text: str):
    return parse_document(text).sentences[0]


def violation_cases() -> list[tuple[str, Document, Schema]]:
    """One fixture per validation rule, each triggering exactly its own issue."""
    cases: list[tuple[str, Document, Schema]] = []

    broken_seq = make_sentence([0, 1])
    broken_seq.tokens[1].id = 3
    cases.append((ID_SEQUENCE, Document(sentences=[broken_seq]), DEFAULT_SCHEMA))

    two_roots = (
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
    )
    cases.append((SINGLE_ROOT, parse_document(two_roots), DEFAULT_SCHEMA))

    head_out = (
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUN\t_\t_\t9\tobj\t_\t_\n"
    )
    cases.append((HEAD_RANGE, parse_document(head_out), DEFAULT_SCHEMA))

    cycle = (
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUN\t_\t_\t3\tnmod\t_\t_\n"
        "3\tc\t_\tNOUN\t_\t_\t2\tnmod\t_\t_\n"
    )
    cases.append((CONNECTED_TREE, parse_document(cycle), DEFAULT_SCHEMA))

    bad_upos = (
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUNX\t_\t_\t1\tobj\t_\t_\n"
    )
    cases.append((UNKNOWN_UPOS, parse_document(bad_upos), DEFAULT_SCHEMA))

    bad_deprel = (
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUN\t_\t_\t1\tobjx\t_\t_\n"
    )
    cases.append((UNKNOWN_DEPREL, parse_document(bad_deprel), DEFAULT_SCHEMA))

    bad_pair = (
        "1\ta\t_\tVERB\t_\tCase=Bogus\t0\troot\t_\t_\n"
    )
    strict = Schema(feature_values={"Case": frozenset({"Acc", "Nom", "Loc"})})
    cases.append((FEATS_FORMAT, parse_document(bad_pair), strict))

    annotated_range = (
        "1-2\tab\t_\t_\t_\t_\t1\tdep\t_\t_\n"
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    )
    cases.append((RANGE_FIELDS, parse_document(annotated_range), DEFAULT_SCHEMA))

    return cases


def test_example_sentence_is_clean(example_text):
    assert validate_document(parse_document(example_text)) == []


@pytest.mark.parametrize("code,doc,schema", violation_cases(), ids=[c[0] for c in violation_cases()])
def test_each_rule_fixture_triggers_exactly_its_issue(code, doc, schema):
    issues = validate_document(doc, schema)
    assert len(issues) == 1
    assert issues[0].code == code


def test_unknown_upos_message_names_the_value(example_text):
    doc = parse_document(example_text.replace("\tNOUN\t", "\tNOUNX\t", 1))
    issues = validate_document(doc)
    assert [i.code for i in issues] == [UNKNOWN_UPOS]
    assert "unknown UPOS value" in issues[0].message
    assert "NOUNX" in issues[0].message
    assert issues[0].sentence_ref == "ins_167"
    assert issues[0].token == "1"


def test_zero_roots_flagged():
    s = make_sentence([2, 0])
    s.tokens[1].head = 1
    s.tokens[1].deprel = "dep"
    issues = validate_sentence(s)
    codes = [i.code for i in issues]
    assert SINGLE_ROOT in codes
    assert "found 0" in [i for i in issues if i.code == SINGLE_ROOT][0].message


def test_root_deprel_must_match_head_zero():
    s = make_sentence([0, 1], deprels=["punct", "root"])
    issues = validate_sentence(s)
    assert {i.code for i in issues} == {SINGLE_ROOT}
    assert len(issues) == 2  # head-0 token lacking 'root' and 'root' elsewhere


def test_missing_fields_are_flagged():
    s = one_sentence("1\ta\t_\t_\t_\t_\t_\t_\t_\t_\n")
    codes = sorted(i.code for i in validate_sentence(s))
    assert codes == sorted([HEAD_RANGE, UNKNOWN_UPOS, UNKNOWN_DEPREL, SINGLE_ROOT])


def test_self_loop_flagged():
    s = one_sentence(
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUN\t_\t_\t2\tobj\t_\t_\n"
    )
    issues = validate_sentence(s)
    assert [i.code for i in issues] == [HEAD_RANGE]
    assert "self-loop" in issues[0].message


def test_duplicate_sent_id():
    text = (
        "# sent_id = s1\n1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = s1\n1\tb\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
    )
    issues = validate_document(parse_document(text))
    assert [i.code for i in issues] == [DUPLICATE_SENT_ID]
    assert "s1" in issues[0].message


def test_mixed_document_reports_in_order():
    docs = []
    for i in range(1, 11):
        s = make_sentence([0, 1, 1], sent_id=f"m_{i:02d}")
        docs.append(s)
    docs[1].tokens[2].upos = "XYZ"
    docs[4].tokens[1].deprel = "weird"
    docs[8].tokens[2].head = 0
    docs[8].tokens[2].deprel = "root"
    issues = validate_document(Document(sentences=docs))
    assert [(i.sentence_ref, i.code) for i in issues] == [
        ("m_02", UNKNOWN_UPOS),
        ("m_05", UNKNOWN_DEPREL),
        ("m_09", SINGLE_ROOT),
    ]


def test_clean_range_token_passes():
    text = (
        "1-2\tab\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\ta\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    )
    assert validate_document(parse_document(text)) == []


def test_feature_whitelist_name_only_allows_any_value():
    schema = Schema(feature_values={"Case": None})
    ok = one_sentence("1\ta\t_\tVERB\t_\tCase=Whatever\t0\troot\t_\t_\n")
    assert validate_sentence(ok, schema) == []
    bad = one_sentence("1\ta\t_\tVERB\t_\tMood=Imp\t0\troot\t_\t_\n")
    issues = validate_sentence(bad, schema)
    assert [i.code for i in issues] == [FEATS_FORMAT]
    assert "Mood=Imp" in issues[0].message


def test_load_schema_sections(tmp_path):
    cfg = tmp_path / "schema.txt"
    cfg.write_text(
        "# custom inventory\n[upos]\nNOUN\nVERB\nPUNCT\n\n[deprel]\nroot\npunct\nobj\n\n"
        "[feature]\nCase=Acc\nCase=Nom\nNumber\n",
        encoding="utf-8",
    )
    schema = load_schema(str(cfg))
    assert schema.upos == frozenset({"NOUN", "VERB", "PUNCT"})
    assert schema.deprels == frozenset({"root", "punct", "obj"})
    assert schema.allows_pair("Case", "Acc")
    assert not schema.allows_pair("Case", "Gen")
    assert schema.allows_pair("Number", "Sing")
    assert not schema.allows_pair("Person", "3")


def test_load_schema_partial_keeps_defaults(tmp_path):
    cfg = tmp_path / "schema.txt"
    cfg.write_text("[deprel]\nroot\npunct\n", encoding="utf-8")
    schema = load_schema(str(cfg))
    assert schema.upos == DEFAULT_SCHEMA.upos
    assert schema.deprels == frozenset({"root", "punct"})
    assert schema.feature_values is None


def test_schema_requires_root_and_punct():
    with pytest.raises(ValueError):
        Schema(deprels=frozenset({"root", "obj"}))
    with pytest.raises(ValueError):
        Schema(upos=frozenset())


def test_validation_does_not_mutate(example_text):
    doc = parse_document(example_text)
    before = serialize_document(doc)
    doc.sentences[0].tokens[0].upos = "NOUNX"
    mangled = serialize_document(doc)
    validate_document(doc)
    assert serialize_document(doc) == mangled
    assert before != mangled


def test_connectivity_matches_bruteforce_walk():
    rng = random.Random(2024)
    for _ in range(300):
        n = rng.randint(2, 8)
        root = rng.randint(1, n)
        heads = [0] * n
        for i in range(1, n + 1):
            if i == root:
                continue
            choices = [h for h in range(1, n + 1) if h != i]
            heads[i - 1] = rng.choice(choices)
        s = make_sentence(heads)
        expected_unreachable = set()
        for i in range(1, n + 1):
            seen = set()
            j = i
            while j != 0 and j not in seen:
                seen.add(j)
                j = heads[j - 1]
            if j != 0:
                expected_unreachable.add(i)
        issues = [i for i in validate_sentence(s) if i.code == CONNECTED_TREE]
        if expected_unreachable:
            assert len(issues) == 1
            listed = {int(x) for x in issues[0].message.split(":")[1].split(",")}
            assert listed == expected_unreachable
        else:
            assert issues == []

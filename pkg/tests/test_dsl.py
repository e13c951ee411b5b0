from __future__ import annotations

import pytest

from calab.corpus import CORPUS_IDS, corpus_entry, session_text
from calab.dsl import (
    Assert,
    Check,
    Def,
    RingDef,
    SessionError,
    compute,
    evaluate,
    format_session,
    parse_session,
    tokenize,
)

TENSOR_SYZYGY = (
    "ring R = poly(Q,[x,y])/(x*y); module M = quotient(R,(x^2)); "
    "check reflexive(tensor(M, syzygy(quotient(R,(x)),1)));"
)

MINIMAL_PRIMES = """\
ring R = poly(Q, [x, y]) / (x*y);
prime! p = (x);
prime! q = (y);
check reflexive(tensor(ideal_module(p), ideal_module(p)));
check reflexive(tensor(ideal_module(p), ideal_module(q)));
"""

DEPTH_VS_HEIGHT = """\
ring R = poly(Q, [x, y, z, w]) / (x*y);
prime! p = (y, z, w);
module M = quotient(R, (x));
assert depth((y,z,w), M) == 3;
assert height(p) == 2;
"""


def test_three_statement_session():
    ast = parse_session(TENSOR_SYZYGY)
    assert len(ast.statements) == 3
    kinds = [type(s) for s in ast.statements]
    assert kinds == [RingDef, Def, Check]


def test_empty_session():
    assert parse_session("").statements == ()
    assert parse_session("# only a comment\n\n").statements == ()


def test_undefined_ring_is_named_with_line():
    with pytest.raises(SessionError) as info:
        parse_session("module M = quotient(S,(x));")
    assert "S" in info.value.message
    assert info.value.line == 1


def test_minimal_prime_tensors_two_entries():
    entries = evaluate(parse_session(MINIMAL_PRIMES))
    assert [e.verdict for e in entries] == ["verified", "refuted"]


def test_definitions_only_session_is_empty_success():
    entries = evaluate(parse_session("ring R = poly(Q, [x]) / (x^2);\nmodule M = quotient(R, (x));\n"))
    assert entries == []


def test_depth_height_asserts_verified():
    entries = evaluate(parse_session(DEPTH_VS_HEIGHT))
    assert len(entries) == 2
    assert all(e.verdict == "verified" for e in entries)


def test_assert_failure_continues():
    text = DEPTH_VS_HEIGHT.replace("== 3", "== 4")
    entries = evaluate(parse_session(text))
    assert [e.verdict for e in entries] == ["refuted", "verified"]


def test_compute_depth():
    assert compute(DEPTH_VS_HEIGHT, "depth", "(y,z,w)|M") == 3
    assert compute(DEPTH_VS_HEIGHT, "height", "p") == 2


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("ring R = poly(Q, [x]);\nmodule M = quotient(R, (x));\nmodule M = quotient(R, (x^2));", 3, "M"),
        ("ring R = poly(Q, [x]);\ncheck reflexive(R, R);", 2, "reflexive"),
        ("ring R = poly(Q, [x]);\nmodule M = frobnicate(R);", 2, "frobnicate"),
        ("ring R = poly(Q, [x]);\nmodule M = quotient(R, (x)) $;", 2, "$"),
        ("ring R = poly(Q, [x]);\nmodule M = quotient(R, (t));", 2, "t"),
    ],
)
def test_error_locations(text, line, fragment):
    with pytest.raises(SessionError) as info:
        parse_session(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_evaluation_error_carries_location():
    text = "ring R = poly(Q, [x, y]) / (x*y);\nprime! p = (x);\n\nmodule S = symbolic_m;\n"
    with pytest.raises(SessionError):
        parse_session(text)
    bad = "ring R = poly(Q, [x, y]) / (x*y);\nprime! p = (x);\nlet I = symbolic(p, 2, x);\n"
    with pytest.raises(SessionError) as info:
        evaluate(parse_session(bad))
    assert info.value.line == 3


@pytest.mark.parametrize("entry_id", CORPUS_IDS)
def test_round_trip_corpus_sessions(entry_id):
    ast = parse_session(corpus_entry(entry_id).setup)
    printed = format_session(ast)
    again = parse_session(printed)
    assert again == ast
    assert format_session(again) == printed


# names are excluded: swapping one name for another is often still valid
_POOL = [";", "(", ")", ",", "=", "[", "]", "^", "*", "check", "module", "7", ":", "=="]


def _corruptions(text: str):
    toks = [t for t in tokenize(text) if t.kind != "EOF"]
    lines = text.split("\n")
    for t in toks:
        for rep in _POOL + [""]:
            if rep == t.text:
                continue
            row = lines[t.line - 1]
            new_row = row[: t.col - 1] + (f" {rep} " if rep else " ") + row[t.end_col - 1:]
            yield t.line, "\n".join(lines[: t.line - 1] + [new_row] + lines[t.line:])


@pytest.mark.parametrize("name", ["ex3_6.cl", "exA_5.cl", "symbolic.cl"])
def test_single_token_corruptions_report_their_line(name):
    text = session_text(name)
    caught = 0
    for line, bad in _corruptions(text):
        try:
            parse_session(bad)
        except SessionError as exc:
            caught += 1
            assert exc.line == line, (line, bad.split("\n")[line - 1], str(exc))
    assert caught > 100


def test_expect_clause_and_labels():
    ast = parse_session(
        "ring R = poly(Q, [x, y]) / (x*y);\n"
        "check lbl: reflexive(quotient(R, (x, y))) expect refuted;\n"
        "assert n: ngens(quotient(R, (x))) == 1;\n"
    )
    c, a = ast.statements[1], ast.statements[2]
    assert isinstance(c, Check) and c.label == "lbl" and c.expect == "refuted"
    assert isinstance(a, Assert) and a.op == "=="
    entries = evaluate(ast, "s")
    assert [e.claim_id for e in entries] == ["lbl", "n"]
    assert all(e.as_expected for e in entries)

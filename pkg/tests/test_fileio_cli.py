import io

import pytest

from catgroup.cli import main
from catgroup.errors import ParseError
from catgroup.fileio import export_text, load_text
from catgroup.instances import builtin_instance

FZ2_TEXT = export_text(builtin_instance("FZ2"), "FZ2")


def run(*argv):
    out = io.StringIO()
    rc = main(list(argv), out)
    return rc, out.getvalue()


def test_round_trip_through_text():
    doc = load_text(FZ2_TEXT)
    assert doc.ok
    xm = doc.only_xmod()
    ref = builtin_instance("FZ2")
    assert xm.n.add == ref.n.add and xm.weak == ref.weak


def test_bad_row_length_reports_line():
    text = FZ2_TEXT.replace("  0b 0a 1\n", "  0b 0a\n", 1)
    with pytest.raises(ParseError) as e:
        load_text(text)
    lines = text.splitlines()
    start = lines.index("[cgroup FZ2_N]")
    line = lines.index("  0b 0a", start) + 1
    assert e.value.line == line and f"line {line}" in str(e.value)


def test_unknown_key_and_element():
    with pytest.raises(ParseError):
        load_text("[cgroup G]\nelements: a\nadd: a\ncolour: red\n")
    with pytest.raises(ParseError):
        load_text("[cgroup G]\nelements: a\nadd: b\n")
    with pytest.raises(ParseError):
        load_text("elements: a\n")


def test_validation_failure_is_a_report_not_an_exception():
    text = "[cgroup G]\nelements: a b\nzero: a\nneg: a b\nadd:\n  a b\n  b b\n"
    doc = load_text(text)
    assert not doc.ok
    assert "INVALID" in doc.reports[0].format()


def test_pairs_cong_and_trivial_action():
    text = """
[cgroup M]
elements: 0 1
add:
  0 1
  1 0
cong: total
[cgroup N]
elements: 0 1 2 3
add:
  0 1 2 3
  1 2 3 0
  2 3 0 1
  3 0 1 2
cong: 0~2 1~3
[xmod X]
m: M
n: N
boundary: 0 2
action: trivial
"""
    doc = load_text(text)
    assert doc.ok
    assert doc.only_xmod().n.cong == builtin_instance("XM4").n.cong


def test_cli_verify_and_summary():
    rc, out = run("--summary", "verify", "XM4")
    assert rc == 0
    assert "FAIL" not in out and "status=PASS" in out


def test_cli_roundtrip_and_classify():
    rc, out = run("roundtrip", "S3A3")
    assert rc == 0 and "isomorphism found" in out
    rc, out = run("classify", "FZ2")
    assert rc == 0 and "cssc=yes" in out


def test_cli_parse_error_exit(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(FZ2_TEXT.replace("  0b 0a 1\n", "  0b 0a\n", 1))
    rc, out = run("validate", str(p))
    assert rc == 2 and "parse error: line" in out


def test_cli_validate_file_and_invalid(tmp_path):
    p = tmp_path / "fz2.txt"
    p.write_text(FZ2_TEXT)
    assert run("validate", str(p))[0] == 0
    q = tmp_path / "bad.txt"
    q.write_text("[cgroup G]\nelements: a b\nzero: a\nneg: a b\nadd:\n  a b\n  b b\n")
    rc, out = run("validate", str(q))
    assert rc == 1 and "INVALID" in out


def test_cli_build_dump(tmp_path):
    dump = tmp_path / "m.txt"
    rc, out = run("build", "FZ2", "--dump", str(dump))
    assert rc == 0 and "arrows 5" in out
    text = dump.read_text()
    assert text.startswith("objects 3") and "special 0 1 2 3 4" in text


def test_cli_instance_export(tmp_path):
    p = tmp_path / "x.txt"
    rc, _ = run("instance", "XM4", "--export", str(p))
    assert rc == 0 and load_text(p.read_text()).ok
    rc, out = run("instance")
    assert "FZ2" in out


def test_cli_search():
    rc, out = run("search", "--max-n", "3", "--max-m", "2", "--trials", "300", "--seed", "1")
    assert rc == 0 and "PASS found-non-strict-cssc" in out
    rc, out = run("search", "--trials", "0")
    assert rc == 1


def test_cli_not_cssc(tmp_path):
    text = """
[cgroup Z2]
elements: 0 1
add:
  0 1
  1 0
[xmod X]
m: Z2
n: Z2
boundary: 0 1
"""
    p = tmp_path / "x.txt"
    p.write_text(text)
    rc, out = run("verify", str(p))
    assert rc == 1 and "not a cssc" in out

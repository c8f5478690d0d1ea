import hashlib
import re

import pytest

from licenseledger.codescan import (
    C_PATTERN,
    FunctionSpan,
    Language,
    extract_functions,
    hash_function,
    scan_project,
)
from licenseledger.errors import ScanError

ADD_SRC = "int add(int a, int b) { return a + b; }"
# Recomputed with: printf '<ADD_SRC>' | sha256sum
ADD_DIGEST = "16a2bcdc3a27a42f4d8902154e2d01cc939bdddeafefbedfd83be37cc72ca81d"


def test_published_c_pattern_extracts_add():
    spans = extract_functions(ADD_SRC, Language.C)
    assert len(spans) == 1
    assert spans[0].name == "add"
    assert spans[0].matched_text == ADD_SRC


def test_empty_source_gives_no_spans():
    assert extract_functions("", Language.C) == []
    assert extract_functions("", Language.PYTHON) == []


def test_python_def_span():
    # Expected span pinned from the shipped def-line pattern run standalone,
    # plus the documented line-wise body capture.
    spans = extract_functions("def f(x):\n    return x\n", Language.PYTHON)
    assert len(spans) == 1
    assert spans[0].name == "f"
    assert spans[0].matched_text == "def f(x):\n    return x"


def test_python_two_functions():
    src = "def f(x):\n    return x\n\ndef g(y):\n    y += 1\n    return y\n"
    spans = extract_functions(src, Language.PYTHON)
    assert [s.name for s in spans] == ["f", "g"]
    assert spans[1].matched_text == "def g(y):\n    y += 1\n    return y"


def test_java_reconstruction_extracts_method():
    src = "public static int sum(int a, int b) { return a + b; }"
    spans = extract_functions(src, Language.JAVA)
    assert [s.name for s in spans] == ["sum"]


def test_c_pattern_truncates_at_first_closing_brace():
    # Fidelity-over-correctness: the published non-greedy body stops at the
    # first '}' of a nested block.
    src = "void f(int n) { if (n) { n--; } return; }"
    spans = extract_functions(src, Language.C)
    assert spans[0].matched_text == "void f(int n) { if (n) { n--; }"


def test_every_c_span_rematches_published_pattern():
    src = ADD_SRC + "\n" + "float half(float x) { return x / 2; }\n"
    for span in extract_functions(src, Language.C):
        m = re.fullmatch(C_PATTERN, span.matched_text)
        assert m is not None and m.group(1) == span.name


def test_hash_deterministic_and_sensitive():
    span = extract_functions(ADD_SRC, Language.C)[0]
    other = FunctionSpan("", Language.C, "add", ADD_SRC.replace("a + b", "a - b"))
    assert hash_function(span) == hash_function(span)
    assert hash_function(span) != hash_function(other)


def test_hash_matches_external_sha256_oracle():
    span = extract_functions(ADD_SRC, Language.C)[0]
    assert hash_function(span) == ADD_DIGEST
    assert hash_function(span) == hashlib.sha256(ADD_SRC.encode()).hexdigest()


def test_crlf_normalized_before_hashing():
    a = FunctionSpan("", Language.C, "f", "void f() {\n}")
    b = FunctionSpan("", Language.C, "f", "void f() {\r\n}")
    assert hash_function(a) == hash_function(b)


def test_scan_directory_two_functions(tmp_path):
    (tmp_path / "m.c").write_text(ADD_SRC + "\nint sub(int a, int b) { return a - b; }\n")
    scan = scan_project(tmp_path)
    assert len(scan.spans) == 2
    assert len(scan.hashes) == 2
    assert scan.files_scanned == 1


def test_scan_skips_unknown_extensions(tmp_path):
    (tmp_path / "README").write_text("docs only\n")
    scan = scan_project(tmp_path)
    assert scan.spans == []
    assert scan.files_skipped == 1
    assert scan.files_scanned == 0


def test_identical_functions_dedup_to_one_hash(tmp_path):
    (tmp_path / "a.c").write_text(ADD_SRC + "\n")
    (tmp_path / "b.c").write_text(ADD_SRC + "\n")
    scan = scan_project(tmp_path)
    assert len(scan.spans) == 2
    assert scan.hashes == [ADD_DIGEST]


def test_hashes_sorted(tmp_path):
    (tmp_path / "m.c").write_text(
        "int zz(int a) { return a; }\nint aa(int a) { return a; }\n"
    )
    scan = scan_project(tmp_path)
    assert scan.hashes == sorted(scan.hashes)


def test_scan_rejects_garbage_archive(tmp_path):
    bad = tmp_path / "x.zip"
    bad.write_bytes(b"not a zip at all")
    with pytest.raises(ScanError):
        scan_project(bad)


def test_scan_missing_path(tmp_path):
    with pytest.raises(ScanError):
        scan_project(tmp_path / "nope")

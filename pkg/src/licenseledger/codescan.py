"""Regex-based function extraction and SHA-256 fingerprinting.

The C pattern is applied verbatim as published; its non-greedy ``\\{...\\}``
truncates the body at the first closing brace inside nested blocks. That is
a known limitation kept deliberately: the hashes must match what the
pattern produces, not what a parser would. Java and Python patterns are
reconstructions shipped as data (see data/patterns.json).
"""

from __future__ import annotations

import hashlib
import json
import re
import zipfile
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .errors import ResourceLimitError, ScanError, UnsupportedLanguageError

MAX_FILES = 10_000
MAX_FILE_BYTES = 10 * 1024 * 1024


class Language(str, Enum):
    C = "C"
    JAVA = "Java"
    PYTHON = "Python"


_EXTENSIONS = {
    ".c": Language.C,
    ".h": Language.C,
    ".java": Language.JAVA,
    ".py": Language.PYTHON,
}


def _load_patterns() -> dict:
    text = resources.files("licenseledger.data").joinpath("patterns.json").read_text("utf-8")
    return json.loads(text)


_PATTERNS = _load_patterns()
C_PATTERN = re.compile(_PATTERNS["c"]["pattern"])
JAVA_PATTERN = re.compile(_PATTERNS["java"]["pattern"])
PY_DEF_PATTERN = re.compile(_PATTERNS["python"]["pattern"])


@dataclass(frozen=True)
class FunctionSpan:
    file_path: str
    language: Language
    name: str
    matched_text: str
    offset: int = 0


def normalize_lf(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


def _extract_regex(text: str, pattern: re.Pattern, language: Language, file_path: str):
    return [
        FunctionSpan(file_path, language, m.group(1), m.group(0), m.start())
        for m in pattern.finditer(text)
    ]


def _extract_python(text: str, file_path: str) -> list[FunctionSpan]:
    # The def-line pattern finds the head; the body is the run of lines after
    # it that are blank or indented deeper than the def keyword.
    spans = []
    for m in PY_DEF_PATTERN.finditer(text):
        def_indent = m.start() - (text.rfind("\n", 0, m.start()) + 1)
        line_end = text.find("\n", m.end())
        if line_end == -1:
            spans.append(FunctionSpan(file_path, Language.PYTHON, m.group(1), text[m.start():], m.start()))
            continue
        end = line_end + 1
        for line in text[line_end + 1 :].split("\n"):
            stripped = line.strip()
            indent = len(line) - len(line.lstrip())
            if stripped and indent <= def_indent:
                break
            end += len(line) + 1
        block = text[m.start() : min(end, len(text))].rstrip("\n")
        spans.append(FunctionSpan(file_path, Language.PYTHON, m.group(1), block, m.start()))
    return spans


def extract_functions(
    source_text: str, language: Language, file_path: str = ""
) -> list[FunctionSpan]:
    """Spans in source order; group 1 of the pattern is the name and the full
    match is the fingerprinted text."""
    text = normalize_lf(source_text)
    if language == Language.C:
        return _extract_regex(text, C_PATTERN, Language.C, file_path)
    if language == Language.JAVA:
        return _extract_regex(text, JAVA_PATTERN, Language.JAVA, file_path)
    if language == Language.PYTHON:
        return _extract_python(text, file_path)
    raise UnsupportedLanguageError(f"no extraction pattern for {language!r}")


def hash_function(span: FunctionSpan) -> str:
    data = normalize_lf(span.matched_text).encode("utf-8")
    return hashlib.sha256(data).hexdigest()


@dataclass
class ProjectScan:
    spans: list[FunctionSpan] = field(default_factory=list)
    hashes: list[str] = field(default_factory=list)
    files_scanned: int = 0
    files_skipped: int = 0
    language_mix: dict[str, int] = field(default_factory=dict)

    def paths_for_hash(self, value: str) -> list[str]:
        return sorted({s.file_path for s in self.spans if hash_function(s) == value})


def _iter_dir(root: Path):
    for p in sorted(root.rglob("*")):
        if p.is_file():
            yield p.relative_to(root).as_posix(), p.stat().st_size, lambda p=p: p.read_bytes()


def _iter_zip(zf: zipfile.ZipFile):
    for info in sorted(zf.infolist(), key=lambda i: i.filename):
        if info.is_dir():
            continue
        yield info.filename, info.file_size, lambda info=info: zf.read(info)


def _scan_entries(entries) -> ProjectScan:
    scan = ProjectScan()
    seen = 0
    for rel_path, size, read in entries:
        seen += 1
        if seen > MAX_FILES:
            raise ResourceLimitError(f"more than {MAX_FILES} files in project")
        if size > MAX_FILE_BYTES:
            raise ResourceLimitError(f"{rel_path}: exceeds {MAX_FILE_BYTES} bytes")
        language = _EXTENSIONS.get(Path(rel_path).suffix.lower())
        if language is None:
            scan.files_skipped += 1
            continue
        try:
            text = read().decode("utf-8")
        except UnicodeDecodeError:
            scan.files_skipped += 1
            continue
        scan.spans.extend(extract_functions(text, language, rel_path))
        scan.files_scanned += 1
        scan.language_mix[language.value] = scan.language_mix.get(language.value, 0) + 1
    scan.spans.sort(key=lambda s: (s.file_path, s.offset))
    scan.hashes = sorted({hash_function(s) for s in scan.spans})
    return scan


def scan_project(archive_or_dir: str | Path) -> ProjectScan:
    """Scan a directory tree or a ZIP archive. Language is chosen by file
    extension; everything else counts as skipped."""
    path = Path(archive_or_dir)
    if path.is_dir():
        return _scan_entries(_iter_dir(path))
    if path.is_file():
        try:
            with zipfile.ZipFile(path) as zf:
                return _scan_entries(_iter_zip(zf))
        except zipfile.BadZipFile as exc:
            raise ScanError(f"{path}: not a ZIP archive") from exc
    raise ScanError(f"{path}: not a readable directory or archive")


def scan_zip_bytes(data: bytes) -> ProjectScan:
    import io

    try:
        with zipfile.ZipFile(io.BytesIO(data)) as zf:
            return _scan_entries(_iter_zip(zf))
    except zipfile.BadZipFile as exc:
        raise ScanError("uploaded archive is not a valid ZIP") from exc

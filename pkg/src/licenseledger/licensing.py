"""License catalog and the directed relicensing compatibility relation.

Fourteen supported licenses; ``allowed[origin]`` answers "a derivative of
code under ``origin`` may be declared under X". The relation lives in a
versioned data file, never in code, and is validated at load time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .errors import MatrixValidationError, UnsupportedLicenseError


class LicenseId(str, Enum):
    MIT = "MIT"
    BSD_2_CLAUSE = "BSD-2-Clause"
    BSD_3_CLAUSE = "BSD-3-Clause"
    APACHE_2_0 = "Apache-2.0"
    GPL_2_0 = "GPL-2.0"
    GPL_2_0_OR_LATER = "GPL-2.0-or-later"
    GPL_3_0 = "GPL-3.0"
    GPL_3_0_OR_LATER = "GPL-3.0-or-later"
    LGPL_2_1 = "LGPL-2.1"
    LGPL_3_0 = "LGPL-3.0"
    MPL_1_1 = "MPL-1.1"
    MPL_2_0 = "MPL-2.0"
    AGPL_1_0_OR_LATER = "AGPL-1.0-or-later"
    AGPL_3_0 = "AGPL-3.0"

    def __str__(self) -> str:
        return self.value


ALL_LICENSES = tuple(LicenseId)
_BY_LOWER = {lic.value.lower(): lic for lic in LicenseId}


def parse_license_id(text: str) -> LicenseId:
    """Case-insensitive parse to the canonical SPDX form."""
    lic = _BY_LOWER.get(str(text).strip().lower())
    if lic is None:
        raise UnsupportedLicenseError(text, [l.value for l in LicenseId])
    return lic


class LicenseCategory(str, Enum):
    PERMISSIVE = "Permissive"
    WEAK_COPYLEFT = "WeakCopyleft"
    STRONG_COPYLEFT = "StrongCopyleft"


@dataclass(frozen=True)
class LicenseInfo:
    id: LicenseId
    full_name: str
    category: LicenseCategory
    info_url: str


def _data_text(name: str) -> str:
    return resources.files("licenseledger.data").joinpath(name).read_text("utf-8")


def load_catalog() -> dict[LicenseId, LicenseInfo]:
    entries = json.loads(_data_text("license_catalog.json"))
    catalog = {}
    for e in entries:
        lic = parse_license_id(e["spdx"])
        catalog[lic] = LicenseInfo(
            id=lic,
            full_name=e["full_name"],
            category=LicenseCategory(e["category"]),
            info_url=e["info_url"],
        )
    return catalog


class CompatibilityMatrix:
    """Immutable after load; unrestricted concurrent reads are safe."""

    def __init__(self, allowed: dict[LicenseId, frozenset[LicenseId]]):
        self.allowed = dict(allowed)

    def is_compatible(self, origin: LicenseId, declared: LicenseId) -> bool:
        return declared in self.allowed[origin]

    def compatible_with(self, origin: LicenseId) -> frozenset[LicenseId]:
        return self.allowed[origin]


def load_matrix(data_file: str | Path | None = None) -> CompatibilityMatrix:
    """Load and validate the matrix: closed license set, totality over all
    14 licenses, reflexivity of every row."""
    if data_file is None:
        text = _data_text("compatibility.json")
        source = "built-in compatibility.json"
    else:
        text = Path(data_file).read_text("utf-8")
        source = str(data_file)
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixValidationError(f"{source}: unparsable: {exc}") from exc

    allowed: dict[LicenseId, frozenset[LicenseId]] = {}
    for rec in records:
        try:
            origin = parse_license_id(rec["origin"])
            targets = frozenset(parse_license_id(t) for t in rec["allowed"])
        except UnsupportedLicenseError as exc:
            raise MatrixValidationError(
                f"{source}: row {rec.get('origin')!r}: {exc}"
            ) from exc
        if origin in allowed:
            raise MatrixValidationError(f"{source}: duplicate row for {origin}")
        if origin not in targets:
            raise MatrixValidationError(
                f"{source}: row {origin} is not reflexive (must allow itself)"
            )
        allowed[origin] = targets

    missing = [lic.value for lic in LicenseId if lic not in allowed]
    if missing:
        raise MatrixValidationError(f"{source}: missing rows: {', '.join(missing)}")
    return CompatibilityMatrix(allowed)


def is_compatible(matrix: CompatibilityMatrix, origin: LicenseId, declared: LicenseId) -> bool:
    return matrix.is_compatible(origin, declared)


def compatible_with(matrix: CompatibilityMatrix, origin: LicenseId) -> frozenset[LicenseId]:
    return matrix.compatible_with(origin)

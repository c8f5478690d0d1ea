"""Off-chain persistence: wallet configuration, project metadata, archives.

Storage is an embedded directory layout (JSON per project, content-addressed
ZIP archives) so that everything survives a process restart and can be
byte-compared in tests. The backend stays behind this module's API.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import ConfigError, NotFoundError, ValidationError
from .licensing import LicenseId, parse_license_id

_WALLET = re.compile(r"^0x[0-9a-fA-F]{40}$")


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ConfigError(f"duplicate username {key!r} in wallet config")
        seen[key] = value
    return seen


def load_wallet_config(path: str | Path) -> dict[str, str]:
    """Mapping username -> wallet address, validated and lowercase-normalized."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"wallet config {p} does not exist")
    try:
        raw = json.loads(p.read_text("utf-8"), object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"wallet config {p}: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"wallet config {p}: top level must be an object")
    wallets = {}
    for username, address in raw.items():
        if not isinstance(address, str) or not _WALLET.match(address):
            raise ConfigError(
                f"wallet config {p}: user {username!r}: malformed address {address!r}"
            )
        wallets[username] = address.lower()
    return wallets


@dataclass
class UserAccount:
    username: str
    wallet: str
    created_at: int


@dataclass
class ProjectRecord:
    project_id: str
    name: str
    description: str
    uploader: str
    license: LicenseId
    parents: list[str] = field(default_factory=list)
    language_mix: dict[str, int] = field(default_factory=dict)
    chain_ref: int = 0
    archive_ref: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["license"] = self.license.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ProjectRecord":
        d = dict(d)
        d["license"] = parse_license_id(d["license"])
        return cls(**d)


class ProjectStore:
    """One JSON file per project under <root>/projects/."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, project_id: str) -> Path:
        if not re.match(r"^[\w.-]+$", project_id):
            raise ValidationError(f"bad project id {project_id!r}")
        return self.root / f"{project_id}.json"

    def put_project(self, record: ProjectRecord) -> None:
        self._path(record.project_id).write_text(
            json.dumps(record.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8"
        )

    def get_project(self, project_id: str) -> ProjectRecord:
        p = self._path(project_id)
        if not p.is_file():
            raise NotFoundError(f"project {project_id!r} not found")
        return ProjectRecord.from_dict(json.loads(p.read_text("utf-8")))

    def all_projects(self) -> list[ProjectRecord]:
        records = [
            ProjectRecord.from_dict(json.loads(p.read_text("utf-8")))
            for p in self.root.glob("*.json")
        ]
        return sorted(records, key=lambda r: r.name.lower())

    def search_projects(self, query_text: str) -> list[ProjectRecord]:
        """Case-insensitive substring match over name and description."""
        q = query_text.lower()
        return [
            r
            for r in self.all_projects()
            if q in r.name.lower() or q in r.description.lower()
        ]

    def next_project_id(self) -> str:
        taken = [p.stem for p in self.root.glob("proj-*.json")]
        highest = max((int(t.split("-")[1]) for t in taken if t.split("-")[1].isdigit()), default=0)
        return f"proj-{highest + 1}"


class ArchiveStore:
    """Content-addressed ZIP storage: key is the SHA-256 of the bytes."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def put(self, data: bytes) -> str:
        key = hashlib.sha256(data).hexdigest()
        path = self.root / f"{key}.zip"
        if not path.exists():
            path.write_bytes(data)
        return key

    def get(self, key: str) -> bytes:
        path = self.root / f"{key}.zip"
        if not path.is_file():
            raise NotFoundError(f"archive {key} not found")
        return path.read_bytes()

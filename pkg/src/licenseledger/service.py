"""Workflow orchestration: download (record agreement, hand out archive) and
upload (scan, match against the chain, compatibility-check, register or
reject).

A rejected upload leaves chain, registry, and archive store untouched; an
accepted one commits the registration block first and then writes the
off-chain record, so a crash in between is recoverable by replaying the
chain.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable

from .codescan import ProjectScan, scan_zip_bytes
from .contracts import ChainState
from .errors import AuthError, NotFoundError
from .ledger import Chain, ValidatorPool, verify_chain
from .licensing import (
    ALL_LICENSES,
    CompatibilityMatrix,
    LicenseId,
    load_catalog,
    load_matrix,
)
from .registry import ArchiveStore, ProjectRecord, ProjectStore, load_wallet_config

MATCH_SCOPE_ALL = "all"
MATCH_SCOPE_DOWNLOADED = "downloaded_by_user"


class VerdictOutcome(str, Enum):
    ACCEPTED = "Accepted"
    CONFLICT = "Conflict"


@dataclass(frozen=True)
class OriginConflict:
    matched_project_id: str
    origin_license: LicenseId
    matched_hash_count: int


@dataclass(frozen=True)
class MatchExplanation:
    hash: str
    file_path_in_upload: str
    matched_project_id: str = ""


@dataclass(frozen=True)
class UploadVerdict:
    outcome: VerdictOutcome
    project_id: str | None = None
    chain_ref: int | None = None
    conflicts: tuple[OriginConflict, ...] = ()
    suggestions: frozenset[LicenseId] = frozenset()
    explanations: tuple[MatchExplanation, ...] = ()


class Platform:
    """Everything the HTTP API and CLI need, rooted at one data directory.

    Layout: <data_dir>/chain.log, <data_dir>/projects/, <data_dir>/archives/.
    The wallet config lives wherever the administrator keeps it.
    """

    def __init__(
        self,
        data_dir: str | Path,
        wallets_path: str | Path,
        pool: ValidatorPool | None = None,
        clock: Callable[[], float] = time.time,
        match_scope: str = MATCH_SCOPE_ALL,
    ):
        if match_scope not in (MATCH_SCOPE_ALL, MATCH_SCOPE_DOWNLOADED):
            raise ValueError(f"bad match_scope {match_scope!r}")
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.chain_path = self.data_dir / "chain.log"
        self.wallets = load_wallet_config(wallets_path)
        self.pool = pool or ValidatorPool()
        self.clock = clock
        self.match_scope = match_scope
        self.matrix: CompatibilityMatrix = load_matrix()
        self.catalog = load_catalog()
        self.projects = ProjectStore(self.data_dir / "projects")
        self.archives = ArchiveStore(self.data_dir / "archives")

        if self.chain_path.is_file():
            chain = Chain.deserialize(self.chain_path.read_text("utf-8"))
        else:
            chain = Chain()
            self.chain_path.write_text(chain.serialize(), "utf-8")
        self.state = ChainState(chain, self.pool)
        self.recovery_notes = self._reconcile()

    def _reconcile(self) -> list[str]:
        """Startup pass for the crash window between chain commit and
        registry write: registrations with no off-chain record."""
        notes = []
        known = {r.project_id for r in self.projects.all_projects()}
        for pid in self.state.registrations:
            if pid not in known:
                notes.append(f"registration {pid} has no registry record")
        if notes:
            logging.getLogger(__name__).warning(
                "registry reconciliation: %s", "; ".join(notes)
            )
        return notes

    # -- helpers -----------------------------------------------------------

    def wallet_for(self, username: str) -> str:
        try:
            return self.wallets[username]
        except KeyError:
            raise AuthError(f"user {username!r} is not in the wallet config") from None

    def _now(self) -> int:
        return int(self.clock())

    def _append_chain_file(self, block_index: int) -> None:
        block = self.state.chain.blocks[block_index]
        with self.chain_path.open("a", encoding="utf-8") as fh:
            fh.write(block.serialize() + "\n")

    def verify(self):
        return verify_chain(self.state.chain)

    # -- workflows ---------------------------------------------------------

    def download_workflow(self, username: str, project_id: str) -> tuple[bytes, int]:
        """Commit the agreement first, then hand out the archive bytes."""
        wallet = self.wallet_for(username)
        record = self.projects.get_project(project_id)
        block_index = self.state.record_download_agreement(
            wallet, project_id, record.license, self._now()
        )
        self._append_chain_file(block_index)
        return self.archives.get(record.archive_ref), block_index

    def _matched_origins(self, scan: ProjectScan, wallet: str) -> dict[str, set[str]]:
        """Map origin project id -> set of matched hashes."""
        scope: set[str] | None = None
        if self.match_scope == MATCH_SCOPE_DOWNLOADED:
            scope = self.state.downloaded_project_ids(wallet)
        origins: dict[str, set[str]] = {}
        for h in scan.hashes:
            for pid, _license in self.state.query_function_hash(h):
                if scope is not None and pid not in scope:
                    continue
                origins.setdefault(pid, set()).add(h)
        return origins

    def check_compliance(
        self, scan: ProjectScan, declared: LicenseId, wallet: str
    ) -> tuple[tuple[OriginConflict, ...], frozenset[LicenseId]]:
        """Conflicting origins and, when any exist, the licenses that would
        pass against every matched origin."""
        origins = self._matched_origins(scan, wallet)
        conflicts = []
        for pid, hashes in sorted(origins.items()):
            origin_license = self.state.registrations[pid].license
            if declared == origin_license or self.matrix.is_compatible(origin_license, declared):
                continue
            conflicts.append(OriginConflict(pid, origin_license, len(hashes)))
        if not conflicts:
            return (), frozenset()
        suggestions = frozenset(ALL_LICENSES)
        for pid in origins:
            suggestions &= self.matrix.compatible_with(self.state.registrations[pid].license)
        return tuple(conflicts), suggestions

    def upload_workflow(
        self,
        username: str,
        archive: bytes,
        name: str,
        description: str,
        declared_license: LicenseId,
        declared_parents: tuple[str, ...] = (),
    ) -> UploadVerdict:
        wallet = self.wallet_for(username)
        for parent in declared_parents:
            if parent not in self.state.registrations:
                raise NotFoundError(f"declared parent {parent!r} is not registered")
        scan = scan_zip_bytes(archive)
        conflicts, suggestions = self.check_compliance(scan, declared_license, wallet)
        if conflicts:
            explanations = []
            for conflict in conflicts:
                for row in self.explain_match(scan, conflict.matched_project_id):
                    explanations.append(
                        MatchExplanation(row.hash, row.file_path_in_upload,
                                         conflict.matched_project_id)
                    )
            return UploadVerdict(
                outcome=VerdictOutcome.CONFLICT,
                conflicts=conflicts,
                suggestions=suggestions,
                explanations=tuple(explanations),
            )

        project_id = self.projects.next_project_id()
        block_index = self.state.register_project(
            wallet, project_id, list(declared_parents), declared_license,
            scan.hashes, self._now(),
        )
        self._append_chain_file(block_index)
        archive_ref = self.archives.put(archive)
        self.projects.put_project(
            ProjectRecord(
                project_id=project_id,
                name=name,
                description=description,
                uploader=username,
                license=declared_license,
                parents=list(declared_parents),
                language_mix=dict(scan.language_mix),
                chain_ref=block_index,
                archive_ref=archive_ref,
            )
        )
        return UploadVerdict(
            outcome=VerdictOutcome.ACCEPTED, project_id=project_id, chain_ref=block_index
        )

    def explain_match(
        self, upload_scan: ProjectScan, matched_project_id: str
    ) -> list[MatchExplanation]:
        """Every hash shared with the matched project, with the uploading
        file that produced it."""
        reg = self.state.registrations.get(matched_project_id)
        if reg is None:
            raise NotFoundError(f"project {matched_project_id!r} is not registered")
        shared = set(upload_scan.hashes) & set(reg.function_hashes)
        rows = []
        for h in sorted(shared):
            for path in upload_scan.paths_for_hash(h):
                rows.append(MatchExplanation(h, path))
        return rows

    def audit_registry(self) -> list[str]:
        """Cross-check every project record against its chain_ref block."""
        problems = []
        for record in self.projects.all_projects():
            reg = self.state.registrations.get(record.project_id)
            if reg is None:
                problems.append(f"{record.project_id}: no registration on chain")
                continue
            if reg.block_index != record.chain_ref:
                problems.append(f"{record.project_id}: chain_ref {record.chain_ref} != {reg.block_index}")
            if reg.license != record.license:
                problems.append(f"{record.project_id}: license mismatch")
        return problems

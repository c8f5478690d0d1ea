"""Download-agreement and project-registration transactions plus query views.

Transactions are plain tagged dicts inside the block serialization; the
committed chain is the source of truth. ``ChainState`` keeps in-memory
indices that are rebuilt from the chain at startup: indices are caches,
correctness is defined by the log.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ConflictError, IntegrityError, NotFoundError, ValidationError
from .ledger import Chain, ValidatorPool
from .licensing import LicenseId, parse_license_id

_WALLET = re.compile(r"^0x[0-9a-f]{40}$")
_HEX64 = re.compile(r"^[0-9a-f]{64}$")

TX_GENESIS = "genesis"
TX_DOWNLOAD = "download_agreement"
TX_REGISTRATION = "project_registration"


def normalize_wallet(value: str) -> str:
    w = str(value).strip().lower()
    if not _WALLET.match(w):
        raise ValidationError(f"wallet address must be 0x + 40 hex chars, got {value!r}")
    return w


def download_agreement_tx(
    downloader: str, project_id: str, license: LicenseId, timestamp: int
) -> dict:
    return {
        "type": TX_DOWNLOAD,
        "downloader": normalize_wallet(downloader),
        "project_id": project_id,
        "license": license.value,
        "timestamp": int(timestamp),
    }


def project_registration_tx(
    uploader: str,
    project_id: str,
    parents: list[str],
    license: LicenseId,
    function_hashes: list[str],
) -> dict:
    hashes = sorted(set(function_hashes))
    for h in hashes:
        if not _HEX64.match(h):
            raise ValidationError(f"function hash must be 64 lowercase hex chars: {h!r}")
    return {
        "type": TX_REGISTRATION,
        "uploader": normalize_wallet(uploader),
        "project_id": project_id,
        "parents": list(parents),
        "license": license.value,
        "function_hashes": hashes,
    }


@dataclass(frozen=True)
class DownloadAgreement:
    downloader: str
    project_id: str
    license: LicenseId
    timestamp: int
    block_index: int


@dataclass(frozen=True)
class Registration:
    uploader: str
    project_id: str
    parents: tuple[str, ...]
    license: LicenseId
    function_hashes: tuple[str, ...]
    block_index: int


class ChainState:
    """Query views over a committed chain.

    Writes go through the chain's single-writer lock; the indices are
    updated only after a block commits, so readers never see uncommitted
    state.
    """

    def __init__(self, chain: Chain, pool: ValidatorPool):
        self.chain = chain
        self.pool = pool
        self.registrations: dict[str, Registration] = {}
        self.agreements: list[DownloadAgreement] = []
        self.hash_index: dict[str, list[str]] = {}
        for block in chain.blocks:
            self._index_block(block.tx, block.index)

    def _index_block(self, tx: dict, block_index: int) -> None:
        kind = tx.get("type")
        if kind == TX_REGISTRATION:
            reg = Registration(
                uploader=tx["uploader"],
                project_id=tx["project_id"],
                parents=tuple(tx["parents"]),
                license=parse_license_id(tx["license"]),
                function_hashes=tuple(tx["function_hashes"]),
                block_index=block_index,
            )
            self.registrations[reg.project_id] = reg
            for h in reg.function_hashes:
                self.hash_index.setdefault(h, []).append(reg.project_id)
        elif kind == TX_DOWNLOAD:
            self.agreements.append(
                DownloadAgreement(
                    downloader=tx["downloader"],
                    project_id=tx["project_id"],
                    license=parse_license_id(tx["license"]),
                    timestamp=tx["timestamp"],
                    block_index=block_index,
                )
            )

    def record_download_agreement(
        self, downloader: str, project_id: str, license: LicenseId, timestamp: int
    ) -> int:
        reg = self.registrations.get(project_id)
        if reg is None:
            raise NotFoundError(f"project {project_id!r} is not registered")
        if reg.license != license:
            raise IntegrityError(
                f"project {project_id} is licensed {reg.license}, not {license}"
            )
        tx = download_agreement_tx(downloader, project_id, license, timestamp)
        block = self.chain.append_block(tx, self.pool, timestamp)
        self._index_block(tx, block.index)
        return block.index

    def register_project(
        self,
        uploader: str,
        project_id: str,
        parents: list[str],
        license: LicenseId,
        function_hashes: list[str],
        timestamp: int,
    ) -> int:
        if project_id in self.registrations:
            raise ConflictError(f"project {project_id!r} already registered")
        for parent in parents:
            if parent not in self.registrations:
                raise NotFoundError(f"parent project {parent!r} is not registered")
        tx = project_registration_tx(uploader, project_id, parents, license, function_hashes)
        block = self.chain.append_block(tx, self.pool, timestamp)
        self._index_block(tx, block.index)
        return block.index

    def query_function_hash(self, value: str) -> list[tuple[str, LicenseId]]:
        """All committed registrations containing the hash, in commit order."""
        return [
            (pid, self.registrations[pid].license)
            for pid in self.hash_index.get(value, [])
        ]

    def agreements_for(self, wallet: str) -> list[DownloadAgreement]:
        w = normalize_wallet(wallet)
        return [a for a in self.agreements if a.downloader == w]

    def downloaded_project_ids(self, wallet: str) -> set[str]:
        return {a.project_id for a in self.agreements_for(wallet)}

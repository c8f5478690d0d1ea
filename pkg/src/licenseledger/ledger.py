"""Append-only hash-chained block store with simulated multi-node validation.

Blocks are committed only after an in-process validator pool independently
re-derives linkage and hash for the candidate and the approvals meet the
configured threshold. The chain serializes to a line-delimited file, one
canonical JSON object per block; the hashing input is that object minus the
``block_hash`` field.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import ConsensusRejectedError, ValidationError

GENESIS_PREV_HASH = "0" * 64
GENESIS_TIMESTAMP = 0
GENESIS_TX = {"type": "genesis"}

_HEX64 = re.compile(r"^[0-9a-f]{64}$")


def canonical_tx(tx: dict) -> str:
    """Key-sorted, whitespace-free JSON for a transaction payload."""
    return json.dumps(tx, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def hash_payload(index: int, timestamp: int, prev_hash: str, tx: dict) -> bytes:
    """The exact byte sequence hashed into block_hash."""
    body = (
        f'{{"index":{index},"timestamp":{timestamp},'
        f'"prev_hash":"{prev_hash}","tx":{canonical_tx(tx)}}}'
    )
    return body.encode("utf-8")


def compute_block_hash(index: int, timestamp: int, prev_hash: str, tx: dict) -> str:
    if not isinstance(prev_hash, str) or not _HEX64.match(prev_hash):
        raise ValidationError(f"prev_hash must be 64 lowercase hex chars, got {prev_hash!r}")
    if not isinstance(tx, dict) or "type" not in tx:
        raise ValidationError("tx must be a dict carrying a 'type' tag")
    return hashlib.sha256(hash_payload(index, timestamp, prev_hash, tx)).hexdigest()


@dataclass(frozen=True)
class Block:
    index: int
    timestamp: int
    prev_hash: str
    tx: dict
    block_hash: str

    def serialize(self) -> str:
        """Canonical one-line form; equals hash_payload plus the block_hash field."""
        body = hash_payload(self.index, self.timestamp, self.prev_hash, self.tx).decode("utf-8")
        return f'{body[:-1]},"block_hash":"{self.block_hash}"}}'

    @classmethod
    def deserialize(cls, line: str) -> "Block":
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"unparsable block line: {exc}") from exc
        try:
            return cls(
                index=obj["index"],
                timestamp=obj["timestamp"],
                prev_hash=obj["prev_hash"],
                tx=obj["tx"],
                block_hash=obj["block_hash"],
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"block line missing field: {exc}") from exc


def make_genesis() -> Block:
    h = compute_block_hash(0, GENESIS_TIMESTAMP, GENESIS_PREV_HASH, GENESIS_TX)
    return Block(0, GENESIS_TIMESTAMP, GENESIS_PREV_HASH, GENESIS_TX, h)


@dataclass
class Validator:
    """One simulated network node.

    ``tamper`` is a test hook: if set, it rewrites the candidate's fields
    before this node checks them, modelling a faulty or malicious node.
    """

    node_id: int
    tamper: Callable[[dict], dict] | None = None

    def approve(self, tip: Block, candidate: Block) -> bool:
        view = {
            "index": candidate.index,
            "timestamp": candidate.timestamp,
            "prev_hash": candidate.prev_hash,
            "tx": candidate.tx,
            "block_hash": candidate.block_hash,
        }
        if self.tamper is not None:
            view = self.tamper(dict(view))
        if view["index"] != tip.index + 1:
            return False
        if view["prev_hash"] != tip.block_hash:
            return False
        try:
            expected = compute_block_hash(
                view["index"], view["timestamp"], view["prev_hash"], view["tx"]
            )
        except ValidationError:
            return False
        return expected == view["block_hash"]


@dataclass
class ValidatorPool:
    node_count: int = 3
    approval_threshold: int = 2
    validators: list[Validator] = field(default_factory=list)

    def __post_init__(self):
        if self.node_count < 1:
            raise ValidationError("node_count must be >= 1")
        if not 1 <= self.approval_threshold <= self.node_count:
            raise ValidationError("approval_threshold must be in [1, node_count]")
        if not self.validators:
            self.validators = [Validator(i) for i in range(self.node_count)]
        elif len(self.validators) != self.node_count:
            raise ValidationError("validators list must match node_count")

    def approvals(self, tip: Block, candidate: Block) -> int:
        return sum(1 for v in self.validators if v.approve(tip, candidate))


class Chain:
    """Ordered block list rooted at a fixed genesis.

    Single-writer contract: appends are serialized through an internal lock;
    readers always observe a fully committed prefix.
    """

    def __init__(self, blocks: list[Block] | None = None):
        self._lock = threading.Lock()
        if blocks:
            self.blocks = list(blocks)
        else:
            self.blocks = [make_genesis()]

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def tip(self) -> Block:
        return self.blocks[-1]

    def append_block(self, tx: dict, pool: ValidatorPool, timestamp: int) -> Block:
        """Build, validate, and commit the next block. Atomic: on any error
        the chain is left untouched."""
        with self._lock:
            tip = self.tip
            candidate = Block(
                index=tip.index + 1,
                timestamp=timestamp,
                prev_hash=tip.block_hash,
                tx=tx,
                block_hash=compute_block_hash(tip.index + 1, timestamp, tip.block_hash, tx),
            )
            got = pool.approvals(tip, candidate)
            if got < pool.approval_threshold:
                raise ConsensusRejectedError(
                    f"{got}/{pool.node_count} approvals, threshold {pool.approval_threshold}"
                )
            self.blocks.append(candidate)
            return candidate

    def serialize(self) -> str:
        return "".join(b.serialize() + "\n" for b in self.blocks)

    @classmethod
    def deserialize(cls, text: str) -> "Chain":
        lines = [ln for ln in text.split("\n") if ln]
        if not lines:
            raise ValidationError("empty chain file")
        return cls([Block.deserialize(ln) for ln in lines])


@dataclass(frozen=True)
class BlockCheck:
    index: int
    linkage_ok: bool
    hash_ok: bool


@dataclass(frozen=True)
class VerificationReport:
    checks: list[BlockCheck]
    ok: bool

    @property
    def first_failure(self) -> int | None:
        for c in self.checks:
            if not (c.linkage_ok and c.hash_ok):
                return c.index
        return None


def verify_chain(chain: Chain) -> VerificationReport:
    """Re-derive every linkage and hash; corruption is a report outcome,
    never an exception."""
    checks = []
    for i, block in enumerate(chain.blocks):
        if i == 0:
            linkage_ok = block.index == 0 and block.prev_hash == GENESIS_PREV_HASH
        else:
            prev = chain.blocks[i - 1]
            linkage_ok = (
                block.index == prev.index + 1 and block.prev_hash == prev.block_hash
            )
        try:
            hash_ok = (
                compute_block_hash(block.index, block.timestamp, block.prev_hash, block.tx)
                == block.block_hash
            )
        except ValidationError:
            hash_ok = False
        checks.append(BlockCheck(block.index, linkage_ok, hash_ok))
    return VerificationReport(checks, all(c.linkage_ok and c.hash_ok for c in checks))


def verify_chain_file(lines: Iterable[str]) -> VerificationReport:
    """Verify a persisted chain given its raw lines; an unparsable line is
    reported as a failed block at its position."""
    blocks: list[Block] = []
    checks: list[BlockCheck] = []
    for pos, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            blocks.append(Block.deserialize(line))
        except ValidationError:
            checks.append(BlockCheck(pos, False, False))
            return VerificationReport(checks, False)
    report = verify_chain(Chain(blocks)) if blocks else VerificationReport([], False)
    return report

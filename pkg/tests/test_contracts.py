import hashlib
import json

import pytest

from licenseledger.contracts import ChainState, normalize_wallet
from licenseledger.errors import (
    ConflictError,
    IntegrityError,
    NotFoundError,
    ValidationError,
)
from licenseledger.ledger import Chain, ValidatorPool
from licenseledger.licensing import LicenseId

WALLET = "0x" + "ab" * 20
OTHER = "0x" + "cd" * 20


def fhash(seed: str) -> str:
    return hashlib.sha256(seed.encode()).hexdigest()


@pytest.fixture
def state():
    return ChainState(Chain(), ValidatorPool())


def test_wallet_normalization():
    assert normalize_wallet("0x" + "AB" * 20) == WALLET
    with pytest.raises(ValidationError):
        normalize_wallet("0x" + "ab" * 19)
    with pytest.raises(ValidationError):
        normalize_wallet("ab" * 21)


def test_register_and_query_roundtrip(state):
    hashes = [fhash("a"), fhash("b"), fhash("c")]
    idx = state.register_project(WALLET, "proj-1", [], LicenseId.MIT, hashes, 10)
    assert idx == 1
    for h in hashes:
        assert state.query_function_hash(h) == [("proj-1", LicenseId.MIT)]


def test_duplicate_registration_conflicts(state):
    state.register_project(WALLET, "proj-1", [], LicenseId.MIT, [fhash("a")], 10)
    before = len(state.chain)
    with pytest.raises(ConflictError):
        state.register_project(WALLET, "proj-1", [], LicenseId.MIT, [fhash("b")], 11)
    assert len(state.chain) == before


def test_unknown_parent_rejected(state):
    with pytest.raises(NotFoundError):
        state.register_project(WALLET, "proj-2", ["proj-404"], LicenseId.MIT, [], 10)


def test_parent_link_retrievable(state):
    state.register_project(WALLET, "proj-7", [], LicenseId.LGPL_2_1, [fhash("x")], 10)
    state.register_project(OTHER, "proj-8", ["proj-7"], LicenseId.LGPL_2_1, [fhash("y")], 11)
    assert state.registrations["proj-8"].parents == ("proj-7",)


def test_hashes_stored_sorted_deduplicated(state):
    hashes = [fhash("b"), fhash("a"), fhash("b")]
    state.register_project(WALLET, "proj-1", [], LicenseId.MIT, hashes, 10)
    stored = state.registrations["proj-1"].function_hashes
    assert list(stored) == sorted({fhash("a"), fhash("b")})


def test_agreement_roundtrip(state):
    state.register_project(WALLET, "proj-7", [], LicenseId.LGPL_2_1, [fhash("x")], 10)
    idx = state.record_download_agreement(OTHER, "proj-7", LicenseId.LGPL_2_1, 20)
    got = state.agreements_for(OTHER)
    assert [a.block_index for a in got] == [idx]
    assert got[0].license == LicenseId.LGPL_2_1
    assert got[0].timestamp == 20


def test_agreement_unknown_project(state):
    before = len(state.chain)
    with pytest.raises(NotFoundError):
        state.record_download_agreement(WALLET, "proj-99", LicenseId.MIT, 20)
    assert len(state.chain) == before


def test_agreement_license_mismatch(state):
    state.register_project(WALLET, "proj-7", [], LicenseId.LGPL_2_1, [], 10)
    with pytest.raises(IntegrityError):
        state.record_download_agreement(OTHER, "proj-7", LicenseId.MIT, 20)


def test_repeat_downloads_not_deduplicated(state):
    state.register_project(WALLET, "proj-7", [], LicenseId.LGPL_2_1, [], 10)
    i1 = state.record_download_agreement(OTHER, "proj-7", LicenseId.LGPL_2_1, 20)
    i2 = state.record_download_agreement(OTHER, "proj-7", LicenseId.LGPL_2_1, 21)
    assert i1 != i2
    assert len(state.agreements_for(OTHER)) == 2


def test_wallet_with_no_downloads(state):
    assert state.agreements_for(WALLET) == []


def test_hash_absent_gives_empty(state):
    assert state.query_function_hash(fhash("nothing")) == []


def test_shared_hash_returns_both_in_commit_order(state):
    shared = fhash("shared")
    state.register_project(WALLET, "proj-1", [], LicenseId.MIT, [shared], 10)
    state.register_project(OTHER, "proj-2", [], LicenseId.GPL_3_0, [shared], 11)
    got = state.query_function_hash(shared)
    # Oracle: brute-force linear scan over the serialized chain.
    expected = []
    for line in state.chain.serialize().splitlines():
        tx = json.loads(line)["tx"]
        if tx.get("type") == "project_registration" and shared in tx["function_hashes"]:
            expected.append((tx["project_id"], LicenseId(tx["license"])))
    assert got == expected
    assert got == [("proj-1", LicenseId.MIT), ("proj-2", LicenseId.GPL_3_0)]


def test_views_rebuild_identically_from_persisted_chain(state):
    state.register_project(WALLET, "proj-1", [], LicenseId.MIT, [fhash("a")], 10)
    state.record_download_agreement(OTHER, "proj-1", LicenseId.MIT, 20)
    state.record_download_agreement(WALLET, "proj-1", LicenseId.MIT, 21)

    rebuilt = ChainState(Chain.deserialize(state.chain.serialize()), ValidatorPool())
    assert rebuilt.registrations == state.registrations
    assert rebuilt.agreements == state.agreements
    assert rebuilt.hash_index == state.hash_index


def test_agreements_match_file_scan_oracle(state):
    state.register_project(WALLET, "proj-1", [], LicenseId.MIT, [], 10)
    state.record_download_agreement(OTHER, "proj-1", LicenseId.MIT, 20)
    state.record_download_agreement(WALLET, "proj-1", LicenseId.MIT, 21)
    state.record_download_agreement(OTHER, "proj-1", LicenseId.MIT, 22)

    expected = []
    for line in state.chain.serialize().splitlines():
        obj = json.loads(line)
        tx = obj["tx"]
        if tx.get("type") == "download_agreement" and tx["downloader"] == OTHER:
            expected.append((tx["project_id"], tx["timestamp"], obj["index"]))
    got = [(a.project_id, a.timestamp, a.block_index) for a in state.agreements_for(OTHER)]
    assert got == expected

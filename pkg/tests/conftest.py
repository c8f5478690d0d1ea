import io
import json
import zipfile

import pytest

from licenseledger.service import Platform

WALLET_A = "0x" + "a1" * 20
WALLET_B = "0x" + "b2" * 20
WALLET_C = "0x" + "c3" * 20


def make_zip(sources: dict[str, str]) -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        for path, text in sorted(sources.items()):
            zf.writestr(path, text)
    return buf.getvalue()


@pytest.fixture
def wallets_file(tmp_path):
    path = tmp_path / "wallets.json"
    path.write_text(
        json.dumps({"alice": WALLET_A, "bob": WALLET_B, "carol": WALLET_C}),
        "utf-8",
    )
    return path


@pytest.fixture
def platform(tmp_path, wallets_file):
    ticker = iter(range(1_000, 1_000_000))
    return Platform(tmp_path / "data", wallets_file, clock=lambda: next(ticker))

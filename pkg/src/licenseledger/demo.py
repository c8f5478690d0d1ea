"""Seed data for the end-to-end walkthrough: an LGPL-2.1 project, a second
user who downloads it, and a modified copy whose Apache-2.0 declaration is
blocked while an LGPL-2.1 declaration goes through."""

from __future__ import annotations

import io
import json
import zipfile
from pathlib import Path

from .licensing import LicenseId
from .service import Platform

DEMO_WALLETS = {
    "alice": "0x" + "a1" * 20,
    "bob": "0x" + "b2" * 20,
}

ORIGINAL_SOURCES = {
    "src/matrix.c": (
        "int mat_add(int a, int b) { return a + b; }\n"
        "int mat_scale(int a, int k) { return a * k; }\n"
        "float mat_norm(float x) { return x < 0 ? -x : x; }\n"
    ),
    "src/solver.c": (
        "void solve_step(int n) { n = n + 1; }\n"
        "double residual(double x, double y) { return x - y; }\n"
    ),
    "README.md": "A small linear-algebra helper.\n",
}

# Keeps mat_add and residual byte-identical, so the derivative shares two
# function hashes with the original.
DERIVED_SOURCES = {
    "src/matrix.c": (
        "int mat_add(int a, int b) { return a + b; }\n"
        "int mat_scale_fast(int a, int k) { return (a * k) << 0; }\n"
    ),
    "src/solver.c": (
        "double residual(double x, double y) { return x - y; }\n"
        "void solve_step_v2(int n) { n = n + 2; }\n"
    ),
    "README.md": "A tuned fork of the linear-algebra helper.\n",
}


def build_zip(sources: dict[str, str]) -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
        for path, text in sorted(sources.items()):
            zf.writestr(path, text)
    return buf.getvalue()


def write_demo_wallets(path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(DEMO_WALLETS, indent=2) + "\n", "utf-8")
    return p


def seed_demo(platform: Platform) -> str:
    """Upload the original project as alice and have bob download it.
    Returns the seeded project id."""
    verdict = platform.upload_workflow(
        "alice",
        build_zip(ORIGINAL_SOURCES),
        name="MatrixSolver",
        description="Linear algebra routines for small dense systems",
        declared_license=LicenseId.LGPL_2_1,
    )
    project_id = verdict.project_id
    platform.download_workflow("bob", project_id)
    return project_id

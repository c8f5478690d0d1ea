"""Command-line entry points: serve the API, scan a tree, check license
compatibility, verify a persisted chain, and seed the demo scenario."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .codescan import hash_function, scan_project
from .errors import PlatformError
from .ledger import verify_chain_file
from .licensing import load_matrix, parse_license_id
from .service import Platform


@click.group()
def main():
    """OSS license compliance platform on an append-only ledger."""


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--wallets", required=True, type=click.Path(exists=True),
              envvar="LICENSELEDGER_WALLETS")
@click.option("--data-dir", required=True, type=click.Path())
@click.option("--ui-dir", type=click.Path(exists=True), default=None,
              help="built frontend directory (index.html + dist/) to serve at /")
def serve(port, host, wallets, data_dir, ui_dir):
    """Run the HTTP/JSON API, optionally with the browser UI."""
    import uvicorn

    from .api import create_app

    platform = Platform(data_dir, wallets)
    app = create_app(platform)
    if ui_dir:
        from fastapi.responses import FileResponse
        from fastapi.staticfiles import StaticFiles

        ui = Path(ui_dir)
        app.mount("/dist", StaticFiles(directory=ui / "dist"), name="dist")

        @app.get("/", include_in_schema=False)
        def index():
            return FileResponse(ui / "index.html")

    uvicorn.run(app, host=host, port=port)


@main.command()
@click.argument("path", type=click.Path(exists=True))
def scan(path):
    """Extract and fingerprint functions from a directory or ZIP."""
    result = scan_project(path)
    for span in result.spans:
        click.echo(f"{span.file_path}\t{span.language.value}\t{span.name}\t{hash_function(span)}")
    click.echo(
        f"# files_scanned={result.files_scanned} files_skipped={result.files_skipped} "
        f"functions={len(result.spans)} unique_hashes={len(result.hashes)}",
        err=True,
    )


@main.command()
@click.option("--from", "origin", required=True, help="license of the original code")
@click.option("--to", "declared", required=True, help="license declared for the derivative")
def check(origin, declared):
    """Print ALLOW or DENY for a relicensing direction."""
    matrix = load_matrix()
    o = parse_license_id(origin)
    d = parse_license_id(declared)
    if matrix.is_compatible(o, d):
        click.echo(f"ALLOW {o} -> {d}")
    else:
        click.echo(f"DENY {o} -> {d}")
        compatible = ", ".join(sorted(l.value for l in matrix.compatible_with(o)))
        click.echo(f"compatible with {o}: {compatible}")
        sys.exit(1)


@main.group()
def chain():
    """Chain file operations."""


@chain.command("verify")
@click.argument("chain_file", type=click.Path(exists=True))
def chain_verify(chain_file):
    """Re-derive every linkage and hash in a persisted chain file."""
    lines = Path(chain_file).read_text("utf-8").split("\n")
    report = verify_chain_file(lines)
    for c in report.checks:
        status = "ok" if c.linkage_ok and c.hash_ok else "FAIL"
        click.echo(f"block {c.index}: linkage={c.linkage_ok} hash={c.hash_ok} {status}")
    click.echo("chain OK" if report.ok else f"chain CORRUPT at index {report.first_failure}")
    if not report.ok:
        sys.exit(1)


@main.command()
@click.option("--data-dir", required=True, type=click.Path())
@click.option("--wallets", type=click.Path(), default=None,
              help="wallet config to write/use; defaults to <data-dir>/wallets.json")
def demo(data_dir, wallets):
    """Seed the walkthrough scenario and show the conflict verdict."""
    from .demo import DERIVED_SOURCES, build_zip, seed_demo, write_demo_wallets
    from .licensing import LicenseId

    wallets_path = Path(wallets) if wallets else Path(data_dir) / "wallets.json"
    if not wallets_path.exists():
        write_demo_wallets(wallets_path)
    platform = Platform(data_dir, wallets_path)
    project_id = seed_demo(platform)
    click.echo(f"seeded {project_id} (LGPL-2.1), downloaded by bob")

    verdict = platform.upload_workflow(
        "bob", build_zip(DERIVED_SOURCES), "MatrixSolver-fork",
        "Tuned fork", LicenseId.APACHE_2_0,
    )
    click.echo(f"upload as Apache-2.0: {verdict.outcome.value}")
    for c in verdict.conflicts:
        click.echo(f"  conflict with {c.matched_project_id} ({c.origin_license}), "
                   f"{c.matched_hash_count} matched function(s)")
    click.echo("  compatible licenses: " + ", ".join(sorted(s.value for s in verdict.suggestions)))

    verdict = platform.upload_workflow(
        "bob", build_zip(DERIVED_SOURCES), "MatrixSolver-fork",
        "Tuned fork", LicenseId.LGPL_2_1,
    )
    click.echo(f"upload as LGPL-2.1: {verdict.outcome.value} ({verdict.project_id})")


def run():
    try:
        main()
    except PlatformError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()

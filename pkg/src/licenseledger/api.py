"""HTTP/JSON surface over the platform workflows.

Auth is prototype-grade on purpose: a username request header mapped
through the administrator-maintained wallet config.
"""

from __future__ import annotations

from fastapi import FastAPI, File, Form, Header, HTTPException, Response, UploadFile
from fastapi.responses import JSONResponse

from .errors import (
    AuthError,
    ConflictError,
    NotFoundError,
    ScanError,
    UnsupportedLicenseError,
)
from .licensing import parse_license_id
from .registry import ProjectRecord
from .service import Platform, VerdictOutcome

USERNAME_HEADER = "X-Username"
AGREEMENT_HEADER = "X-Agreement-Block"


def _summary(record: ProjectRecord) -> dict:
    return {
        "project_id": record.project_id,
        "name": record.name,
        "description": record.description,
        "uploader": record.uploader,
        "license": record.license.value,
        "parents": record.parents,
    }


def _full(record: ProjectRecord) -> dict:
    d = record.to_dict()
    return d


def create_app(platform: Platform) -> FastAPI:
    app = FastAPI(title="licenseledger", version="0.1.0")

    def require_user(username: str | None) -> str:
        if not username:
            raise HTTPException(401, "missing username header")
        try:
            platform.wallet_for(username)
        except AuthError as exc:
            raise HTTPException(401, str(exc)) from exc
        return username

    @app.get("/api/projects")
    def list_projects(query: str = ""):
        return [_summary(r) for r in platform.projects.search_projects(query)]

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str):
        try:
            return _full(platform.projects.get_project(project_id))
        except NotFoundError as exc:
            raise HTTPException(404, str(exc)) from exc

    @app.post("/api/projects", status_code=201)
    def upload_project(
        archive: UploadFile = File(...),
        name: str = Form(...),
        description: str = Form(""),
        license: str = Form(...),
        parents: list[str] = Form([]),
        x_username: str | None = Header(None, alias=USERNAME_HEADER),
    ):
        username = require_user(x_username)
        try:
            declared = parse_license_id(license)
        except UnsupportedLicenseError as exc:
            raise HTTPException(422, str(exc)) from exc
        data = archive.file.read()
        try:
            verdict = platform.upload_workflow(
                username, data, name, description, declared, tuple(parents)
            )
        except NotFoundError as exc:
            raise HTTPException(404, str(exc)) from exc
        except ScanError as exc:
            raise HTTPException(422, str(exc)) from exc
        except ConflictError as exc:
            raise HTTPException(409, str(exc)) from exc
        if verdict.outcome == VerdictOutcome.CONFLICT:
            return JSONResponse(
                status_code=409,
                content={
                    "outcome": "Conflict",
                    "conflicts": [
                        {
                            "matched_project_id": c.matched_project_id,
                            "origin_license": c.origin_license.value,
                            "matched_hash_count": c.matched_hash_count,
                        }
                        for c in verdict.conflicts
                    ],
                    "suggestions": sorted(s.value for s in verdict.suggestions),
                    "explanations": [
                        {
                            "hash": e.hash,
                            "file_path_in_upload": e.file_path_in_upload,
                            "matched_project_id": e.matched_project_id,
                        }
                        for e in verdict.explanations
                    ],
                },
            )
        return {"outcome": "Accepted", "project_id": verdict.project_id, "chain_ref": verdict.chain_ref}

    @app.post("/api/projects/{project_id}/download")
    def download_project(
        project_id: str,
        x_username: str | None = Header(None, alias=USERNAME_HEADER),
    ):
        username = require_user(x_username)
        try:
            data, block_index = platform.download_workflow(username, project_id)
        except NotFoundError as exc:
            raise HTTPException(404, str(exc)) from exc
        return Response(
            content=data,
            media_type="application/zip",
            headers={AGREEMENT_HEADER: str(block_index)},
        )

    @app.get("/api/licenses")
    def list_licenses():
        return [
            {
                "id": info.id.value,
                "full_name": info.full_name,
                "category": info.category.value,
                "info_url": info.info_url,
            }
            for info in platform.catalog.values()
        ]

    @app.get("/api/licenses/{license_id}/compatible")
    def compatible_licenses(license_id: str):
        try:
            origin = parse_license_id(license_id)
        except UnsupportedLicenseError as exc:
            raise HTTPException(404, str(exc)) from exc
        return {
            "origin": origin.value,
            "compatible": sorted(l.value for l in platform.matrix.compatible_with(origin)),
        }

    @app.get("/api/chain")
    def get_chain():
        return [
            {
                "index": b.index,
                "timestamp": b.timestamp,
                "prev_hash": b.prev_hash,
                "tx": b.tx,
                "block_hash": b.block_hash,
            }
            for b in platform.state.chain.blocks
        ]

    @app.get("/api/chain/verify")
    def verify_chain_endpoint():
        report = platform.verify()
        return {
            "ok": report.ok,
            "first_failure": report.first_failure,
            "checks": [
                {"index": c.index, "linkage_ok": c.linkage_ok, "hash_ok": c.hash_ok}
                for c in report.checks
            ],
        }

    @app.get("/api/agreements")
    def my_agreements(x_username: str | None = Header(None, alias=USERNAME_HEADER)):
        username = require_user(x_username)
        wallet = platform.wallet_for(username)
        return [
            {
                "project_id": a.project_id,
                "license": a.license.value,
                "timestamp": a.timestamp,
                "block_index": a.block_index,
            }
            for a in platform.state.agreements_for(wallet)
        ]

    return app

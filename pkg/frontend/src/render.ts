/** Pure HTML renderers. Everything shown — badges, verdicts, suggestions —
 * is taken verbatim from API response bodies, so these functions are
 * testable against mocked bodies without a server. */

import type { ConflictBody, LicenseInfo, ProjectSummary } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderLicenseBadge(license: string): string {
  return `<span class="license-badge">${escapeHtml(license)}</span>`;
}

export function renderProjectCard(project: ProjectSummary): string {
  const parents = project.parents.length
    ? `<div class="parents">derived from: ${project.parents
        .map((p) => `<a href="#project/${escapeHtml(p)}">${escapeHtml(p)}</a>`)
        .join(", ")}</div>`
    : "";
  return `<article class="project-card" data-id="${escapeHtml(project.project_id)}">
  <h3><a href="#project/${escapeHtml(project.project_id)}">${escapeHtml(project.name)}</a></h3>
  ${renderLicenseBadge(project.license)}
  <p>${escapeHtml(project.description)}</p>
  <div class="uploader">uploaded by ${escapeHtml(project.uploader)}</div>
  ${parents}
</article>`;
}

export function renderProjectList(projects: ProjectSummary[]): string {
  if (projects.length === 0) {
    return `<p class="empty-state">No projects match your search.</p>`;
  }
  return projects.map(renderProjectCard).join("\n");
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}

export interface ExplanationRow {
  hash: string;
  file_path_in_upload: string;
}

/** Conflict page: one row per conflicting origin project, one chip per
 * suggested license, and optional shared-function rows explaining why the
 * upload was recognized as a derivative. */
export function renderConflictView(body: ConflictBody, explanations: ExplanationRow[] = []): string {
  const rows = body.conflicts
    .map(
      (c) => `<tr class="conflict-row" data-project="${escapeHtml(c.matched_project_id)}">
  <td>${escapeHtml(c.matched_project_id)}</td>
  <td>${renderLicenseBadge(c.origin_license)}</td>
  <td class="match-count">${c.matched_hash_count}</td>
</tr>`,
    )
    .join("\n");
  const chips = body.suggestions
    .map(
      (s) =>
        `<button class="suggestion-chip" data-license="${escapeHtml(s)}">${escapeHtml(s)}</button>`,
    )
    .join("\n");
  const explain = explanations.length
    ? `<details class="explanations"><summary>Why is this a derivative?</summary>
<ul>${explanations
        .map(
          (e) =>
            `<li><code>${escapeHtml(e.file_path_in_upload)}</code> contains a function with fingerprint <code>${escapeHtml(e.hash.slice(0, 12))}…</code> already on the ledger</li>`,
        )
        .join("\n")}</ul></details>`
    : "";
  const chipBlock = body.suggestions.length
    ? `<p>Pick a compatible license to retry the same archive:</p>
<div class="suggestions">${chips}</div>`
    : `<p class="no-suggestions">No supported license is compatible with every matched origin.</p>`;
  return `<section class="conflict-view">
<h2>Upload blocked: license conflict</h2>
<p>The declared license is incompatible with the license of matched origin projects.</p>
<table class="conflict-table">
<thead><tr><th>Origin project</th><th>Origin license</th><th>Matched functions</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>
${chipBlock}
${explain}
</section>`;
}

export function renderUploadSuccess(projectId: string, chainRef: number): string {
  return `<section class="upload-success">
<h2>Project uploaded</h2>
<p>Registered as <strong>${escapeHtml(projectId)}</strong> (ledger block ${chainRef}).</p>
<p><a href="#project/${escapeHtml(projectId)}">View project</a></p>
</section>`;
}

export function renderLicenseOptions(licenses: LicenseInfo[], selected = ""): string {
  return licenses
    .map(
      (l) =>
        `<option value="${escapeHtml(l.id)}"${l.id === selected ? " selected" : ""}>${escapeHtml(l.id)} — ${escapeHtml(l.full_name)}</option>`,
    )
    .join("\n");
}

export function renderLicenseHelp(licenses: LicenseInfo[]): string {
  return `<ul class="license-help">${licenses
    .map(
      (l) =>
        `<li>${renderLicenseBadge(l.id)} ${escapeHtml(l.category)} — <a href="${escapeHtml(l.info_url)}" target="_blank" rel="noopener">license text</a></li>`,
    )
    .join("\n")}</ul>`;
}

export function renderAgreementNotice(projectName: string, license: string): string {
  return `<div class="agreement-notice">
<p>Downloading <strong>${escapeHtml(projectName)}</strong> records your acceptance of the
<strong>${escapeHtml(license)}</strong> license terms immutably on the ledger.</p>
</div>`;
}

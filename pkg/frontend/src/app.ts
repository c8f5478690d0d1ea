/** SPA wiring: hash routing between browse, upload, and chain views.
 * All state that matters lives on the server; this file only fetches and
 * renders. */

import { ApiClient, ApiError } from "./api.js";
import {
  emptyForm,
  parseParents,
  UploadFormState,
  validateForm,
  withSuggestedLicense,
} from "./formState.js";
import {
  renderAgreementNotice,
  renderConflictView,
  renderErrorBanner,
  renderLicenseHelp,
  renderLicenseOptions,
  renderProjectList,
  renderUploadSuccess,
} from "./render.js";
import type { LicenseInfo } from "./types.js";

const root = document.getElementById("app") as HTMLElement;

function currentUser(): string {
  let user = localStorage.getItem("username");
  if (!user) {
    user = window.prompt("Username (must be in the wallet config):") ?? "";
    localStorage.setItem("username", user);
  }
  return user;
}

const api = new ApiClient("", currentUser());

let licenses: LicenseInfo[] = [];
let form: UploadFormState = emptyForm();

async function showBrowse(query = ""): Promise<void> {
  root.innerHTML = `<h2>Projects</h2>
<form id="search-form"><input id="search-box" type="search" placeholder="Search projects" value="${query}">
<button type="submit">Search</button></form>
<div id="project-list">Loading…</div>`;
  const list = document.getElementById("project-list") as HTMLElement;
  (document.getElementById("search-form") as HTMLFormElement).addEventListener("submit", (ev) => {
    ev.preventDefault();
    void showBrowse((document.getElementById("search-box") as HTMLInputElement).value);
  });
  try {
    const projects = await api.listProjects(query);
    list.innerHTML = renderProjectList(projects);
  } catch (err) {
    list.innerHTML = renderErrorBanner(`Could not load projects: ${String(err)}`);
  }
}

async function showProject(id: string): Promise<void> {
  try {
    const project = await api.getProject(id);
    root.innerHTML = `<h2>${project.name}</h2>
${renderProjectList([project])}
${renderAgreementNotice(project.name, project.license)}
<button id="download-btn">Accept license and download</button>
<div id="download-status"></div>`;
    (document.getElementById("download-btn") as HTMLButtonElement).addEventListener(
      "click",
      async () => {
        const status = document.getElementById("download-status") as HTMLElement;
        try {
          const { data, agreementBlock } = await api.download(id);
          const url = URL.createObjectURL(data);
          status.innerHTML = `<p>Agreement recorded in ledger block ${agreementBlock}.
<a href="${url}" download="${id}.zip">Save archive</a></p>`;
        } catch (err) {
          status.innerHTML = renderErrorBanner(`Download failed: ${String(err)}`);
        }
      },
    );
  } catch (err) {
    root.innerHTML = renderErrorBanner(`Could not load ${id}: ${String(err)}`);
  }
}

function readFormInputs(): void {
  form.name = (document.getElementById("f-name") as HTMLInputElement).value;
  form.description = (document.getElementById("f-desc") as HTMLTextAreaElement).value;
  form.license = (document.getElementById("f-license") as HTMLSelectElement).value;
  form.parents = parseParents((document.getElementById("f-parents") as HTMLInputElement).value);
  const files = (document.getElementById("f-archive") as HTMLInputElement).files;
  if (files && files.length > 0) {
    form.archive = files[0];
    form.archiveName = files[0].name;
  }
}

async function submitUpload(state: UploadFormState): Promise<void> {
  const status = document.getElementById("upload-status") as HTMLElement;
  const errors = validateForm(state, licenses.map((l) => l.id));
  if (errors.length > 0) {
    status.innerHTML = renderErrorBanner(errors.join(" "));
    return;
  }
  try {
    const result = await api.upload({
      archive: state.archive as Blob,
      archiveName: state.archiveName,
      name: state.name,
      description: state.description,
      license: state.license,
      parents: state.parents,
    });
    if (result.kind === "accepted") {
      root.innerHTML = renderUploadSuccess(result.body.project_id, result.body.chain_ref);
      form = emptyForm();
      return;
    }
    status.innerHTML = renderConflictView(result.body, result.body.explanations ?? []);
    for (const chip of status.querySelectorAll<HTMLButtonElement>(".suggestion-chip")) {
      chip.addEventListener("click", () => {
        // One-click retry: identical archive and metadata, suggested license.
        form = withSuggestedLicense(form, chip.dataset.license ?? "");
        void submitUpload(form);
      });
    }
  } catch (err) {
    // Network or server failure: keep the form contents, show a retryable error.
    const detail = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
    status.innerHTML =
      renderErrorBanner(`Upload failed (${detail}). Your form entries are preserved.`) +
      `<button id="retry-btn">Retry</button>`;
    document.getElementById("retry-btn")?.addEventListener("click", () => void submitUpload(form));
  }
}

async function showUpload(): Promise<void> {
  if (licenses.length === 0) {
    try {
      licenses = await api.listLicenses();
    } catch (err) {
      root.innerHTML = renderErrorBanner(`Could not load licenses: ${String(err)}`);
      return;
    }
  }
  root.innerHTML = `<h2>Upload a project</h2>
<p>The same form is used for new projects and derivative works; the server
detects derivation from function fingerprints.</p>
<form id="upload-form">
  <label>Name <input id="f-name" value="${form.name}"></label>
  <label>Description <textarea id="f-desc">${form.description}</textarea></label>
  <label>Archive (ZIP) <input id="f-archive" type="file" accept=".zip"></label>
  <label>License <select id="f-license"><option value=""></option>${renderLicenseOptions(licenses, form.license)}</select></label>
  <label>Parent projects (optional, comma-separated) <input id="f-parents" value="${form.parents.join(", ")}"></label>
  <button type="submit">Upload</button>
</form>
<details><summary>About the licenses</summary>${renderLicenseHelp(licenses)}</details>
<div id="upload-status"></div>`;
  (document.getElementById("upload-form") as HTMLFormElement).addEventListener("submit", (ev) => {
    ev.preventDefault();
    readFormInputs();
    void submitUpload(form);
  });
}

async function showChain(): Promise<void> {
  try {
    const [blocks, verify] = await Promise.all([api.chain(), api.verifyChain()]);
    const rows = blocks
      .map(
        (b) =>
          `<tr><td>${b.index}</td><td>${String((b.tx as { type?: string }).type)}</td><td><code>${b.block_hash.slice(0, 16)}…</code></td></tr>`,
      )
      .join("\n");
    root.innerHTML = `<h2>Ledger</h2>
<p>Integrity: ${verify.ok ? "verified" : `CORRUPT at block ${verify.first_failure}`}</p>
<table><thead><tr><th>#</th><th>Type</th><th>Hash</th></tr></thead><tbody>${rows}</tbody></table>`;
  } catch (err) {
    root.innerHTML = renderErrorBanner(`Could not load chain: ${String(err)}`);
  }
}

function route(): void {
  const hash = window.location.hash;
  if (hash.startsWith("#project/")) {
    void showProject(decodeURIComponent(hash.slice("#project/".length)));
  } else if (hash === "#upload") {
    void showUpload();
  } else if (hash === "#chain") {
    void showChain();
  } else {
    void showBrowse();
  }
}

window.addEventListener("hashchange", route);
route();

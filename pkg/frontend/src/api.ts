/** Thin typed client over the backend HTTP/JSON API. The UI performs no
 * compliance logic of its own: every verdict and suggestion comes from
 * these responses. */

import type {
  AcceptedBody,
  ChainBlock,
  ConflictBody,
  LicenseInfo,
  ProjectDetail,
  ProjectSummary,
  UploadResult,
  VerifyReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export interface UploadFields {
  archive: Blob;
  archiveName: string;
  name: string;
  description: string;
  license: string;
  parents: string[];
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private username: string,
    private fetchImpl: FetchLike = fetch,
  ) {}

  private headers(): Record<string, string> {
    return { "X-Username": this.username };
  }

  private async getJson<T>(path: string): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, { headers: this.headers() });
    if (!res.ok) throw new ApiError(res.status, await res.text());
    return (await res.json()) as T;
  }

  listProjects(query = ""): Promise<ProjectSummary[]> {
    const qs = query ? `?query=${encodeURIComponent(query)}` : "";
    return this.getJson(`/api/projects${qs}`);
  }

  getProject(id: string): Promise<ProjectDetail> {
    return this.getJson(`/api/projects/${encodeURIComponent(id)}`);
  }

  listLicenses(): Promise<LicenseInfo[]> {
    return this.getJson("/api/licenses");
  }

  compatibleWith(licenseId: string): Promise<{ origin: string; compatible: string[] }> {
    return this.getJson(`/api/licenses/${encodeURIComponent(licenseId)}/compatible`);
  }

  chain(): Promise<ChainBlock[]> {
    return this.getJson("/api/chain");
  }

  verifyChain(): Promise<VerifyReport> {
    return this.getJson("/api/chain/verify");
  }

  async upload(fields: UploadFields): Promise<UploadResult> {
    const form = new FormData();
    form.append("archive", fields.archive, fields.archiveName);
    form.append("name", fields.name);
    form.append("description", fields.description);
    form.append("license", fields.license);
    for (const parent of fields.parents) form.append("parents", parent);

    const res = await this.fetchImpl(`${this.baseUrl}/api/projects`, {
      method: "POST",
      headers: this.headers(),
      body: form,
    });
    if (res.status === 201) {
      return { kind: "accepted", body: (await res.json()) as AcceptedBody };
    }
    if (res.status === 409) {
      return { kind: "conflict", body: (await res.json()) as ConflictBody };
    }
    throw new ApiError(res.status, await res.text());
  }

  /** Records the agreement on-chain server-side, then hands back the archive
   * and the committed block index. */
  async download(id: string): Promise<{ data: Blob; agreementBlock: number }> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/api/projects/${encodeURIComponent(id)}/download`,
      { method: "POST", headers: this.headers() },
    );
    if (!res.ok) throw new ApiError(res.status, await res.text());
    return {
      data: await res.blob(),
      agreementBlock: Number(res.headers.get("X-Agreement-Block") ?? -1),
    };
  }
}

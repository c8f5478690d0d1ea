/** Shapes of the JSON bodies served by the backend API. */

export interface ProjectSummary {
  project_id: string;
  name: string;
  description: string;
  uploader: string;
  license: string;
  parents: string[];
}

export interface ProjectDetail extends ProjectSummary {
  language_mix: Record<string, number>;
  chain_ref: number;
  archive_ref: string;
}

export interface LicenseInfo {
  id: string;
  full_name: string;
  category: string;
  info_url: string;
}

export interface ConflictEntry {
  matched_project_id: string;
  origin_license: string;
  matched_hash_count: number;
}

export interface ExplanationEntry {
  hash: string;
  file_path_in_upload: string;
  matched_project_id: string;
}

export interface ConflictBody {
  outcome: "Conflict";
  conflicts: ConflictEntry[];
  suggestions: string[];
  explanations?: ExplanationEntry[];
}

export interface AcceptedBody {
  outcome: "Accepted";
  project_id: string;
  chain_ref: number;
}

export type UploadResult =
  | { kind: "accepted"; body: AcceptedBody }
  | { kind: "conflict"; body: ConflictBody };

export interface ChainBlock {
  index: number;
  timestamp: number;
  prev_hash: string;
  tx: Record<string, unknown>;
  block_hash: string;
}

export interface VerifyReport {
  ok: boolean;
  first_failure: number | null;
  checks: { index: number; linkage_ok: boolean; hash_ok: boolean }[];
}

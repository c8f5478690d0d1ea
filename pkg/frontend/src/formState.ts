/** Upload form state kept outside the DOM so a failed or conflicted
 * submission never loses what the user entered, and a suggestion chip can
 * resubmit the same archive under a new license. */

export interface UploadFormState {
  name: string;
  description: string;
  license: string;
  parents: string[];
  archive: Blob | null;
  archiveName: string;
}

export function emptyForm(): UploadFormState {
  return { name: "", description: "", license: "", parents: [], archive: null, archiveName: "" };
}

export function validateForm(state: UploadFormState, knownLicenses: string[]): string[] {
  const errors: string[] = [];
  if (!state.name.trim()) errors.push("Project name is required.");
  if (!state.archive) errors.push("Select a ZIP archive to upload.");
  if (!state.license) {
    errors.push("Choose a license.");
  } else if (!knownLicenses.includes(state.license)) {
    errors.push(`License ${state.license} is not supported.`);
  }
  return errors;
}

/** Same archive, same metadata, new license — the one-click retry offered
 * on the conflict page. */
export function withSuggestedLicense(
  state: UploadFormState,
  suggestion: string,
): UploadFormState {
  return { ...state, license: suggestion };
}

export function parseParents(raw: string): string[] {
  return raw
    .split(",")
    .map((p) => p.trim())
    .filter((p) => p.length > 0);
}

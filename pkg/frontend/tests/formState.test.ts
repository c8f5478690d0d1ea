import { describe, expect, it } from "vitest";

import {
  emptyForm,
  parseParents,
  validateForm,
  withSuggestedLicense,
} from "../src/formState.js";

const LICENSES = ["MIT", "Apache-2.0", "LGPL-2.1"];

function filledForm() {
  return {
    ...emptyForm(),
    name: "MatrixSolver-fork",
    description: "tuned fork",
    license: "Apache-2.0",
    archive: new Blob(["zipbytes"]),
    archiveName: "fork.zip",
  };
}

describe("validation", () => {
  it("accepts a complete form", () => {
    expect(validateForm(filledForm(), LICENSES)).toEqual([]);
  });

  it("requires name, archive, and license", () => {
    const errors = validateForm(emptyForm(), LICENSES);
    expect(errors).toHaveLength(3);
  });

  it("rejects a license outside the supported set", () => {
    const form = { ...filledForm(), license: "WTFPL" };
    expect(validateForm(form, LICENSES)).toEqual(["License WTFPL is not supported."]);
  });
});

describe("retry with suggested license", () => {
  it("keeps the archive and metadata, swaps only the license", () => {
    const form = filledForm();
    const retried = withSuggestedLicense(form, "LGPL-2.1");
    expect(retried.license).toBe("LGPL-2.1");
    expect(retried.archive).toBe(form.archive);
    expect(retried.archiveName).toBe(form.archiveName);
    expect(retried.name).toBe(form.name);
    expect(retried.description).toBe(form.description);
  });

  it("does not mutate the original state", () => {
    const form = filledForm();
    withSuggestedLicense(form, "MIT");
    expect(form.license).toBe("Apache-2.0");
  });
});

describe("parent parsing", () => {
  it("splits and trims", () => {
    expect(parseParents(" proj-1, proj-2 ,")).toEqual(["proj-1", "proj-2"]);
  });

  it("empty input means no parents", () => {
    expect(parseParents("")).toEqual([]);
  });
});

import { describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(status: number, body: unknown, headers: Record<string, string> = {}) {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json", ...headers },
  });
}

const UPLOAD = {
  archive: new Blob(["zip"]),
  archiveName: "p.zip",
  name: "p",
  description: "d",
  license: "MIT",
  parents: [],
};

describe("upload result mapping", () => {
  it("201 maps to an accepted result", async () => {
    const fetchMock = vi.fn(async () =>
      jsonResponse(201, { outcome: "Accepted", project_id: "proj-9", chain_ref: 3 }),
    );
    const client = new ApiClient("", "alice", fetchMock as unknown as typeof fetch);
    const result = await client.upload(UPLOAD);
    expect(result.kind).toBe("accepted");
    if (result.kind === "accepted") expect(result.body.project_id).toBe("proj-9");
  });

  it("409 maps to a conflict result carrying the body verbatim", async () => {
    const body = {
      outcome: "Conflict",
      conflicts: [{ matched_project_id: "proj-1", origin_license: "LGPL-2.1", matched_hash_count: 2 }],
      suggestions: ["LGPL-2.1"],
    };
    const fetchMock = vi.fn(async () => jsonResponse(409, body));
    const client = new ApiClient("", "bob", fetchMock as unknown as typeof fetch);
    const result = await client.upload(UPLOAD);
    expect(result.kind).toBe("conflict");
    if (result.kind === "conflict") expect(result.body).toEqual(body);
  });

  it("other statuses raise ApiError", async () => {
    const fetchMock = vi.fn(async () => new Response("boom", { status: 500 }));
    const client = new ApiClient("", "bob", fetchMock as unknown as typeof fetch);
    await expect(client.upload(UPLOAD)).rejects.toBeInstanceOf(ApiError);
  });

  it("sends the username header", async () => {
    const fetchMock = vi.fn(async () =>
      jsonResponse(201, { outcome: "Accepted", project_id: "p", chain_ref: 1 }),
    );
    const client = new ApiClient("", "carol", fetchMock as unknown as typeof fetch);
    await client.upload(UPLOAD);
    const [, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect((init.headers as Record<string, string>)["X-Username"]).toBe("carol");
  });
});

describe("queries", () => {
  it("encodes the search query", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(200, []));
    const client = new ApiClient("http://api", "alice", fetchMock as unknown as typeof fetch);
    await client.listProjects("chess engine");
    expect(fetchMock.mock.calls[0][0]).toBe("http://api/api/projects?query=chess%20engine");
  });

  it("download exposes the agreement block index header", async () => {
    const fetchMock = vi.fn(
      async () => new Response(new Blob(["zip"]), { status: 200, headers: { "X-Agreement-Block": "7" } }),
    );
    const client = new ApiClient("", "bob", fetchMock as unknown as typeof fetch);
    const { agreementBlock } = await client.download("proj-1");
    expect(agreementBlock).toBe(7);
  });

  it("non-OK GET raises ApiError with status", async () => {
    const fetchMock = vi.fn(async () => new Response("nope", { status: 404 }));
    const client = new ApiClient("", "bob", fetchMock as unknown as typeof fetch);
    await expect(client.getProject("proj-404")).rejects.toMatchObject({ status: 404 });
  });
});

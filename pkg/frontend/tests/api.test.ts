import { describe, expect, it } from "vitest";

import { ApiError, Client, polarityParam } from "../src/api.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function mockFetch(
  responses: Array<{ status?: number; body: unknown }>,
): { calls: Call[]; fn: (url: string, init?: RequestInit) => Promise<Response> } {
  const calls: Call[] = [];
  let index = 0;
  const fn = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    const next = responses[Math.min(index, responses.length - 1)];
    index += 1;
    return new Response(JSON.stringify(next.body), {
      status: next.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { calls, fn };
}

describe("polarityParam", () => {
  it("maps the three stances to their wire spellings", () => {
    expect(polarityParam(1)).toBe("1");
    expect(polarityParam(0)).toBe("0");
    expect(polarityParam(null)).toBe("null");
  });
});

describe("Client", () => {
  it("builds argument queries with exact wire polarity", async () => {
    const listing = { target: 7, polarity: null, entries: [] };
    const mock = mockFetch([{ body: listing }]);
    const client = new Client("http://svc", mock.fn);
    const got = await client.arguments(7, null);
    expect(mock.calls[0].url).toBe("http://svc/arguments?target=7&polarity=null");
    expect(got).toEqual(listing);
  });

  it("appends limit only when given", async () => {
    const mock = mockFetch([{ body: { target: 1, polarity: 1, entries: [] } }]);
    const client = new Client("", mock.fn);
    await client.arguments(1, 1, 5);
    await client.arguments(1, 0);
    expect(mock.calls[0].url).toBe("/arguments?target=1&polarity=1&limit=5");
    expect(mock.calls[1].url).toBe("/arguments?target=1&polarity=0");
  });

  it("keeps a null polarity key in comment posts", async () => {
    const mock = mockFetch([{ body: { id: 9 } }]);
    const client = new Client("", mock.fn);
    const id = await client.post({
      author: 2,
      body: "shrug",
      target: 5,
      polarity: null,
    });
    expect(id).toBe(9);
    const sent = JSON.parse(String(mock.calls[0].init?.body));
    expect(sent.target).toBe(5);
    expect("polarity" in sent).toBe(true);
    expect(sent.polarity).toBeNull();
  });

  it("sends ratings verbatim", async () => {
    const mock = mockFetch([{ body: {} }]);
    const client = new Client("", mock.fn);
    await client.rate(3, 11, 0.75);
    expect(mock.calls[0].url).toBe("/ratings");
    expect(JSON.parse(String(mock.calls[0].init?.body))).toEqual({
      user: 3,
      msg: 11,
      score: 0.75,
    });
  });

  it("posts proof text as a raw body with author in the query", async () => {
    const mock = mockFetch([{ body: { root_id: 4, message_ids: [3, 4] } }]);
    const client = new Client("", mock.fn);
    const result = await client.importProof(1, "hyp p\n");
    expect(result.root_id).toBe(4);
    expect(mock.calls[0].url).toBe("/proofs/import?author=1");
    expect(mock.calls[0].init?.body).toBe("hyp p\n");
  });

  it("unwraps wire errors into ApiError", async () => {
    const mock = mockFetch([
      {
        status: 404,
        body: {
          error: { code: "unknown_target", message: "no message 99", field: null },
        },
      },
    ]);
    const client = new Client("", mock.fn);
    let caught: unknown;
    try {
      await client.arguments(99, 1);
    } catch (err) {
      caught = err;
    }
    expect(caught).toBeInstanceOf(ApiError);
    const apiErr = caught as ApiError;
    expect(apiErr.status).toBe(404);
    expect(apiErr.code).toBe("unknown_target");
    expect(apiErr.message).toBe("no message 99");
    expect(apiErr.field).toBeNull();
  });

  it("requests verification with the oracle switch", async () => {
    const report = {
      root: 2,
      valid: true,
      conclusion: "p -> p",
      hypotheses: [],
      nodes: [],
      error: null,
      entailed: true,
    };
    const mock = mockFetch([{ body: report }]);
    const client = new Client("", mock.fn);
    const got = await client.verify(2, true);
    expect(mock.calls[0].url).toBe("/proofs/2/verify?oracle=1");
    expect(got.entailed).toBe(true);
  });

  it("strips a trailing slash from the base url", async () => {
    const mock = mockFetch([{ body: { users: [] } }]);
    const client = new Client("http://svc:8000/", mock.fn);
    await client.users();
    expect(mock.calls[0].url).toBe("http://svc:8000/users");
  });
});

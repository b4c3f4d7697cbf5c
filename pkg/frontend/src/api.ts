// Thin typed client over the service's HTTP endpoints. Every method maps
// one-to-one onto a route; no response field is reshaped or reordered so
// the views can rely on server ordering verbatim.

import type {
  ArgumentListing,
  ConsistencyRecord,
  ImportResult,
  MessageKind,
  MessageRecord,
  NewMessage,
  Polarity,
  TheoryRow,
  UserRow,
  VerifyReport,
  WireError,
} from "./types.js";

export class ApiError extends Error {
  code: string;
  field: string | null;
  status: number;

  constructor(status: number, wire: WireError) {
    super(wire.message);
    this.name = "ApiError";
    this.status = status;
    this.code = wire.code;
    this.field = wire.field;
  }
}

/** Serialize a polarity for query strings: 1, 0, or the word "null". */
export function polarityParam(polarity: Polarity): string {
  return polarity === null ? "null" : String(polarity);
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  private base: string;
  private fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    // trailing slash would double up when paths are appended
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      const wire = (body as { error: WireError }).error;
      throw new ApiError(response.status, wire);
    }
    return body as T;
  }

  private postJson<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async createUser(handle: string): Promise<number> {
    const result = await this.postJson<{ id: number }>("/users", { handle });
    return result.id;
  }

  async users(): Promise<UserRow[]> {
    const result = await this.request<{ users: UserRow[] }>("/users");
    return result.users;
  }

  async messages(kind?: MessageKind): Promise<MessageRecord[]> {
    const suffix = kind ? `?kind=${kind}` : "";
    const result = await this.request<{ messages: MessageRecord[] }>(
      `/messages${suffix}`,
    );
    return result.messages;
  }

  async message(id: number): Promise<MessageRecord> {
    return this.request<MessageRecord>(`/messages/${id}`);
  }

  async post(message: NewMessage): Promise<number> {
    const result = await this.postJson<{ id: number }>("/messages", message);
    return result.id;
  }

  async rate(user: number, msg: number, score: number): Promise<void> {
    await this.postJson<Record<string, never>>("/ratings", {
      user,
      msg,
      score,
    });
  }

  async setAuthoritative(
    admin: number,
    user: number,
    flag: boolean,
  ): Promise<void> {
    await this.postJson<Record<string, never>>("/admin/authoritative", {
      admin,
      user,
      flag,
    });
  }

  async arguments(
    target: number,
    polarity: Polarity,
    limit?: number,
  ): Promise<ArgumentListing> {
    let path = `/arguments?target=${target}&polarity=${polarityParam(polarity)}`;
    if (limit !== undefined) {
      path += `&limit=${limit}`;
    }
    return this.request<ArgumentListing>(path);
  }

  async verify(id: number, oracle = false): Promise<VerifyReport> {
    const suffix = oracle ? "?oracle=1" : "";
    return this.request<VerifyReport>(`/proofs/${id}/verify${suffix}`);
  }

  async importProof(author: number, text: string): Promise<ImportResult> {
    return this.request<ImportResult>(`/proofs/import?author=${author}`, {
      method: "POST",
      headers: { "Content-Type": "text/plain" },
      body: text,
    });
  }

  async createTheory(name: string, members: number[]): Promise<number> {
    const result = await this.postJson<{ id: number }>("/theories", {
      name,
      members,
    });
    return result.id;
  }

  async theories(): Promise<TheoryRow[]> {
    const result = await this.request<{ theories: TheoryRow[] }>("/theories");
    return result.theories;
  }

  async consistency(theoryId: number): Promise<ConsistencyRecord> {
    return this.request<ConsistencyRecord>(`/theories/${theoryId}/consistency`);
  }
}

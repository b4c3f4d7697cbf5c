// Wire types for the claimgraph HTTP API. Field names and shapes mirror
// the server's JSON exactly; nothing here is renamed or restructured.

/** Agreement stance toward a target message, as sent on the wire. */
export type Polarity = 1 | 0 | null;

export type MessageKind = "plain" | "prop" | "proof";

export type PropositionRole = "data" | "explanatory";

export interface UserRow {
  id: number;
  handle: string;
  authoritative: boolean;
}

export interface MessageRecord {
  id: number;
  author: number;
  body: string;
  kind: MessageKind;
  formula?: string;
  role?: PropositionRole;
  premises?: number[];
  truisms?: string[];
  conclusion?: string;
  target?: number;
  polarity?: Polarity;
  hotness?: number;
}

/** Payload for POST /messages. `polarity` must be present (possibly null)
 *  exactly when `target` is; the server rejects other combinations. */
export interface NewMessage {
  author: number;
  body: string;
  kind?: MessageKind;
  formula?: string;
  role?: PropositionRole;
  premises?: number[];
  truisms?: string[];
  conclusion?: string;
  target?: number;
  polarity?: Polarity;
}

export interface ArgumentEntry {
  id: number;
  hotness: number;
  authoritative: boolean;
}

export interface ArgumentListing {
  target: number;
  polarity: Polarity;
  entries: ArgumentEntry[];
}

export interface VerifyNode {
  id: number;
  kind: "prop" | "proof";
  valid: boolean;
  formula?: string;
  role?: PropositionRole;
  premises?: number[];
  truisms?: string[];
  conclusion?: string;
  reason?: string | null;
  detail?: string | null;
}

export interface VerifyReport {
  root: number;
  valid: boolean;
  conclusion: string | null;
  hypotheses: string[];
  nodes: VerifyNode[];
  error: { code: string; message: string; node: number | null } | null;
  entailed?: boolean | null;
}

export interface TheoryRow {
  id: number;
  name: string;
  members: number[];
}

export interface ConsistencyRecord {
  theory: number;
  status: "consistent_syntactically" | "inconsistent";
  witness: [string, string] | null;
}

export interface ImportResult {
  root_id: number;
  message_ids: number[];
}

export interface WireError {
  code: string;
  message: string;
  field: string | null;
}

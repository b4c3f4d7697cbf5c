import { describe, expect, it } from "vitest";

import {
  renderArgumentColumn,
  renderComposer,
  renderProofView,
  renderTargetList,
  renderUserPicker,
} from "../src/views.js";
import type { ArgumentListing, VerifyReport } from "../src/types.js";

// verify wire for the imported `p -> p` derivation, captured verbatim
// from GET /proofs/2/verify on a store seeded with the standard fixture
const FIXTURE_REPORT: VerifyReport = {
  root: 2,
  valid: true,
  conclusion: "p -> p",
  hypotheses: [],
  nodes: [
    {
      id: 1,
      kind: "proof",
      premises: [],
      truisms: [
        "p -> (p -> p) -> p",
        "(p -> (p -> p) -> p) -> (p -> p -> p) -> p -> p",
      ],
      conclusion: "(p -> p -> p) -> p -> p",
      valid: true,
      reason: null,
      detail: null,
    },
    {
      id: 2,
      kind: "proof",
      premises: [1],
      truisms: ["p -> p -> p"],
      conclusion: "p -> p",
      valid: true,
      reason: null,
      detail: null,
    },
  ],
  error: null,
};

function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

describe("renderArgumentColumn", () => {
  const listing: ArgumentListing = {
    target: 1,
    polarity: 1,
    // authoritative prefix makes overall hotness non-monotone on purpose:
    // any client-side re-sort would reorder this input
    entries: [
      { id: 6, hotness: 0.2, authoritative: true },
      { id: 3, hotness: 0.9, authoritative: false },
      { id: 5, hotness: 0.9, authoritative: false },
      { id: 2, hotness: 0.6, authoritative: false },
    ],
  };

  it("renders entries in server order, entry for entry", () => {
    const column = renderArgumentColumn(document, listing, "for");
    const items = Array.from(column.querySelectorAll(".arg-entry"));
    expect(items.length).toBe(listing.entries.length);
    items.forEach((item, i) => {
      const want = listing.entries[i];
      expect(item.getAttribute("data-id")).toBe(String(want.id));
      expect(item.getAttribute("data-hotness")).toBe(String(want.hotness));
      expect(item.getAttribute("data-authoritative")).toBe(
        String(want.authoritative),
      );
    });
  });

  it("badges authoritative entries", () => {
    const column = renderArgumentColumn(document, listing, "for");
    const items = Array.from(column.querySelectorAll(".arg-entry"));
    expect(items[0].querySelector(".badge-auth")).not.toBeNull();
    expect(items[1].querySelector(".badge-auth")).toBeNull();
    expect(items[0].classList.contains("authoritative")).toBe(true);
  });

  it("shows an empty state for no entries", () => {
    const column = renderArgumentColumn(
      document,
      { target: 1, polarity: 0, entries: [] },
      "against",
    );
    expect(column.querySelector(".empty-state")).not.toBeNull();
    expect(column.querySelectorAll(".arg-entry").length).toBe(0);
  });

  it("records the polarity it was rendered for", () => {
    const agree = renderArgumentColumn(document, listing, "for");
    const neutral = renderArgumentColumn(
      document,
      { target: 1, polarity: null, entries: [] },
      "no opinion",
    );
    expect(agree.getAttribute("data-polarity")).toBe("1");
    expect(neutral.getAttribute("data-polarity")).toBe("null");
  });
});

describe("renderComposer", () => {
  it("pins the hotness slider to [0,1]", () => {
    const composer = renderComposer(document);
    const slider = composer.querySelector<HTMLInputElement>(".composer-hotness");
    expect(slider).not.toBeNull();
    expect(slider!.type).toBe("range");
    expect(slider!.min).toBe("0");
    expect(slider!.max).toBe("1");
  });

  it("offers exactly the three wire polarity values", () => {
    const composer = renderComposer(document);
    const options = Array.from(
      composer.querySelectorAll<HTMLOptionElement>(".composer-polarity option"),
    );
    expect(options.map((o) => o.value)).toEqual(["1", "0", "null"]);
    expect(options.map((o) => o.textContent)).toEqual([
      "agree",
      "disagree",
      "no opinion",
    ]);
  });
});

describe("renderProofView", () => {
  it("renders the fixture as five elements, all valid", () => {
    const view = renderProofView(document, FIXTURE_REPORT);
    const nodes = Array.from(view.querySelectorAll(".proof-node"));
    expect(nodes.length).toBe(5);
    nodes.forEach((node) => {
      expect(node.classList.contains("valid")).toBe(true);
      expect(node.classList.contains("invalid")).toBe(false);
    });
    expect(view.querySelector(".proof-verdict")?.textContent).toBe("valid");
    expect(view.querySelector(".proof-hypotheses")?.textContent).toBe(
      "from no hypotheses",
    );
    const positions = nodes.map((n) => n.getAttribute("data-position"));
    expect(positions).toEqual(["1", "2", "3", "4", "5"]);
  });

  it("highlights exactly the third element when the first step breaks", () => {
    const corrupted = clone(FIXTURE_REPORT);
    corrupted.valid = false;
    corrupted.nodes[0].valid = false;
    corrupted.nodes[0].reason = "conclusion_mismatch";
    corrupted.nodes[0].conclusion = "!((p -> p -> p) -> p -> p)";
    const view = renderProofView(document, corrupted);
    const nodes = Array.from(view.querySelectorAll(".proof-node"));
    const flags = nodes.map((n) => n.classList.contains("invalid"));
    expect(flags).toEqual([false, false, true, false, false]);
    expect(nodes[2].querySelector(".proof-reason")?.textContent).toBe(
      "conclusion_mismatch",
    );
  });

  it("flags truism elements when the step failed on axiom matching", () => {
    const corrupted = clone(FIXTURE_REPORT);
    corrupted.valid = false;
    corrupted.nodes[1].valid = false;
    corrupted.nodes[1].reason = "truism_not_axiom";
    const view = renderProofView(document, corrupted);
    const nodes = Array.from(view.querySelectorAll(".proof-node"));
    const flags = nodes.map((n) => n.classList.contains("invalid"));
    // the second step's truism (position 4) and the step itself (position 5)
    expect(flags).toEqual([false, false, false, true, true]);
  });

  it("renders structural errors as a banner instead of nodes", () => {
    const report: VerifyReport = {
      root: 9,
      valid: false,
      conclusion: null,
      hypotheses: [],
      nodes: [],
      error: { code: "cycle_detected", message: "node 9 reaches itself", node: 9 },
    };
    const view = renderProofView(document, report);
    expect(view.querySelectorAll(".proof-node").length).toBe(0);
    const banner = view.querySelector(".proof-error");
    expect(banner?.textContent).toContain("cycle_detected");
    expect(banner?.textContent).toContain("node 9");
  });

  it("disables itself for messages without a proof", () => {
    const view = renderProofView(document, null);
    expect(view.classList.contains("disabled")).toBe(true);
    expect(view.querySelector(".proof-disabled")).not.toBeNull();
  });
});

describe("pickers", () => {
  it("marks the session user selected and labels authoritative voices", () => {
    const picker = renderUserPicker(
      document,
      [
        { id: 1, handle: "ada", authoritative: true },
        { id: 2, handle: "bo", authoritative: false },
      ],
      2,
    );
    const options = Array.from(picker.querySelectorAll("option"));
    expect(options[0].textContent).toBe("ada (authoritative)");
    expect(options[1].selected).toBe(true);
  });

  it("highlights the chosen target", () => {
    const list = renderTargetList(
      document,
      [
        { id: 1, author: 1, body: "claim", kind: "prop", formula: "econ" },
        { id: 2, author: 1, body: "chat", kind: "plain" },
      ],
      2,
    );
    const items = Array.from(list.querySelectorAll(".target-item"));
    expect(items[0].classList.contains("selected")).toBe(false);
    expect(items[1].classList.contains("selected")).toBe(true);
    expect(items[0].textContent).toContain("econ");
  });
});

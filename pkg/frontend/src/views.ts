// DOM construction. Every list renders its input array in the order
// received: the server's ranking is the ranking, and re-sorting here
// would let the client drift from the query semantics.

import type {
  ArgumentEntry,
  ArgumentListing,
  MessageRecord,
  UserRow,
  VerifyNode,
  VerifyReport,
} from "./types.js";
import { polarityLabel } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function entryItem(doc: Document, entry: ArgumentEntry): HTMLLIElement {
  const item = el(doc, "li", "arg-entry");
  item.dataset.id = String(entry.id);
  item.dataset.hotness = String(entry.hotness);
  item.dataset.authoritative = String(entry.authoritative);
  item.appendChild(el(doc, "span", "arg-id", `#${entry.id}`));
  item.appendChild(el(doc, "span", "arg-hotness", entry.hotness.toFixed(2)));
  if (entry.authoritative) {
    item.classList.add("authoritative");
    item.appendChild(el(doc, "span", "badge-auth", "authoritative"));
  }
  return item;
}

/** One for/against/no-opinion column, entries in server order. */
export function renderArgumentColumn(
  doc: Document,
  listing: ArgumentListing,
  title: string,
): HTMLElement {
  const column = el(doc, "section", "args-column");
  column.dataset.polarity = String(listing.polarity);
  column.dataset.target = String(listing.target);
  column.appendChild(el(doc, "h2", "args-title", title));
  if (listing.entries.length === 0) {
    column.appendChild(el(doc, "p", "empty-state", "no arguments yet"));
    return column;
  }
  const list = el(doc, "ol", "args-list");
  for (const entry of listing.entries) {
    list.appendChild(entryItem(doc, entry));
  }
  column.appendChild(list);
  return column;
}

/** The side-by-side argument view for one target message. */
export function renderArgumentView(
  doc: Document,
  forListing: ArgumentListing,
  againstListing: ArgumentListing,
): HTMLElement {
  const view = el(doc, "div", "argument-view");
  view.appendChild(renderArgumentColumn(doc, forListing, "for"));
  view.appendChild(renderArgumentColumn(doc, againstListing, "against"));
  return view;
}

/** Comment composer: body, stance selector, and a hotness slider whose
 *  range is pinned to [0,1] so out-of-range scores cannot be emitted. */
export function renderComposer(doc: Document): HTMLElement {
  const form = el(doc, "form", "composer");
  const body = el(doc, "textarea", "composer-body");
  body.name = "body";
  form.appendChild(body);

  const stance = el(doc, "select", "composer-polarity");
  stance.name = "polarity";
  for (const wire of ["1", "0", "null"]) {
    const option = el(doc, "option");
    option.value = wire;
    option.textContent = polarityLabel(wire === "null" ? null : (Number(wire) as 0 | 1));
    stance.appendChild(option);
  }
  form.appendChild(stance);

  const slider = el(doc, "input", "composer-hotness");
  slider.type = "range";
  slider.min = "0";
  slider.max = "1";
  slider.step = "0.01";
  slider.value = "0.5";
  form.appendChild(slider);

  const submit = el(doc, "button", "composer-submit", "post");
  submit.type = "submit";
  form.appendChild(submit);
  return form;
}

export function renderUserPicker(
  doc: Document,
  users: UserRow[],
  selected: number | null,
): HTMLSelectElement {
  const picker = el(doc, "select", "user-picker");
  for (const user of users) {
    const option = el(doc, "option");
    option.value = String(user.id);
    option.textContent = user.authoritative
      ? `${user.handle} (authoritative)`
      : user.handle;
    if (user.id === selected) {
      option.selected = true;
    }
    picker.appendChild(option);
  }
  return picker;
}

export function renderBanner(doc: Document, message: string): HTMLElement {
  return el(doc, "div", "banner-error", message);
}

function truismElement(
  doc: Document,
  owner: VerifyNode,
  formula: string,
): HTMLElement {
  // per-truism verdicts are not on the wire; a truism only shows invalid
  // when its owning step failed specifically on axiom matching
  const bad = !owner.valid && owner.reason === "truism_not_axiom";
  const node = el(doc, "div", bad ? "proof-node invalid" : "proof-node valid");
  node.dataset.kind = "truism";
  node.dataset.of = String(owner.id);
  node.appendChild(el(doc, "code", "proof-formula", formula));
  node.appendChild(el(doc, "span", "proof-tag", "truism"));
  return node;
}

function graphNodeElement(doc: Document, wire: VerifyNode): HTMLElement {
  const css = wire.valid ? "proof-node valid" : "proof-node invalid";
  const node = el(doc, "div", css);
  node.dataset.kind = wire.kind;
  node.dataset.nodeId = String(wire.id);
  const formula = wire.kind === "prop" ? wire.formula : wire.conclusion;
  node.appendChild(el(doc, "code", "proof-formula", formula ?? ""));
  if (wire.kind === "prop") {
    node.appendChild(el(doc, "span", "proof-tag", wire.role ?? "prop"));
  } else {
    const refs = (wire.premises ?? []).map((p) => `#${p}`).join(", ");
    node.appendChild(
      el(doc, "span", "proof-tag", refs ? `mp over ${refs}` : "mp"),
    );
  }
  if (!wire.valid && wire.reason) {
    node.appendChild(el(doc, "span", "proof-reason", wire.reason));
  }
  return node;
}

/** Derivation inspector. Renders one element per proposition node, per
 *  inline truism, and per proof step, numbered in display order, with
 *  verdict highlighting. Pass null for messages without a proof payload;
 *  the view renders disabled. */
export function renderProofView(
  doc: Document,
  report: VerifyReport | null,
): HTMLElement {
  const view = el(doc, "div", "proof-view");
  if (report === null) {
    view.classList.add("disabled");
    view.appendChild(
      el(doc, "p", "proof-disabled", "this message carries no derivation"),
    );
    return view;
  }

  const verdict = report.valid ? "valid" : "invalid";
  view.appendChild(el(doc, "div", `proof-verdict ${verdict}`, verdict));

  if (report.error) {
    const where =
      report.error.node === null ? "" : ` at node ${report.error.node}`;
    view.appendChild(
      el(
        doc,
        "div",
        "proof-error",
        `${report.error.code}${where}: ${report.error.message}`,
      ),
    );
    return view;
  }

  const list = el(doc, "div", "proof-nodes");
  let position = 0;
  for (const wire of report.nodes) {
    const elements: HTMLElement[] = [];
    if (wire.kind === "proof") {
      for (const formula of wire.truisms ?? []) {
        elements.push(truismElement(doc, wire, formula));
      }
    }
    elements.push(graphNodeElement(doc, wire));
    for (const element of elements) {
      position += 1;
      element.dataset.position = String(position);
      list.appendChild(element);
    }
  }
  view.appendChild(list);

  const summary = el(doc, "div", "proof-summary");
  summary.appendChild(
    el(doc, "div", "proof-conclusion", `concludes ${report.conclusion ?? "?"}`),
  );
  const hyps = report.hypotheses.length
    ? `from hypotheses ${report.hypotheses.join(", ")}`
    : "from no hypotheses";
  summary.appendChild(el(doc, "div", "proof-hypotheses", hyps));
  view.appendChild(summary);
  return view;
}

/** Sidebar list of proposition messages to pick a target from. */
export function renderTargetList(
  doc: Document,
  messages: MessageRecord[],
  selected: number | null,
): HTMLElement {
  const list = el(doc, "ul", "target-list");
  for (const message of messages) {
    const item = el(doc, "li", "target-item");
    item.dataset.id = String(message.id);
    if (message.id === selected) {
      item.classList.add("selected");
    }
    const label = message.formula ?? message.body;
    item.appendChild(el(doc, "span", "target-label", `#${message.id} ${label}`));
    list.appendChild(item);
  }
  return list;
}

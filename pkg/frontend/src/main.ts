// Application shell: fetch-then-render cycles against the service. All
// ordering decisions happen server-side; this file only moves data
// between endpoints and the view functions.

import { ApiError, Client } from "./api.js";
import { clampHotness, initialState, ViewState } from "./state.js";
import {
  renderArgumentView,
  renderBanner,
  renderComposer,
  renderProofView,
  renderTargetList,
  renderUserPicker,
} from "./views.js";
import type { Polarity } from "./types.js";

const client = new Client("");
const state: ViewState = initialState();

function slot(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing layout element #${id}`);
  }
  return node;
}

function showError(err: unknown): void {
  const text =
    err instanceof ApiError
      ? `${err.code}: ${err.message}`
      : "cannot reach the service";
  const banner = slot("banner");
  banner.replaceChildren(renderBanner(document, text));
}

function clearError(): void {
  slot("banner").replaceChildren();
}

function wirePolarity(raw: string): Polarity {
  if (raw === "null") {
    return null;
  }
  return Number(raw) === 1 ? 1 : 0;
}

async function refreshArguments(): Promise<void> {
  if (state.target === null) {
    return;
  }
  const [forListing, againstListing] = await Promise.all([
    client.arguments(state.target, 1),
    client.arguments(state.target, 0),
  ]);
  slot("arguments").replaceChildren(
    renderArgumentView(document, forListing, againstListing),
  );
}

async function refreshProof(): Promise<void> {
  const pane = slot("proof");
  if (state.target === null) {
    pane.replaceChildren(renderProofView(document, null));
    return;
  }
  const record = await client.message(state.target);
  if (record.kind !== "proof") {
    pane.replaceChildren(renderProofView(document, null));
    return;
  }
  const report = await client.verify(state.target);
  pane.replaceChildren(renderProofView(document, report));
}

async function selectTarget(id: number): Promise<void> {
  state.target = id;
  await refreshArguments();
  await refreshProof();
  await refreshTargets();
}

async function refreshTargets(): Promise<void> {
  const messages = await client.messages();
  const list = renderTargetList(document, messages, state.target);
  list.querySelectorAll<HTMLElement>(".target-item").forEach((item) => {
    item.addEventListener("click", () => {
      const id = Number(item.dataset.id);
      selectTarget(id).then(clearError, showError);
    });
  });
  slot("targets").replaceChildren(list);
}

function wireComposer(): void {
  const composer = renderComposer(document);
  composer.addEventListener("submit", (event) => {
    event.preventDefault();
    submitComment(composer).then(clearError, showError);
  });
  slot("composer").replaceChildren(composer);
}

async function submitComment(composer: HTMLElement): Promise<void> {
  if (state.sessionUser === null || state.target === null) {
    return;
  }
  const body = composer.querySelector<HTMLTextAreaElement>(".composer-body");
  const stance = composer.querySelector<HTMLSelectElement>(
    ".composer-polarity",
  );
  const slider = composer.querySelector<HTMLInputElement>(".composer-hotness");
  if (!body || !stance || !slider) {
    return;
  }
  const commentId = await client.post({
    author: state.sessionUser,
    body: body.value,
    target: state.target,
    polarity: wirePolarity(stance.value),
  });
  const score = clampHotness(Number(slider.value));
  await client.rate(state.sessionUser, commentId, score);
  body.value = "";
  await refreshArguments();
}

async function boot(): Promise<void> {
  let users = await client.users();
  if (users.length === 0) {
    // empty store: create a first participant so the session has an author
    await client.createUser("guest");
    users = await client.users();
  }
  state.sessionUser = users[0].id;

  const picker = renderUserPicker(document, users, state.sessionUser);
  picker.addEventListener("change", () => {
    state.sessionUser = Number(picker.value);
  });
  slot("session").replaceChildren(picker);

  wireComposer();
  await refreshTargets();
}

boot().then(clearError, showError);

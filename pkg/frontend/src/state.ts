// Client-side view state. The server owns all ordering and aggregation;
// this module only tracks what the user is looking at and composing.

import type { Polarity } from "./types.js";

export interface Composer {
  body: string;
  polarity: Polarity;
  formula: string | null;
  hotness: number;
}

export interface ViewState {
  sessionUser: number | null;
  target: number | null;
  polarityTab: Polarity;
  composer: Composer;
}

export function initialState(): ViewState {
  return {
    sessionUser: null,
    target: null,
    polarityTab: 1,
    composer: { body: "", polarity: 1, formula: null, hotness: 0.5 },
  };
}

/** Constrain a slider/input value to the legal rating range. Non-numeric
 *  input collapses to 0 rather than leaking NaN to the server. */
export function clampHotness(value: number): number {
  if (Number.isNaN(value)) {
    return 0;
  }
  return Math.min(1, Math.max(0, value));
}

export const POLARITY_CHOICES: ReadonlyArray<{
  value: Polarity;
  label: string;
}> = [
  { value: 1, label: "agree" },
  { value: 0, label: "disagree" },
  { value: null, label: "no opinion" },
];

export function polarityLabel(polarity: Polarity): string {
  const found = POLARITY_CHOICES.find((c) => c.value === polarity);
  return found ? found.label : String(polarity);
}

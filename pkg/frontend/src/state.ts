/**
 * Wizard state store and request sequencing.
 *
 * Every state transition follows an acknowledged server round trip; a
 * response is applied only while it is still the newest request in
 * flight, so a slow answer can never clobber a newer local action.
 */

import type { ConsistencyInfo, ContextStatus, NextPair, RevisionHint } from "./api.js";

export interface WizardState {
  sessionId: string | null;
  model: string | null;
  contexts: ContextStatus[];
  current: NextPair | null;
  /** latest consistency report per completed context */
  gauge: { context: string; consistency: ConsistencyInfo } | null;
  hint: { context: string; hint: RevisionHint } | null;
  /** inline submission error, kept next to the untouched slider value */
  error: string | null;
  complete: boolean;
  phase: "setup" | "question" | "results";
}

export function initialState(): WizardState {
  return {
    sessionId: null,
    model: null,
    contexts: [],
    current: null,
    gauge: null,
    hint: null,
    error: null,
    complete: false,
    phase: "setup",
  };
}

type Listener = (state: WizardState) => void;

export class Store {
  private state: WizardState = initialState();
  private listeners: Listener[] = [];

  get(): WizardState {
    return this.state;
  }

  set(patch: Partial<WizardState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

/** Monotonic tickets; stale responses (older than the last applied) drop. */
export class RequestSequencer {
  private issued = 0;
  private applied = 0;

  issue(): number {
    return ++this.issued;
  }

  /** Returns true when the ticket may be applied (and marks it applied). */
  accept(ticket: number): boolean {
    if (ticket <= this.applied) return false;
    this.applied = ticket;
    return true;
  }
}

/** The wizard never shows results while any context is incomplete. */
export function resultsAllowed(state: WizardState): boolean {
  return state.complete && state.contexts.length > 0 && state.contexts.every((c) => c.complete);
}

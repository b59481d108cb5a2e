/**
 * One-question-at-a-time elicitation wizard: a discrete 17-step slider,
 * per-context progress bars, a consistency gauge after each completed
 * context, and a revision shortcut to the server-identified worst pair.
 */

import { ApiClient, ApiError, JudgmentAck, NextPair } from "./api.js";
import { EQUAL_INDEX, SCALE, indexOfValue, readingFor, stepAt } from "./scale.js";
import { RequestSequencer, Store } from "./state.js";

/** Gauge banding: green below 0.05, amber to 0.1, red above. */
export function gaugeBand(cr: number): "green" | "amber" | "red" {
  if (cr < 0.05) return "green";
  if (cr <= 0.1) return "amber";
  return "red";
}

export class Wizard {
  private sequencer = new RequestSequencer();
  private sliderIndex = EQUAL_INDEX;
  private labels = new Map<string, string>();
  private controls = new Map<string, string>();

  constructor(
    private root: HTMLElement,
    private client: ApiClient,
    private store: Store,
    private onComplete: () => void,
  ) {
    this.store.subscribe(() => this.render());
  }

  async start(model: string): Promise<void> {
    const view = await this.client.createSession(model);
    this.store.set({
      sessionId: view.session_id,
      model: view.model,
      contexts: view.contexts,
      complete: view.complete,
      phase: "question",
    });
    await this.advance();
  }

  async refresh(): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId) return;
    const view = await this.client.session(state.sessionId);
    this.store.set({ contexts: view.contexts, complete: view.complete });
    await this.advance();
  }

  private remember(pair: NextPair): void {
    this.labels.set(pair.row, pair.row_label);
    this.labels.set(pair.col, pair.col_label);
    if (pair.context.control_label) {
      this.controls.set(pair.context.id, pair.context.control_label);
    }
  }

  private async advance(): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId) return;
    const ticket = this.sequencer.issue();
    const pair = await this.client.nextPair(state.sessionId);
    if (!this.sequencer.accept(ticket)) return;
    if (pair === null) {
      this.store.set({ current: null, complete: true });
      this.onComplete();
      return;
    }
    this.remember(pair);
    this.sliderIndex = EQUAL_INDEX;
    this.store.set({ current: pair, error: null });
  }

  setSlider(index: number): void {
    this.sliderIndex = index;
    this.render();
  }

  get slider(): number {
    return this.sliderIndex;
  }

  /** Submit the current pair with the slider's scale value. */
  async submit(): Promise<JudgmentAck | null> {
    const state = this.store.get();
    if (!state.sessionId || !state.current) return null;
    const pair = state.current;
    const value = stepAt(this.sliderIndex).value;
    const ticket = this.sequencer.issue();

    // optimistic bump, reconciled (or reverted) below
    const optimistic = state.contexts.map((c) =>
      c.id === pair.context.id && c.answered < c.pairs
        ? { ...c, answered: c.answered + 1, progress: (c.answered + 1) / c.pairs }
        : c,
    );
    this.store.set({ contexts: optimistic, error: null });

    let ack: JudgmentAck;
    try {
      ack = await this.client.putJudgment(state.sessionId, {
        context: pair.context.id,
        row: pair.row,
        col: pair.col,
        value,
      });
    } catch (error) {
      if (!this.sequencer.accept(ticket)) return null;
      // surface inline without losing the entered value
      const message =
        error instanceof ApiError ? `${error.status}: ${error.message}` : String(error);
      this.store.set({ contexts: state.contexts, error: message });
      return null;
    }
    if (!this.sequencer.accept(ticket)) return null;

    const reconciled = this.store.get().contexts.map((c) =>
      c.id === ack.context
        ? {
            ...c,
            answered: ack.answered,
            progress: ack.progress,
            complete: ack.context_complete,
            consistency: ack.consistency ?? c.consistency,
          }
        : c,
    );
    const patch: Parameters<Store["set"]>[0] = { contexts: reconciled };
    if (ack.consistency) {
      patch.gauge = { context: ack.context, consistency: ack.consistency };
      patch.hint = ack.most_inconsistent
        ? { context: ack.context, hint: ack.most_inconsistent }
        : null;
    }
    this.store.set(patch);
    await this.advance();
    return ack;
  }

  /** Jump back to the server-flagged worst judgment of a completed context. */
  reviseHint(): void {
    const state = this.store.get();
    if (!state.hint) return;
    const { context, hint } = state.hint;
    const status = state.contexts.find((c) => c.id === context);
    const control = this.controls.get(context) ?? context;
    const rowLabel = this.labels.get(hint.row) ?? hint.row;
    const colLabel = this.labels.get(hint.col) ?? hint.col;
    const pair: NextPair = {
      context: {
        id: context,
        kind: "revision",
        control,
        control_label: control,
        answered: status?.answered ?? 0,
        pairs: status?.pairs ?? 0,
      },
      row: hint.row,
      col: hint.col,
      row_label: rowLabel,
      col_label: colLabel,
      question: `How important is ${rowLabel} relative to ${colLabel} when ${control} is controlled?`,
    };
    try {
      this.sliderIndex = indexOfValue(hint.current);
    } catch {
      this.sliderIndex = EQUAL_INDEX;
    }
    this.store.set({ current: pair, error: null, complete: false });
  }

  render(): void {
    const state = this.store.get();
    this.root.innerHTML = "";
    if (state.phase !== "question") return;

    const card = document.createElement("section");
    card.className = "question-card";

    if (state.current) {
      const question = document.createElement("h2");
      question.dataset.testid = "question";
      question.textContent = state.current.question;
      card.appendChild(question);

      const position = document.createElement("p");
      position.className = "context-position";
      position.textContent =
        `${state.current.context.id} - ${state.current.context.answered}` +
        ` of ${state.current.context.pairs} pairs answered`;
      card.appendChild(position);

      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = String(SCALE.length - 1);
      slider.step = "1";
      slider.value = String(this.sliderIndex);
      slider.dataset.testid = "slider";
      slider.addEventListener("input", () => {
        this.sliderIndex = Number(slider.value);
        anchor.textContent = this.anchorText(state.current!);
      });
      card.appendChild(slider);

      const anchor = document.createElement("p");
      anchor.dataset.testid = "anchor";
      anchor.className = "anchor";
      anchor.textContent = this.anchorText(state.current);
      card.appendChild(anchor);

      const submit = document.createElement("button");
      submit.dataset.testid = "submit";
      submit.textContent = "Record judgment";
      submit.addEventListener("click", () => void this.submit());
      card.appendChild(submit);
    } else if (state.complete) {
      const done = document.createElement("p");
      done.dataset.testid = "all-answered";
      done.textContent = "Every pair is answered.";
      card.appendChild(done);
    }

    if (state.error) {
      const error = document.createElement("p");
      error.className = "inline-error";
      error.dataset.testid = "error";
      error.textContent = state.error;
      card.appendChild(error);
    }

    this.root.appendChild(card);
    this.root.appendChild(this.renderGauge());
    this.root.appendChild(this.renderProgress());
  }

  private anchorText(pair: NextPair): string {
    const step = stepAt(this.sliderIndex);
    return `${step.value} - ${step.anchor}: ${readingFor(this.sliderIndex, pair.row_label, pair.col_label)}`;
  }

  private renderGauge(): HTMLElement {
    const state = this.store.get();
    const holder = document.createElement("aside");
    holder.className = "gauge-holder";
    if (!state.gauge) return holder;

    const cr = state.gauge.consistency.cr;
    const badge = document.createElement("div");
    badge.dataset.testid = "cr-badge";
    badge.className = `gauge gauge-${gaugeBand(cr)}`;
    badge.dataset.cr = String(cr);
    badge.textContent = `CR ${cr.toFixed(3)} - ${state.gauge.context}`;
    holder.appendChild(badge);

    if (state.hint) {
      const hint = document.createElement("div");
      hint.dataset.testid = "revision-hint";
      hint.className = "revision-hint";
      const rowLabel = this.labels.get(state.hint.hint.row) ?? state.hint.hint.row;
      const colLabel = this.labels.get(state.hint.hint.col) ?? state.hint.hint.col;
      hint.dataset.row = state.hint.hint.row;
      hint.dataset.col = state.hint.hint.col;
      hint.textContent =
        `Inconsistent: reconsider ${rowLabel} vs ${colLabel} (currently ${state.hint.hint.current})`;
      const revise = document.createElement("button");
      revise.dataset.testid = "revise";
      revise.textContent = "Revise this judgment";
      revise.addEventListener("click", () => this.reviseHint());
      hint.appendChild(revise);
      holder.appendChild(hint);
    }
    return holder;
  }

  private renderProgress(): HTMLElement {
    const state = this.store.get();
    const list = document.createElement("ol");
    list.className = "progress-list";
    for (const context of state.contexts) {
      if (context.pairs === 0) continue;
      const item = document.createElement("li");
      item.dataset.testid = `progress-${context.id}`;
      const bar = document.createElement("div");
      bar.className = "bar";
      const fill = document.createElement("div");
      fill.className = "fill";
      fill.style.width = `${Math.round(context.progress * 100)}%`;
      bar.appendChild(fill);
      const label = document.createElement("span");
      label.textContent = `${context.id} ${context.answered}/${context.pairs}`;
      item.appendChild(label);
      item.appendChild(bar);
      if (context.complete && context.consistency) {
        const mark = document.createElement("span");
        mark.className = `dot dot-${gaugeBand(context.consistency.cr)}`;
        mark.title = `CR ${context.consistency.cr.toFixed(3)}`;
        item.appendChild(mark);
      }
      list.appendChild(item);
    }
    return list;
  }
}

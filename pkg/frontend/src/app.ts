/**
 * Application shell: model picker, wizard, then results once every
 * context is complete. Configuration is limited to the server base URL
 * (`?api=` query parameter or the boot option).
 */

import { ApiClient, WeightsSource } from "./api.js";
import { ResultsView } from "./results.js";
import { Store, resultsAllowed } from "./state.js";
import { Wizard } from "./wizard.js";

export interface BootOptions {
  api?: string;
  model?: string;
}

export interface App {
  client: ApiClient;
  store: Store;
  wizard: Wizard;
  results: ResultsView;
  showResults: (source?: WeightsSource) => Promise<void>;
  start: () => Promise<void>;
}

export function createApp(root: HTMLElement, options: BootOptions = {}): App {
  const params = typeof location !== "undefined" ? new URLSearchParams(location.search) : null;
  const base = options.api ?? params?.get("api") ?? "http://127.0.0.1:8642";
  const client = new ApiClient(base);
  const store = new Store();

  root.innerHTML = "";
  const wizardRoot = document.createElement("div");
  wizardRoot.id = "wizard";
  const resultsRoot = document.createElement("div");
  resultsRoot.id = "results";
  root.appendChild(wizardRoot);
  root.appendChild(resultsRoot);

  let source: WeightsSource = "computed";

  const results = new ResultsView(resultsRoot, {
    onSourceChange: (next) => {
      source = next;
      void showResults(next);
    },
  });

  async function showResults(next?: WeightsSource): Promise<void> {
    const state = store.get();
    if (!state.sessionId || !resultsAllowed(state)) return;
    if (next) source = next;
    const payload = await client.results(state.sessionId, source);
    store.set({ phase: "results" });
    wizardRoot.innerHTML = "";
    results.show(payload);
  }

  const wizard = new Wizard(wizardRoot, client, store, () => {
    void showResults();
  });

  async function start(): Promise<void> {
    let model = options.model;
    if (!model) {
      const models = await client.models();
      if (models.length === 0) throw new Error("server offers no models");
      model = models[0].name;
    }
    await wizard.start(model);
  }

  return { client, store, wizard, results, showResults, start };
}

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { EQUAL_INDEX, indexOfValue } from "../src/scale.js";
import { Store } from "../src/state.js";
import { Wizard, gaugeBand } from "../src/wizard.js";

interface FakeRoute {
  method: string;
  path: RegExp;
  handle: (body: any) => { status: number; json?: any };
}

function fakeServer(routes: FakeRoute[]) {
  const calls: { method: string; path: string; body: any }[] = [];
  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    calls.push({ method, path, body });
    for (const route of routes) {
      if (route.method === method && route.path.test(path)) {
        const out = route.handle(body);
        if (out.status === 204) return new Response(null, { status: 204 });
        return new Response(JSON.stringify(out.json ?? {}), {
          status: out.status,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ detail: `no route ${method} ${path}` }), { status: 500 });
  });
  return calls;
}

const CONTEXT = {
  id: "criteria-vs-goal",
  kind: "cluster_weights",
  control: "goal",
  control_label: "Objective",
  n: 3,
  pairs: 3,
  answered: 0,
  progress: 0,
  complete: false,
};

function sessionView(answered: number) {
  return {
    session_id: "s1",
    model: "demo",
    created: "t",
    contexts: [{ ...CONTEXT, answered, progress: answered / 3 }],
    complete: false,
    judgment_count: answered,
  };
}

function pair(row: string, col: string, answered: number) {
  return {
    context: { ...CONTEXT, answered },
    row,
    col,
    row_label: row.toUpperCase(),
    col_label: col.toUpperCase(),
    question: `How important is ${row.toUpperCase()} relative to ${col.toUpperCase()} when Objective is controlled?`,
  };
}

describe("wizard", () => {
  let root: HTMLElement;
  let store: Store;

  beforeEach(() => {
    document.body.innerHTML = '<div id="w"></div>';
    root = document.getElementById("w")!;
    store = new Store();
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  function judgmentRoutes(extra: Partial<FakeRoute> = {}) {
    let answered = 0;
    const pairs = [pair("a", "b", 0), pair("a", "c", 1), pair("b", "c", 2)];
    return fakeServer([
      {
        method: "POST",
        path: /^\/sessions$/,
        handle: () => ({ status: 201, json: sessionView(0) }),
      },
      {
        method: "GET",
        path: /\/next$/,
        handle: () =>
          answered >= 3 ? { status: 204 } : { status: 200, json: pairs[answered] },
      },
      {
        method: "PUT",
        path: /\/judgments$/,
        handle:
          (extra.handle as FakeRoute["handle"]) ??
          (() => {
            answered += 1;
            const done = answered >= 3;
            return {
              status: 200,
              json: {
                context: CONTEXT.id,
                answered,
                pairs: 3,
                progress: answered / 3,
                context_complete: done,
                ...(done
                  ? {
                      consistency: {
                        lambda_max: 3.1,
                        ci: 0.05,
                        cr: 0.086,
                        acceptable: true,
                      },
                    }
                  : {}),
              },
            };
          }),
      },
    ]);
  }

  it("renders the server question and verbal anchor", async () => {
    judgmentRoutes();
    const wizard = new Wizard(root, new ApiClient("http://x"), store, () => {});
    await wizard.start("demo");
    const question = root.querySelector('[data-testid="question"]')!;
    expect(question.textContent).toContain("How important is A relative to B");
    expect(root.querySelector('[data-testid="anchor"]')!.textContent).toContain("Equal");
  });

  it("submits the slider value and walks to the next pair", async () => {
    const calls = judgmentRoutes();
    const wizard = new Wizard(root, new ApiClient("http://x"), store, () => {});
    await wizard.start("demo");
    wizard.setSlider(indexOfValue("3"));
    await wizard.submit();
    const put = calls.find((c) => c.method === "PUT")!;
    expect(put.body).toEqual({ context: "criteria-vs-goal", row: "a", col: "b", value: "3" });
    expect(store.get().current!.row).toBe("a");
    expect(store.get().current!.col).toBe("c");
    // slider resets to equality for the fresh pair
    expect(wizard.slider).toBe(EQUAL_INDEX);
  });

  it("shows the consistency badge when the context completes", async () => {
    judgmentRoutes();
    let completed = false;
    const wizard = new Wizard(root, new ApiClient("http://x"), store, () => {
      completed = true;
    });
    await wizard.start("demo");
    for (let i = 0; i < 3; i++) await wizard.submit();
    const badge = root.querySelector('[data-testid="cr-badge"]')!;
    expect(badge.textContent).toContain("CR 0.086");
    expect(badge.className).toContain("gauge-amber");
    expect(completed).toBe(true);
  });

  it("surfaces a rejection inline and keeps the slider value", async () => {
    judgmentRoutes({
      handle: () => ({ status: 422, json: { detail: "judgment value 11 is off the scale" } }),
    });
    const wizard = new Wizard(root, new ApiClient("http://x"), store, () => {});
    await wizard.start("demo");
    wizard.setSlider(indexOfValue("7"));
    await wizard.submit();
    const error = root.querySelector('[data-testid="error"]')!;
    expect(error.textContent).toContain("422");
    expect(error.textContent).toContain("off the scale");
    expect(wizard.slider).toBe(indexOfValue("7"));
    // optimistic progress bump was reverted
    expect(store.get().contexts[0].answered).toBe(0);
  });

  it("shows the revision hint for an inconsistent context and jumps to it", async () => {
    judgmentRoutes({
      handle: () => ({
        status: 200,
        json: {
          context: CONTEXT.id,
          answered: 3,
          pairs: 3,
          progress: 1,
          context_complete: true,
          consistency: { lambda_max: 3.6, ci: 0.3, cr: 0.25, acceptable: false },
          most_inconsistent: { row: "a", col: "c", deviation: 1.8, current: "9" },
        },
      }),
    });
    const wizard = new Wizard(root, new ApiClient("http://x"), store, () => {});
    await wizard.start("demo");
    await wizard.submit();
    const badge = root.querySelector('[data-testid="cr-badge"]')!;
    expect(badge.className).toContain("gauge-red");
    const hint = root.querySelector<HTMLElement>('[data-testid="revision-hint"]')!;
    expect(hint.dataset.row).toBe("a");
    expect(hint.dataset.col).toBe("c");

    (root.querySelector('[data-testid="revise"]') as HTMLButtonElement).click();
    const current = store.get().current!;
    expect([current.row, current.col]).toEqual(["a", "c"]);
    expect(wizard.slider).toBe(indexOfValue("9"));
  });

  it("bands the gauge at 0.05 and 0.1", () => {
    expect(gaugeBand(0.012)).toBe("green");
    expect(gaugeBand(0.049999)).toBe("green");
    expect(gaugeBand(0.05)).toBe("amber");
    expect(gaugeBand(0.1)).toBe("amber");
    expect(gaugeBand(0.100001)).toBe("red");
  });
});

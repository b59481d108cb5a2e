/**
 * Results view: alternative-weight bars, exponent readout, a sortable
 * dual-ranking table, and rank-shift arrows. Sorting is purely
 * client-side presentation; every number comes from the server payload.
 */

import type { ResultsPayload, RpnRow, WeightsSource } from "./api.js";

export interface ResultsOptions {
  onSourceChange: (source: WeightsSource) => void;
}

type SortKey = keyof Pick<
  RpnRow,
  "cause" | "rpn_classic" | "rpn_weighted" | "rank_classic" | "rank_weighted"
>;

interface SortState {
  key: SortKey;
  descending: boolean;
}

const COLUMNS: { key: SortKey | null; label: string }[] = [
  { key: "cause", label: "failure cause" },
  { key: null, label: "S" },
  { key: null, label: "O" },
  { key: null, label: "D" },
  { key: "rpn_classic", label: "RPN" },
  { key: "rpn_weighted", label: "weighted RPN" },
  { key: "rank_classic", label: "rank" },
  { key: "rank_weighted", label: "weighted rank" },
  { key: null, label: "shift" },
];

export class ResultsView {
  private sort: SortState = { key: "rank_weighted", descending: false };
  private payload: ResultsPayload | null = null;

  constructor(private root: HTMLElement, private options: ResultsOptions) {}

  show(payload: ResultsPayload): void {
    this.payload = payload;
    this.render();
  }

  private sortedRows(): RpnRow[] {
    const rows = [...(this.payload?.rpn_table ?? [])];
    const { key, descending } = this.sort;
    rows.sort((a, b) => {
      const va = a[key];
      const vb = b[key];
      const order = typeof va === "string"
        ? va.localeCompare(vb as string)
        : (va as number) - (vb as number);
      return descending ? -order : order;
    });
    return rows;
  }

  setSort(key: SortKey): void {
    this.sort = {
      key,
      descending: this.sort.key === key ? !this.sort.descending : false,
    };
    this.render();
  }

  private render(): void {
    const payload = this.payload;
    this.root.innerHTML = "";
    if (!payload) return;

    const header = document.createElement("header");
    header.className = "results-header";
    const title = document.createElement("h2");
    title.textContent = `Risk ranking - ${payload.model}`;
    header.appendChild(title);

    const sourcePicker = document.createElement("select");
    sourcePicker.dataset.testid = "weights-source";
    for (const source of ["computed", "paper"]) {
      const option = document.createElement("option");
      option.value = source;
      option.textContent = `${source} parameter weights`;
      option.selected = payload.weights_source === source;
      sourcePicker.appendChild(option);
    }
    sourcePicker.addEventListener("change", () => {
      this.options.onSourceChange(sourcePicker.value as WeightsSource);
    });
    header.appendChild(sourcePicker);
    this.root.appendChild(header);

    this.root.appendChild(this.renderWeights(payload));
    this.root.appendChild(this.renderExponents(payload));
    if (payload.rpn_table.length > 0) {
      this.root.appendChild(this.renderTable());
      this.root.appendChild(this.renderAggregates(payload));
    } else {
      const note = document.createElement("p");
      note.dataset.testid = "no-items";
      note.textContent = "This model carries no failure causes; parameter weights only.";
      this.root.appendChild(note);
    }
  }

  private renderWeights(payload: ResultsPayload): HTMLElement {
    const section = document.createElement("section");
    section.className = "weight-bars";
    payload.alternatives.ids.forEach((id, i) => {
      const normal = payload.normals_used[i];
      const row = document.createElement("div");
      row.className = "weight-row";
      row.dataset.testid = `weight-bar-${id}`;
      row.dataset.normal = String(normal);
      const label = document.createElement("span");
      label.textContent = `${id} ${normal.toFixed(3)}`;
      const bar = document.createElement("div");
      bar.className = "bar";
      const fill = document.createElement("div");
      fill.className = "fill";
      fill.style.width = `${Math.round(normal * 100)}%`;
      bar.appendChild(fill);
      row.appendChild(label);
      row.appendChild(bar);
      section.appendChild(row);
    });
    return section;
  }

  private renderExponents(payload: ResultsPayload): HTMLElement {
    const section = document.createElement("section");
    section.className = "exponents";
    for (const key of ["severity", "occurrence", "detection"] as const) {
      const chip = document.createElement("span");
      chip.dataset.testid = `exponent-${key}`;
      chip.textContent = `${key} ^ ${payload.exponents[key].toFixed(4)}`;
      section.appendChild(chip);
    }
    return section;
  }

  private renderTable(): HTMLElement {
    const table = document.createElement("table");
    table.dataset.testid = "rpn-table";
    table.dataset.sortKey = this.sort.key;
    table.dataset.sortDescending = String(this.sort.descending);

    const head = document.createElement("thead");
    const headRow = document.createElement("tr");
    for (const column of COLUMNS) {
      const th = document.createElement("th");
      th.textContent = column.label;
      if (column.key) {
        th.classList.add("sortable");
        th.dataset.sort = column.key;
        th.addEventListener("click", () => this.setSort(column.key as SortKey));
      }
      headRow.appendChild(th);
    }
    head.appendChild(headRow);
    table.appendChild(head);

    const body = document.createElement("tbody");
    for (const row of this.sortedRows()) {
      const tr = document.createElement("tr");
      tr.dataset.cause = row.cause;
      const shift = row.rank_classic - row.rank_weighted;
      const arrow = shift > 0 ? "↑" : shift < 0 ? "↓" : "↔";
      const badge = row.rank_weighted === 1 ? " ★ top risk" : "";
      const cells = [
        row.cause,
        String(row.severity),
        String(row.occurrence),
        String(row.detection),
        String(row.rpn_classic),
        row.rpn_weighted.toFixed(4),
        String(row.rank_classic),
        `${row.rank_weighted}${badge}`,
        `${row.rank_classic} → ${row.rank_weighted} ${arrow}`,
      ];
      cells.forEach((text, i) => {
        const td = document.createElement("td");
        td.textContent = text;
        if (i === 7 && row.rank_weighted === 1) td.classList.add("top-risk");
        tr.appendChild(td);
      });
      body.appendChild(tr);
    }
    table.appendChild(body);
    return table;
  }

  private renderAggregates(payload: ResultsPayload): HTMLElement {
    const footer = document.createElement("footer");
    footer.className = "aggregates";
    const comparison = payload.comparison;
    if (!comparison) return footer;
    const describe = (groups: [number, number][]) =>
      groups.length === 0
        ? "none"
        : groups.map(([rank, size]) => `${size} share rank ${rank}`).join(", ");
    footer.dataset.testid = "aggregates";
    footer.textContent =
      `classic ties: ${describe(comparison.tie_groups_classic)} | ` +
      `weighted ties: ${describe(comparison.tie_groups_weighted)} | ` +
      `weighted exceeds classic on ${comparison.weighted_exceeds_classic} causes | ` +
      `rank correlation ${comparison.rank_correlation.toFixed(4)}`;
    return footer;
  }
}

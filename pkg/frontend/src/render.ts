// DOM construction for the view models. Deliberately dumb: the interesting
// logic (and the tests) live in viewmodel.ts.

import type { Bar, CircuitGrid, ProvenanceRow, SliceBadge } from "./viewmodel.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function renderGrid(
  grid: CircuitGrid,
  selectedSlice: number | null,
  onBoundaryClick: (boundaryIndex: number) => void,
): HTMLElement {
  const table = el("table", "circuit-grid");
  let boundarySeen = 0;
  const boundaryNumber = new Map<number, number>();
  for (const col of grid.boundaries) {
    boundaryNumber.set(col, boundarySeen++);
  }
  for (let row = 0; row < grid.qubitLabels.length; row++) {
    const tr = el("tr");
    tr.appendChild(el("th", "qubit-label", grid.qubitLabels[row]));
    grid.columns.forEach((column, colIndex) => {
      const td = el("td");
      if (column.isBoundary) {
        td.className = "boundary";
        td.title = `breakbarrier #${boundaryNumber.get(colIndex)}  (click to remove)`;
        td.textContent = "┇";
        td.onclick = () => onBoundaryClick(boundaryNumber.get(colIndex)!);
      } else {
        const cell = column.cells.find((c) => c.row === row);
        if (cell) {
          td.textContent = cell.text;
          td.className = `cell ${cell.role}`;
        }
        if (selectedSlice !== null && column.sliceIndex === selectedSlice) {
          td.classList.add("selected-slice");
        }
      }
      tr.appendChild(td);
    });
    table.appendChild(tr);
  }
  return table;
}

export function renderBadges(
  badges: SliceBadge[],
  selected: number | null,
  onSelect: (index: number) => void,
): HTMLElement {
  const list = el("div", "slice-badges");
  for (const badge of badges) {
    const button = el("button", `badge ${badge.behaviour}`, "");
    button.appendChild(el("span", "badge-title", badge.title));
    button.appendChild(el("span", "badge-tag", badge.behaviour));
    button.appendChild(el("span", "badge-tag", badge.complexity));
    if (badge.index === selected) button.classList.add("selected");
    button.onclick = () => onSelect(badge.index);
    for (const warning of badge.warnings) {
      button.title = warning;
    }
    list.appendChild(button);
  }
  return list;
}

export function renderBars(bars: Bar[], caption: string): HTMLElement {
  const wrap = el("div", "chart");
  wrap.appendChild(el("div", "chart-caption", caption));
  const max = bars.reduce((m, b) => Math.max(m, b.value), 0) || 1;
  for (const bar of bars) {
    const row = el("div", "bar-row");
    row.appendChild(el("span", "bar-label", bar.label));
    const track = el("div", "bar-track");
    const fill = el("div", "bar-fill");
    fill.style.width = `${(bar.value / max) * 100}%`;
    track.appendChild(fill);
    row.appendChild(track);
    row.appendChild(el("span", "bar-value", String(bar.value)));
    row.title = bar.detail;
    wrap.appendChild(row);
  }
  if (!bars.length) {
    wrap.appendChild(el("div", "chart-empty", "no entries"));
  }
  return wrap;
}

export function renderAmplitudeTable(rows: Array<[string, number, number]>): HTMLElement {
  const table = el("table", "re-im-table");
  const head = el("tr");
  for (const h of ["bits", "re", "im"]) head.appendChild(el("th", undefined, h));
  table.appendChild(head);
  for (const [bits, re, im] of rows) {
    const tr = el("tr");
    tr.appendChild(el("td", undefined, bits));
    tr.appendChild(el("td", undefined, String(re)));
    tr.appendChild(el("td", undefined, String(im)));
    table.appendChild(tr);
  }
  return table;
}

export function renderProvenance(kind: string, total: number, rows: ProvenanceRow[]): HTMLElement {
  const wrap = el("div", "provenance");
  wrap.appendChild(
    el("div", "chart-caption", `${kind}: ${rows.length} site(s), ${total} occurrence(s)`),
  );
  const table = el("table", "provenance-table");
  const head = el("tr");
  for (const h of ["location", "context", "occurrences"]) {
    head.appendChild(el("th", undefined, h));
  }
  table.appendChild(head);
  for (const row of rows) {
    const tr = el("tr");
    tr.appendChild(el("td", undefined, row.location));
    tr.appendChild(el("td", undefined, row.context || "—"));
    tr.appendChild(el("td", undefined, String(row.occurrences)));
    table.appendChild(tr);
  }
  wrap.appendChild(table);
  return wrap;
}

export function banner(
  host: HTMLElement,
  code: string,
  message: string,
): void {
  const div = el("div", "banner error-banner");
  div.appendChild(el("strong", undefined, code));
  div.appendChild(el("span", undefined, ` ${message} `));
  const close = el("button", "banner-close", "dismiss");
  close.onclick = () => div.remove();
  div.appendChild(close);
  host.prepend(div);
}

import { hasDuplicates, type ReviewItem } from "./review.js";
import type { DuplicateReport } from "./types.js";

export const PLACEHOLDER = "\u2014";

export function dash(value: string | number | null | undefined): string {
  if (value === null || value === undefined || value === "") {
    return PLACEHOLDER;
  }
  return String(value);
}

export function formatScore(score: number | null): string {
  return score === null ? PLACEHOLDER : score.toFixed(4);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function headRow(label: string, field: string, value: string): HTMLElement {
  const row = el("div", "report-row");
  row.append(el("span", "label", label));
  const cell = el("span", "value", value);
  cell.dataset.field = field;
  row.append(cell);
  return row;
}

function idList(field: string, ids: string[]): HTMLElement {
  const box = el("div");
  box.dataset.field = field;
  if (ids.length === 0) {
    box.append(el("p", "empty", PLACEHOLDER));
    return box;
  }
  const list = el("ul", "id-list");
  for (const id of ids) {
    list.append(el("li", "qid", id));
  }
  box.append(list);
  return box;
}

function relatedList(report: DuplicateReport): HTMLElement {
  const box = el("div");
  box.dataset.field = "related";
  if (report.related.length === 0) {
    box.append(el("p", "empty", PLACEHOLDER));
    return box;
  }
  const list = el("ul", "id-list");
  for (const hit of report.related) {
    const item = el("li");
    item.append(el("span", "qid", hit.id));
    item.append(el("span", "score", formatScore(hit.score)));
    list.append(item);
  }
  box.append(list);
  return box;
}

function panel(title: string, pane: string, body: HTMLElement): HTMLElement {
  const section = el("section", "panel");
  section.dataset.panel = pane;
  section.append(el("h3", undefined, title));
  section.append(body);
  return section;
}

function traceTable(report: DuplicateReport): HTMLElement {
  const details = el("details", "trace");
  const summary = el(
    "summary",
    undefined,
    `stage trace (${report.trace.length} decisions)`,
  );
  details.append(summary);
  const wrap = el("div", "scroll-x");
  const table = el("table");
  table.dataset.field = "trace";
  const head = el("thead");
  const headTr = el("tr");
  for (const name of ["candidate", "stage", "action", "score"]) {
    headTr.append(el("th", undefined, name));
  }
  head.append(headTr);
  table.append(head);
  const body = el("tbody");
  for (const entry of report.trace) {
    const tr = el("tr", `action-${entry.action.toLowerCase()}`);
    tr.append(el("td", "qid", entry.candidate_id));
    tr.append(el("td", undefined, entry.stage));
    tr.append(el("td", undefined, entry.action));
    tr.append(el("td", "score", formatScore(entry.score)));
    body.append(tr);
  }
  table.append(body);
  wrap.append(table);
  details.append(wrap);
  return details;
}

function timingsLine(report: DuplicateReport): HTMLElement {
  const parts = Object.keys(report.timings)
    .sort()
    .map((key) => `${key} ${(report.timings[key] * 1000).toFixed(1)}ms`);
  const line = el("p", "timings", parts.join(" · "));
  line.dataset.field = "timings";
  return line;
}

/**
 * Builds the full report card: header fields, verdict, the three result
 * panels, a collapsed stage-trace table, and a timings footer. Every field
 * named in REPORT_FIELDS gets a [data-field] element, with placeholders for
 * empty or null values.
 */
export function renderReport(report: DuplicateReport): HTMLElement {
  const card = el("article", "report");

  const head = el("div", "report-head");
  head.append(headRow("input id", "input_id", report.input_id));
  head.append(headRow("normalized", "normalized_text", report.normalized_text));
  const tagText = [
    dash(report.tag.subject),
    dash(report.tag.chapter),
    dash(report.tag.topic),
  ].join(" / ");
  head.append(headRow("tag", "tag", tagText));
  card.append(head);

  if (hasDuplicates(report)) {
    card.append(el("p", "verdict verdict-dup", "duplicates found"));
  } else {
    card.append(
      el("p", "verdict verdict-clean", "no duplicates, safe to onboard"),
    );
  }

  const panels = el("div", "panels");
  panels.append(
    panel(
      "exact duplicates",
      "exact",
      idList("exact_duplicates", report.exact_duplicates),
    ),
  );
  panels.append(
    panel(
      "near duplicates",
      "near",
      idList("near_duplicates", report.near_duplicates),
    ),
  );
  panels.append(panel("related questions", "related", relatedList(report)));
  card.append(panels);

  card.append(traceTable(report));
  card.append(timingsLine(report));
  return card;
}

export function renderErrorBanner(message: string): HTMLElement {
  return el("div", "banner-error", message);
}

export function renderEmptyState(message: string): HTMLElement {
  return el("p", "empty-state", message);
}

function chipFor(item: ReviewItem): HTMLElement {
  const label =
    item.status === "duplicates" ? "has duplicates" : item.status;
  return el("span", `chip chip-${item.status}`, label);
}

function snippet(text: string | null): string {
  if (text === null) {
    return PLACEHOLDER;
  }
  return text.length > 80 ? `${text.slice(0, 77)}...` : text;
}

/**
 * One expandable row per upload line: a header with row number, status chip,
 * text snippet, and decision slot, plus a hidden detail pane holding the full
 * report (or the row's error). Clicking the header toggles the pane.
 */
export function renderBulkList(items: ReviewItem[]): HTMLElement {
  const list = el("div", "bulk-list");
  for (const item of items) {
    const row = el("div", "bulk-row");
    row.dataset.row = String(item.row);

    const header = el("button", "bulk-row-head");
    header.type = "button";
    header.append(el("span", "row-no", `row ${item.row}`));
    header.append(chipFor(item));
    header.append(el("span", "row-text", snippet(item.text)));
    const decision = el("span", "decision");
    decision.dataset.decision = "";
    header.append(decision);
    row.append(header);

    const detail = el("div", "bulk-detail");
    detail.hidden = true;
    if (item.report !== null) {
      detail.append(renderReport(item.report));
    } else {
      detail.append(el("p", "row-error", dash(item.error)));
    }
    row.append(detail);

    header.addEventListener("click", () => {
      detail.hidden = !detail.hidden;
    });
    list.append(row);
  }
  return list;
}

/** Writes a terminal decision into a rendered bulk row's decision slot. */
export function markDecision(row: HTMLElement, item: ReviewItem): void {
  const slot = row.querySelector<HTMLElement>("[data-decision]");
  if (slot !== null) {
    slot.textContent = item.isDecided ? item.decision.toLowerCase() : "";
    slot.classList.toggle("decided", item.isDecided);
  }
}

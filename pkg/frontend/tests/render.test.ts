import { describe, expect, it } from "vitest";

import {
  dash,
  formatScore,
  markDecision,
  PLACEHOLDER,
  renderBulkList,
  renderEmptyState,
  renderErrorBanner,
  renderReport,
} from "../src/render.js";
import { ReviewItem } from "../src/review.js";
import { REPORT_FIELDS, type BulkItem, type DuplicateReport } from "../src/types.js";
import bulkRows from "../fixtures/bulk-rows.json";
import checkClean from "../fixtures/check-clean.json";
import checkDuplicate from "../fixtures/check-duplicate.json";

const dupReport = checkDuplicate as unknown as DuplicateReport;
const cleanReport = checkClean as unknown as DuplicateReport;
const rows = bulkRows as unknown as BulkItem[];

describe("formatting helpers", () => {
  it("renders placeholders for missing values", () => {
    expect(dash(null)).toBe(PLACEHOLDER);
    expect(dash(undefined)).toBe(PLACEHOLDER);
    expect(dash("")).toBe(PLACEHOLDER);
    expect(dash("biology")).toBe("biology");
    expect(dash(0)).toBe("0");
  });

  it("formats scores to four decimals with a placeholder for null", () => {
    expect(formatScore(0.8861862597425676)).toBe("0.8862");
    expect(formatScore(1)).toBe("1.0000");
    expect(formatScore(null)).toBe(PLACEHOLDER);
  });
});

describe("renderReport", () => {
  it("shows every schema field or an explicit placeholder", () => {
    const card = renderReport(dupReport);
    for (const field of REPORT_FIELDS) {
      const node = card.querySelector(`[data-field="${field}"]`);
      expect(node, field).not.toBeNull();
    }
  });

  it("renders the three result panels with their contents", () => {
    const card = renderReport(dupReport);
    const panels = card.querySelectorAll("[data-panel]");
    expect(panels).toHaveLength(3);
    const names = Array.from(panels).map((p) => (p as HTMLElement).dataset.panel);
    expect(names).toEqual(["exact", "near", "related"]);
    expect(card.querySelector('[data-panel="exact"]')?.textContent).toContain("qa");
    expect(card.querySelector('[data-panel="near"]')?.textContent).toContain("qd");
    const related = card.querySelector('[data-panel="related"]');
    expect(related?.textContent).toContain("qf");
    expect(related?.textContent).toContain("0.8862");
  });

  it("collapses the stage trace by default with one row per decision", () => {
    const card = renderReport(dupReport);
    const details = card.querySelector<HTMLDetailsElement>("details.trace");
    expect(details).not.toBeNull();
    expect(details?.open).toBe(false);
    expect(details?.querySelector("summary")?.textContent).toContain(
      String(dupReport.trace.length),
    );
    const bodyRows = details?.querySelectorAll("tbody tr");
    expect(bodyRows).toHaveLength(dupReport.trace.length);
    const firstCells = bodyRows?.[0].querySelectorAll("td");
    expect(firstCells?.[0].textContent).toBe(dupReport.trace[0].candidate_id);
    expect(firstCells?.[1].textContent).toBe(dupReport.trace[0].stage);
    expect(firstCells?.[2].textContent).toBe(dupReport.trace[0].action);
  });

  it("shows placeholders for null trace scores and taxonomy fields", () => {
    const card = renderReport(dupReport);
    const scoreCells = Array.from(
      card.querySelectorAll("tbody td.score"),
      (cell) => cell.textContent,
    );
    const nullScores = dupReport.trace.filter((t) => t.score === null).length;
    expect(nullScores).toBeGreaterThan(0);
    expect(scoreCells.filter((t) => t === PLACEHOLDER)).toHaveLength(nullScores);
    const tag = card.querySelector('[data-field="tag"]');
    expect(tag?.textContent).toBe(`business / ${PLACEHOLDER} / ${PLACEHOLDER}`);
  });

  it("marks duplicate reports with a blocking verdict", () => {
    const card = renderReport(dupReport);
    expect(card.querySelector(".verdict")?.textContent).toBe("duplicates found");
  });

  it("marks clean reports as safe to onboard with empty panels", () => {
    const card = renderReport(cleanReport);
    expect(card.querySelector(".verdict")?.textContent).toBe(
      "no duplicates, safe to onboard",
    );
    for (const pane of ["exact", "near", "related"]) {
      expect(
        card.querySelector(`[data-panel="${pane}"]`)?.textContent,
      ).toContain(PLACEHOLDER);
    }
  });
});

describe("renderBulkList", () => {
  it("renders one row per item with status chips", () => {
    const items = rows.map((row) => ReviewItem.fromBulkItem(row));
    const list = renderBulkList(items);
    expect(list.querySelectorAll(".bulk-row")).toHaveLength(3);
    const chips = Array.from(
      list.querySelectorAll(".chip"),
      (chip) => chip.textContent,
    );
    expect(chips).toEqual(["has duplicates", "clean", "clean"]);
    expect(list.querySelectorAll(".chip-duplicates")).toHaveLength(1);
  });

  it("expands the full report when a row header is clicked", () => {
    const items = rows.map((row) => ReviewItem.fromBulkItem(row));
    const list = renderBulkList(items);
    document.body.append(list);
    const row = list.querySelector<HTMLElement>(".bulk-row")!;
    const detail = row.querySelector<HTMLElement>(".bulk-detail")!;
    expect(detail.hidden).toBe(true);
    row.querySelector<HTMLButtonElement>(".bulk-row-head")!.click();
    expect(detail.hidden).toBe(false);
    expect(detail.querySelector(".report")).not.toBeNull();
    row.querySelector<HTMLButtonElement>(".bulk-row-head")!.click();
    expect(detail.hidden).toBe(true);
    list.remove();
  });

  it("shows the error text for failed rows", () => {
    const items = [new ReviewItem(2, null, null, "line 3: invalid JSON")];
    const list = renderBulkList(items);
    expect(list.querySelector(".chip-error")).not.toBeNull();
    expect(list.querySelector(".row-error")?.textContent).toBe(
      "line 3: invalid JSON",
    );
  });

  it("records decisions into the row's decision slot", () => {
    const items = rows.map((row) => ReviewItem.fromBulkItem(row));
    const list = renderBulkList(items);
    const row = list.querySelector<HTMLElement>('.bulk-row[data-row="1"]')!;
    items[1].decide("ONBOARDED");
    markDecision(row, items[1]);
    const slot = row.querySelector("[data-decision]");
    expect(slot?.textContent).toBe("onboarded");
    expect(slot?.classList.contains("decided")).toBe(true);
  });
});

describe("banners and empty states", () => {
  it("builds an error banner with the message", () => {
    const banner = renderErrorBanner("request failed: fetch failed");
    expect(banner.className).toBe("banner-error");
    expect(banner.textContent).toBe("request failed: fetch failed");
  });

  it("builds an empty-state paragraph", () => {
    const empty = renderEmptyState("no rows in file");
    expect(empty.className).toBe("empty-state");
    expect(empty.textContent).toBe("no rows in file");
  });
});

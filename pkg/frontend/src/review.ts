import type { BulkItem, DuplicateReport } from "./types.js";

export type Decision = "PENDING" | "REJECTED" | "ONBOARDED" | "FORCED";

export type ReviewStatus = "clean" | "duplicates" | "error";

export function hasDuplicates(report: DuplicateReport): boolean {
  return report.exact_duplicates.length > 0 || report.near_duplicates.length > 0;
}

/**
 * One question under review, either typed into the single-check form or read
 * from a bulk upload row. Tracks the reviewer's decision, which moves from
 * PENDING to exactly one terminal state and never changes again.
 */
export class ReviewItem {
  readonly row: number;
  readonly text: string | null;
  readonly report: DuplicateReport | null;
  readonly error: string | null;
  private current: Decision = "PENDING";

  constructor(
    row: number,
    text: string | null,
    report: DuplicateReport | null,
    error: string | null = null,
  ) {
    this.row = row;
    this.text = text;
    this.report = report;
    this.error = error;
  }

  static fromBulkItem(item: BulkItem): ReviewItem {
    return new ReviewItem(item.row, item.text, item.report, item.error);
  }

  get decision(): Decision {
    return this.current;
  }

  get status(): ReviewStatus {
    if (this.error !== null || this.report === null) {
      return "error";
    }
    return hasDuplicates(this.report) ? "duplicates" : "clean";
  }

  get isDecided(): boolean {
    return this.current !== "PENDING";
  }

  decide(next: Exclude<Decision, "PENDING">): void {
    if (this.current !== "PENDING") {
      throw new Error(`already decided: ${this.current}`);
    }
    this.current = next;
  }
}

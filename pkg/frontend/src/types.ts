/** Shapes of the JSON bodies exchanged with the review service. */

export interface TaxonomyTag {
  subject: string;
  chapter: string | null;
  topic: string | null;
}

export interface TraceEntry {
  candidate_id: string;
  stage: string;
  action: string;
  score: number | null;
}

export interface RelatedHit {
  id: string;
  score: number;
}

export interface DuplicateReport {
  input_id: string;
  normalized_text: string;
  tag: TaxonomyTag;
  exact_duplicates: string[];
  near_duplicates: string[];
  related: RelatedHit[];
  trace: TraceEntry[];
  timings: Record<string, number>;
}

export interface BulkItem {
  row: number;
  text: string | null;
  report: DuplicateReport | null;
  error: string | null;
}

export interface OnboardResponse {
  id: string;
  report: DuplicateReport;
}

export interface StoreStats {
  questions: number;
  subjects: Record<string, number>;
  index_mode: string;
  embedding_dim: number;
}

export interface RelatedQuestion {
  id: string;
  text: string;
  score: number;
}

/**
 * Every top-level field of a duplicate report. The renderer must show each
 * one (or an explicit placeholder), and a contract test keeps this list in
 * lock step with the published report schema.
 */
export const REPORT_FIELDS = [
  "input_id",
  "normalized_text",
  "tag",
  "exact_duplicates",
  "near_duplicates",
  "related",
  "trace",
  "timings",
] as const;

export type ReportField = (typeof REPORT_FIELDS)[number];

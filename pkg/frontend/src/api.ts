import type {
  BulkItem,
  DuplicateReport,
  OnboardResponse,
  RelatedQuestion,
  StoreStats,
} from "./types.js";

/** Raised for any non-2xx response other than the onboarding 409. */
export class ApiError extends Error {
  readonly status: number;
  readonly detail: string;

  constructor(status: number, detail: string) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
    this.status = status;
    this.detail = detail;
  }
}

/** Result of an onboarding attempt. A 409 is a domain outcome, not an error. */
export type OnboardOutcome =
  | { blocked: false; id: string; report: DuplicateReport }
  | { blocked: true; report: DuplicateReport };

export interface OnboardFields {
  force?: boolean;
  subject?: string;
  chapter?: string;
  topic?: string;
}

/** Structural subset of Response, so tests can hand in plain fakes. */
export interface HttpResponse {
  ok: boolean;
  status: number;
  statusText: string;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<HttpResponse>;

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

async function bodyOf(resp: HttpResponse): Promise<unknown> {
  try {
    return await resp.json();
  } catch {
    return null;
  }
}

function detailOf(body: unknown, resp: HttpResponse): string {
  if (isRecord(body) && typeof body.detail === "string") {
    return body.detail;
  }
  return resp.statusText || "request failed";
}

/** Thin typed client for the service's versioned JSON endpoints. */
export class ApiClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private url(path: string): string {
    return `${this.baseUrl}/api/v1${path}`;
  }

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const resp = await this.fetchImpl(this.url(path), init);
    const body = await bodyOf(resp);
    if (!resp.ok) {
      throw new ApiError(resp.status, detailOf(body, resp));
    }
    return body;
  }

  async health(): Promise<{ status: string }> {
    return (await this.request("/health")) as { status: string };
  }

  async stats(): Promise<StoreStats> {
    return (await this.request("/stats")) as StoreStats;
  }

  async check(text: string): Promise<DuplicateReport> {
    return (await this.request("/check", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text }),
    })) as DuplicateReport;
  }

  /** Uploads a .jsonl or .csv file; the server keys parsing off the name. */
  async bulkCheck(file: File): Promise<BulkItem[]> {
    const form = new FormData();
    form.append("file", file);
    return (await this.request("/bulk-check", {
      method: "POST",
      body: form,
    })) as BulkItem[];
  }

  async onboard(text: string, fields: OnboardFields = {}): Promise<OnboardOutcome> {
    const payload: Record<string, unknown> = { text };
    if (fields.force) {
      payload.force = true;
    }
    if (fields.subject !== undefined) {
      payload.subject = fields.subject;
    }
    if (fields.chapter !== undefined) {
      payload.chapter = fields.chapter;
    }
    if (fields.topic !== undefined) {
      payload.topic = fields.topic;
    }
    const resp = await this.fetchImpl(this.url("/questions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    const body = await bodyOf(resp);
    if (resp.status === 409 && isRecord(body) && isRecord(body.report)) {
      return { blocked: true, report: body.report as unknown as DuplicateReport };
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, detailOf(body, resp));
    }
    const accepted = body as OnboardResponse;
    return { blocked: false, id: accepted.id, report: accepted.report };
  }

  async related(id: string, n?: number): Promise<RelatedQuestion[]> {
    const query = n === undefined ? "" : `?n=${n}`;
    const path = `/questions/${encodeURIComponent(id)}/related${query}`;
    return (await this.request(path)) as RelatedQuestion[];
  }
}

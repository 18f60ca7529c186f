import { ApiError, type ApiClient } from "./api.js";
import {
  markDecision,
  renderBulkList,
  renderEmptyState,
  renderErrorBanner,
  renderReport,
} from "./render.js";
import { ReviewItem } from "./review.js";
import type { DuplicateReport } from "./types.js";

export interface AppOptions {
  /** Called when the reviewer enters a new API base URL. */
  onBaseChange?: (baseUrl: string) => void;
}

type ViewName = "check" | "bulk";

/**
 * The review console: a single-question check form and a bulk upload view,
 * both talking to the duplicate-detection service through one ApiClient.
 * Server state is the only state; the app keeps nothing beyond the page.
 */
export class App {
  private readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly options: AppOptions;

  private inFlight: Promise<void> | null = null;
  private checkItem: ReviewItem | null = null;
  private bulkItems: ReviewItem[] = [];

  private statsLine!: HTMLElement;
  private checkText!: HTMLTextAreaElement;
  private checkView!: HTMLElement;
  private bulkView!: HTMLElement;
  private bulkInput!: HTMLInputElement;

  constructor(root: HTMLElement, api: ApiClient, options: AppOptions = {}) {
    this.root = root;
    this.api = api;
    this.options = options;
  }

  mount(): void {
    this.root.innerHTML = `
      <header class="topbar">
        <h1>question review</h1>
        <span class="stats-line" data-stats></span>
        <form class="base-form">
          <input type="text" data-base aria-label="API base URL" />
          <button type="submit">set API</button>
        </form>
      </header>
      <nav class="tabs">
        <button type="button" class="tab tab-active" data-tab="check">check</button>
        <button type="button" class="tab" data-tab="bulk">bulk</button>
      </nav>
      <section class="view" data-view="check">
        <div class="controls">
          <textarea data-check-text rows="3"
            placeholder="paste a question to check for duplicates"></textarea>
          <button type="button" class="primary" data-action="check">check</button>
        </div>
        <div class="banner" data-banner></div>
        <div class="result" data-result></div>
      </section>
      <section class="view" data-view="bulk" hidden>
        <div class="controls">
          <input type="file" data-bulk-file accept=".jsonl,.csv" />
          <button type="button" class="primary" data-action="bulk">run bulk check</button>
        </div>
        <div class="banner" data-banner></div>
        <div class="result" data-result></div>
      </section>
    `;

    this.statsLine = this.query("[data-stats]");
    this.checkText = this.query("[data-check-text]");
    this.checkView = this.query('[data-view="check"]');
    this.bulkView = this.query('[data-view="bulk"]');
    this.bulkInput = this.query("[data-bulk-file]");

    const baseInput = this.query<HTMLInputElement>("[data-base]");
    baseInput.value = this.api.baseUrl;
    this.query<HTMLFormElement>(".base-form").addEventListener("submit", (ev) => {
      ev.preventDefault();
      const value = baseInput.value.trim();
      if (value) {
        this.options.onBaseChange?.(value);
      }
    });

    for (const tab of this.root.querySelectorAll<HTMLButtonElement>("[data-tab]")) {
      tab.addEventListener("click", () => {
        this.showView(tab.dataset.tab as ViewName);
      });
    }
    this.query('[data-action="check"]').addEventListener("click", () => {
      this.run(() => this.submitCheck());
    });
    this.query('[data-action="bulk"]').addEventListener("click", () => {
      this.run(() => this.submitBulk());
    });
  }

  /** Resolves once no request started by the UI is still in flight. */
  async whenIdle(): Promise<void> {
    while (this.inFlight !== null) {
      await this.inFlight;
    }
  }

  async refreshStats(): Promise<void> {
    try {
      const stats = await this.api.stats();
      const subjects = Object.keys(stats.subjects).length;
      this.statsLine.textContent =
        `${stats.questions} questions · ${subjects} subjects · ` +
        `${stats.index_mode} index · dim ${stats.embedding_dim}`;
    } catch {
      this.statsLine.textContent = `service unreachable at ${this.api.baseUrl}`;
    }
  }

  private query<T extends Element = HTMLElement>(selector: string): T {
    const node = this.root.querySelector<T>(selector);
    if (node === null) {
      throw new Error(`missing element: ${selector}`);
    }
    return node;
  }

  private showView(name: ViewName): void {
    this.checkView.hidden = name !== "check";
    this.bulkView.hidden = name !== "bulk";
    for (const tab of this.root.querySelectorAll<HTMLButtonElement>("[data-tab]")) {
      tab.classList.toggle("tab-active", tab.dataset.tab === name);
    }
  }

  private activeView(): HTMLElement {
    return this.bulkView.hidden ? this.checkView : this.bulkView;
  }

  private banner(): HTMLElement {
    const node = this.activeView().querySelector<HTMLElement>("[data-banner]");
    if (node === null) {
      throw new Error("missing banner host");
    }
    return node;
  }

  private resultHost(view: HTMLElement): HTMLElement {
    const node = view.querySelector<HTMLElement>("[data-result]");
    if (node === null) {
      throw new Error("missing result host");
    }
    return node;
  }

  private showError(err: unknown): void {
    const message =
      err instanceof ApiError
        ? err.detail
        : err instanceof Error
          ? `request failed: ${err.message}`
          : String(err);
    const host = this.banner();
    host.replaceChildren(renderErrorBanner(message));
  }

  private clearBanner(): void {
    this.banner().replaceChildren();
  }

  private setBusy(busy: boolean): void {
    this.root.toggleAttribute("aria-busy", busy);
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(
      "button[data-action], button[data-decide]",
    )) {
      button.disabled = busy;
    }
  }

  // Serializes user-triggered requests: while one is in flight every further
  // click is dropped, so no button can fire the same request twice.
  private run(task: () => Promise<void>): void {
    if (this.inFlight !== null) {
      return;
    }
    this.setBusy(true);
    this.inFlight = task()
      .catch((err) => this.showError(err))
      .finally(() => {
        this.inFlight = null;
        this.setBusy(false);
      });
  }

  private async submitCheck(): Promise<void> {
    this.clearBanner();
    const text = this.checkText.value.trim();
    const host = this.resultHost(this.checkView);
    if (!text) {
      host.replaceChildren(renderEmptyState("enter a question first"));
      return;
    }
    const report = await this.api.check(text);
    this.checkItem = new ReviewItem(0, text, report);
    this.renderCheckResult(report);
  }

  private renderCheckResult(report: DuplicateReport): void {
    const host = this.resultHost(this.checkView);
    host.replaceChildren(renderReport(report));
    host.append(this.decisionBar(false));
  }

  private decisionBar(blocked: boolean): HTMLElement {
    const bar = document.createElement("div");
    bar.className = "decision-bar";

    const onboard = document.createElement("button");
    onboard.type = "button";
    onboard.dataset.decide = blocked ? "force" : "onboard";
    onboard.textContent = blocked ? "force onboard" : "onboard";
    onboard.addEventListener("click", () => {
      this.run(() => this.onboardCurrent(blocked));
    });
    bar.append(onboard);

    const reject = document.createElement("button");
    reject.type = "button";
    reject.dataset.decide = "reject";
    reject.textContent = "reject";
    reject.addEventListener("click", () => {
      this.run(async () => {
        this.clearBanner();
        this.checkItem?.decide("REJECTED");
        this.setCheckStatus("rejected", "status-rejected");
      });
    });
    bar.append(reject);

    const status = document.createElement("span");
    status.dataset.status = "";
    bar.append(status);
    return bar;
  }

  private setCheckStatus(message: string, className: string): void {
    const host = this.resultHost(this.checkView);
    const bar = host.querySelector<HTMLElement>(".decision-bar");
    if (bar === null) {
      return;
    }
    for (const button of bar.querySelectorAll("button")) {
      button.remove();
    }
    const status = bar.querySelector<HTMLElement>("[data-status]");
    if (status !== null) {
      status.textContent = message;
      status.className = className;
    }
  }

  private async onboardCurrent(force: boolean): Promise<void> {
    this.clearBanner();
    const item = this.checkItem;
    if (item === null || item.text === null) {
      return;
    }
    const outcome = await this.api.onboard(item.text, force ? { force } : {});
    const host = this.resultHost(this.checkView);
    if (outcome.blocked) {
      host.replaceChildren(renderReport(outcome.report));
      host.append(this.decisionBar(true));
      this.banner().replaceChildren(
        renderErrorBanner("duplicates found, onboarding blocked"),
      );
      return;
    }
    item.decide(force ? "FORCED" : "ONBOARDED");
    const suffix = force ? " (forced)" : "";
    this.setCheckStatus(`onboarded as ${outcome.id}${suffix}`, "status-onboarded");
  }

  private async submitBulk(): Promise<void> {
    this.clearBanner();
    const host = this.resultHost(this.bulkView);
    const file = this.bulkInput.files?.[0];
    if (!file) {
      host.replaceChildren(renderEmptyState("choose a .jsonl or .csv file first"));
      return;
    }
    const rows = await this.api.bulkCheck(file);
    this.bulkItems = rows.map((row) => ReviewItem.fromBulkItem(row));
    this.renderBulkResult();
  }

  private renderBulkResult(): void {
    const host = this.resultHost(this.bulkView);
    host.replaceChildren();
    if (this.bulkItems.length === 0) {
      host.append(renderEmptyState("no rows in file"));
      return;
    }
    const flagged = this.bulkItems.filter((i) => i.status === "duplicates").length;
    const errors = this.bulkItems.filter((i) => i.status === "error").length;
    const summary = document.createElement("p");
    summary.className = "bulk-summary";
    summary.textContent =
      `${this.bulkItems.length} rows · ${flagged} with duplicates · ` +
      `${errors} errors`;
    host.append(summary);
    host.append(renderBulkList(this.bulkItems));

    if (this.bulkItems.some((i) => i.status === "clean")) {
      const batch = document.createElement("button");
      batch.type = "button";
      batch.dataset.decide = "onboard-clean";
      batch.textContent = "onboard all clean";
      batch.addEventListener("click", () => {
        this.run(() => this.onboardClean());
      });
      host.append(batch);
    }
  }

  private async onboardClean(): Promise<void> {
    this.clearBanner();
    const host = this.resultHost(this.bulkView);
    for (const item of this.bulkItems) {
      if (item.status !== "clean" || item.isDecided || item.text === null) {
        continue;
      }
      const row = host.querySelector<HTMLElement>(
        `.bulk-row[data-row="${item.row}"]`,
      );
      try {
        const outcome = await this.api.onboard(item.text);
        if (outcome.blocked) {
          this.noteRow(row, "blocked: duplicates found");
          continue;
        }
        item.decide("ONBOARDED");
        if (row !== null) {
          markDecision(row, item);
        }
      } catch (err) {
        const detail = err instanceof ApiError ? err.detail : String(err);
        this.noteRow(row, `error: ${detail}`);
      }
    }
  }

  private noteRow(row: HTMLElement | null, message: string): void {
    if (row === null) {
      return;
    }
    const slot = row.querySelector<HTMLElement>("[data-decision]");
    if (slot !== null) {
      slot.textContent = message;
      slot.classList.add("row-note");
    }
  }
}

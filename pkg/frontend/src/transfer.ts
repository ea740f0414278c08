/**
 * Import and export panel.
 *
 * Export hands the API response to the saver without touching it, so
 * the downloaded file is byte for byte what the service produced.
 */

import { ApiClient, ApiError } from "./api.js";
import { fromTemplate, roleOf } from "./dom.js";

export type FileSaver = (filename: string, mediaType: string, data: string) => void;

const browserSaver: FileSaver = (filename, mediaType, data) => {
  const blob = new Blob([data], { type: mediaType });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
};

const TEMPLATE = `
  <section class="transfer-panel" aria-label="Import and export">
    <h2 class="panel-title">Import / export</h2>
    <div class="transfer-export">
      <button type="button" class="transfer-export-json" data-role="export-json">
        Export JSON
      </button>
      <button type="button" class="transfer-export-csv" data-role="export-csv">
        Export CSV
      </button>
    </div>
    <form class="transfer-import" data-role="import-form">
      <textarea
        class="transfer-import-text"
        data-role="import-text"
        rows="4"
        placeholder="Paste stories to import"
        aria-label="Stories to import"
      ></textarea>
      <div class="transfer-import-actions">
        <select class="transfer-import-format" data-role="import-format" aria-label="Import format">
          <option value="json">JSON</option>
          <option value="csv">CSV</option>
        </select>
        <button type="submit" class="transfer-import-submit">Import</button>
      </div>
    </form>
    <ul class="transfer-errors" data-role="import-errors"></ul>
  </section>`;

export interface TransferEvents {
  onImported(count: number): void;
  onStatus(message: string, tone: "info" | "error"): void;
}

export class TransferPanel {
  readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly project: string;
  private readonly user: string;
  private readonly events: TransferEvents;
  private readonly saver: FileSaver;

  constructor(
    api: ApiClient,
    project: string,
    user: string,
    events: TransferEvents,
    saver: FileSaver = browserSaver,
  ) {
    this.api = api;
    this.project = project;
    this.user = user;
    this.events = events;
    this.saver = saver;
    this.root = fromTemplate(TEMPLATE);
    roleOf(this.root, "export-json").addEventListener("click", () => {
      void this.export("json");
    });
    roleOf(this.root, "export-csv").addEventListener("click", () => {
      void this.export("csv");
    });
    this.root.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.import();
    });
  }

  private async export(format: "json" | "csv"): Promise<void> {
    try {
      const result = await this.api.exportStories(this.project, format);
      this.saver(`${this.project}-stories.${format}`, result.mediaType, result.data);
      this.events.onStatus(`Exported stories as ${format.toUpperCase()}.`, "info");
    } catch (error) {
      const message = error instanceof ApiError ? error.detail : String(error);
      this.events.onStatus(message, "error");
    }
  }

  private async import(): Promise<void> {
    const text = roleOf<HTMLTextAreaElement>(this.root, "import-text");
    const format = roleOf<HTMLSelectElement>(this.root, "import-format")
      .value as "json" | "csv";
    const payload = text.value;
    if (!payload.trim()) return;
    const errors = roleOf<HTMLUListElement>(this.root, "import-errors");
    errors.textContent = "";
    try {
      const report = await this.api.importStories(this.project, this.user, format, payload);
      for (const row of report.errors) {
        const item = document.createElement("li");
        item.className = "transfer-error";
        item.textContent = `row ${row.row}: ${row.reason} (${row.text})`;
        errors.appendChild(item);
      }
      if (report.imported > 0) {
        text.value = "";
        this.events.onImported(report.imported);
      }
      const tone = report.errors.length > 0 ? "error" : "info";
      this.events.onStatus(
        `Imported ${report.imported} stories, ${report.errors.length} rejected.`,
        tone,
      );
    } catch (error) {
      const message = error instanceof ApiError ? error.detail : String(error);
      this.events.onStatus(message, "error");
    }
  }
}

import type { SearchHit } from "./types.js";
import { formatTime } from "./types.js";

export interface SearchCallbacks {
  runSearch(q: string): Promise<SearchHit[]>;
  onJump(hit: SearchHit): void;
}

/** Query box plus a result list; results jump the cursor and playhead. */
export class SearchPane {
  readonly input: HTMLInputElement;
  private results: HTMLUListElement;

  constructor(container: HTMLElement, private cb: SearchCallbacks) {
    const form = document.createElement("form");
    form.setAttribute("role", "search");
    form.setAttribute("aria-label", "Search the recording");

    const label = document.createElement("label");
    label.htmlFor = "search-query";
    label.textContent = "Search";
    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.id = "search-query";

    const btn = document.createElement("button");
    btn.type = "submit";
    btn.textContent = "Search";

    form.append(label, this.input, btn);
    this.results = document.createElement("ul");
    this.results.className = "search-results";
    this.results.setAttribute("aria-label", "Search results");
    container.append(form, this.results);

    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.run();
    });
  }

  private async run(): Promise<void> {
    const hits = await this.cb.runSearch(this.input.value);
    this.renderHits(hits);
  }

  renderHits(hits: SearchHit[]): void {
    this.results.textContent = "";
    for (const hit of hits) {
      const li = document.createElement("li");
      const btn = document.createElement("button");
      btn.type = "button";
      btn.textContent = `${hit.snippet} (${formatTime(hit.time)})`;
      btn.setAttribute(
        "aria-label",
        `${hit.kind} hit: ${hit.snippet} at ${formatTime(hit.time)}`,
      );
      btn.addEventListener("click", () => this.cb.onJump(hit));
      li.appendChild(btn);
      this.results.appendChild(li);
    }
    if (hits.length === 0) {
      const li = document.createElement("li");
      li.textContent = "No matches";
      this.results.appendChild(li);
    }
  }
}

import type { OutlineItem } from "./types.js";
import { formatTime } from "./types.js";

export interface OutlineCallbacks {
  onJump(item: OutlineItem): void;
}

/** Scene, error and pause milestones as a list of jump buttons. */
export class OutlinePane {
  private listEl: HTMLUListElement;

  constructor(container: HTMLElement, private cb: OutlineCallbacks) {
    container.setAttribute("aria-label", "Outline");
    this.listEl = document.createElement("ul");
    this.listEl.className = "outline-list";
    container.appendChild(this.listEl);
  }

  render(items: OutlineItem[]): void {
    this.listEl.textContent = "";
    for (const item of items) {
      const li = document.createElement("li");
      const btn = document.createElement("button");
      btn.type = "button";
      btn.textContent = item.label;
      btn.setAttribute(
        "aria-label",
        `Jump to ${item.kind.toLowerCase()}: ${item.label} at ${formatTime(item.time)}`,
      );
      btn.addEventListener("click", () => this.cb.onJump(item));
      li.appendChild(btn);
      this.listEl.appendChild(li);
    }
  }
}

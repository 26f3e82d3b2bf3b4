import { createApp, type App } from "../src/app.js";
import type { Earcons } from "../src/earcons.js";
import { FakeApi } from "./fake_api.js";

export class RecordingEarcons implements Earcons {
  scenes = 0;
  warnings = 0;

  sceneChange(): void {
    this.scenes++;
  }

  warning(): void {
    this.warnings++;
  }
}

/** Drain pending promise callbacks and zero-delay timers. */
export async function settle(rounds = 4): Promise<void> {
  for (let i = 0; i < rounds; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

export interface Mounted {
  app: App;
  api: FakeApi;
  earcons: RecordingEarcons;
  root: HTMLElement;
}

export async function mount(api?: FakeApi): Promise<Mounted> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const fake = api ?? new FakeApi();
  const earcons = new RecordingEarcons();
  const app = createApp(root, fake, earcons);
  await app.refresh();
  await settle();
  return { app, api: fake, earcons, root };
}

export function unmount(m: Mounted): void {
  m.app.dispose();
  m.root.remove();
}

/** Rough accessible-name computation, enough for these assertions. */
export function accName(el: Element): string {
  const aria = el.getAttribute("aria-label");
  if (aria) return aria.trim();
  const labelledBy = el.getAttribute("aria-labelledby");
  if (labelledBy) {
    return labelledBy
      .split(/\s+/)
      .map((id) => document.getElementById(id)?.textContent ?? "")
      .join(" ")
      .trim();
  }
  if (el instanceof HTMLInputElement && el.labels) {
    const fromLabels = Array.from(el.labels)
      .map((l) => l.textContent ?? "")
      .join(" ")
      .trim();
    if (fromLabels) return fromLabels;
  }
  return (el.textContent ?? "").trim();
}

export function rowFor(root: HTMLElement, blockId: string): HTMLElement | null {
  return root.querySelector(`li[data-block-id="${blockId}"]`);
}

export function pressKey(
  target: Element,
  key: string,
  init: KeyboardEventInit = {},
): void {
  target.dispatchEvent(
    new KeyboardEvent("keydown", { key, bubbles: true, cancelable: true, ...init }),
  );
}

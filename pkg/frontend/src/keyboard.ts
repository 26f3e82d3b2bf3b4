import type { ScriptView } from "./script_view.js";

export interface KeyActions {
  deleteSelection(): void;
  inspect(): void;
  togglePlay(): void;
}

/**
 * Script list key bindings.  Arrows move by line and word, h jumps to the
 * next scene heading, backspace deletes the word selection or the whole
 * line, i asks what is on screen, space toggles playback.
 */
export function bindScriptKeys(
  list: HTMLElement,
  view: ScriptView,
  actions: KeyActions,
): void {
  list.addEventListener("keydown", (ev: KeyboardEvent) => {
    if (ev.defaultPrevented) return;
    switch (ev.key) {
      case "ArrowDown":
        view.moveLine(1);
        break;
      case "ArrowUp":
        view.moveLine(-1);
        break;
      case "ArrowRight":
        view.moveWord(1, ev.shiftKey);
        break;
      case "ArrowLeft":
        view.moveWord(-1, ev.shiftKey);
        break;
      case "h":
      case "H":
        view.nextHeading();
        break;
      case "Backspace":
      case "Delete":
        actions.deleteSelection();
        break;
      case "i":
      case "I":
        actions.inspect();
        break;
      case " ":
        actions.togglePlay();
        break;
      case "Escape":
        view.clearWordSelection();
        break;
      default:
        return;
    }
    ev.preventDefault();
  });
}

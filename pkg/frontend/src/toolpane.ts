export interface ToolCallbacks {
  onTrim(start: number, end: number): void;
  onSpeed(factor: number): void;
  onUndo(): void;
}

function labeledNumber(id: string, label: string, step: string): [HTMLLabelElement, HTMLInputElement] {
  const lab = document.createElement("label");
  lab.htmlFor = id;
  lab.textContent = label;
  const input = document.createElement("input");
  input.type = "number";
  input.id = id;
  input.step = step;
  return [lab, input];
}

/**
 * Trim and speed forms plus undo.  Both forms act on the line the cursor
 * is on; the app fills in the target and revision.
 */
export class ToolPane {
  readonly trimStart: HTMLInputElement;
  readonly trimEnd: HTMLInputElement;
  readonly speedFactor: HTMLInputElement;
  readonly undoButton: HTMLButtonElement;
  private buttons: HTMLButtonElement[] = [];

  constructor(container: HTMLElement, cb: ToolCallbacks) {
    container.setAttribute("aria-label", "Tools");

    const trimForm = document.createElement("form");
    trimForm.setAttribute("aria-label", "Trim selected line");
    const [sl, si] = labeledNumber("trim-start", "Trim start (seconds)", "0.001");
    const [el, ei] = labeledNumber("trim-end", "Trim end (seconds)", "0.001");
    this.trimStart = si;
    this.trimEnd = ei;
    const trimBtn = document.createElement("button");
    trimBtn.type = "submit";
    trimBtn.textContent = "Trim";
    trimForm.append(sl, si, el, ei, trimBtn);
    trimForm.addEventListener("submit", (ev) => {
      ev.preventDefault();
      cb.onTrim(Number(si.value), Number(ei.value));
    });

    const speedForm = document.createElement("form");
    speedForm.setAttribute("aria-label", "Change speed of selected line");
    const [fl, fi] = labeledNumber("speed-factor", "Speed factor", "0.25");
    fi.min = "0.25";
    fi.max = "4";
    fi.value = "1";
    this.speedFactor = fi;
    const speedBtn = document.createElement("button");
    speedBtn.type = "submit";
    speedBtn.textContent = "Set speed";
    speedForm.append(fl, fi, speedBtn);
    speedForm.addEventListener("submit", (ev) => {
      ev.preventDefault();
      cb.onSpeed(Number(fi.value));
    });

    this.undoButton = document.createElement("button");
    this.undoButton.type = "button";
    this.undoButton.textContent = "Undo";
    this.undoButton.setAttribute("aria-label", "Undo last edit");
    this.undoButton.addEventListener("click", () => cb.onUndo());

    container.append(trimForm, speedForm, this.undoButton);
    this.buttons = [trimBtn, speedBtn, this.undoButton];
  }

  /** Grey the mutating controls out while an edit is in flight. */
  setBusy(busy: boolean): void {
    for (const b of this.buttons) {
      b.disabled = busy;
    }
  }
}

import type { Block, ScriptDoc } from "./types.js";
import { ERROR_LABELS } from "./types.js";

export interface ScriptViewCallbacks {
  /** User moved the cursor to a block (focus, click, or key). */
  onCursor(blockId: string): void;
}

interface WordSel {
  index: number;
  anchor: number | null;
}

/**
 * The script as a line-per-row list.  Scene headings render as real
 * headings so assistive tech can jump between them; error-annotated rows
 * carry a visible "Camera blur" style label; pause rows read out their
 * duration.  The view never mutates the document, it only renders what
 * the service sent and tracks which row and word the user is on.
 */
export class ScriptView {
  private rows = new Map<string, HTMLLIElement>();
  private order: string[] = [];
  private headings: string[] = [];
  private doc: ScriptDoc | null = null;
  private cursorId: string | null = null;
  private word: WordSel = { index: 0, anchor: null };

  constructor(
    private list: HTMLElement,
    private cb: ScriptViewCallbacks,
  ) {
    list.classList.add("script-view");
    list.setAttribute("aria-label", "Script");
  }

  render(doc: ScriptDoc, cursorId: string | null): void {
    this.doc = doc;
    this.rows.clear();
    this.order = [];
    this.headings = [];
    this.list.textContent = "";
    for (const block of doc.blocks) {
      const row = this.buildRow(block);
      this.rows.set(block.id, row);
      this.order.push(block.id);
      if (block.kind === "SceneHeading") {
        this.headings.push(block.id);
      }
      this.list.appendChild(row);
    }
    this.cursorId = cursorId !== null && this.rows.has(cursorId) ? cursorId : null;
    this.word = { index: 0, anchor: null };
    this.applyCursorClasses();
  }

  private buildRow(block: Block): HTMLLIElement {
    const row = document.createElement("li");
    row.dataset.blockId = block.id;
    row.tabIndex = -1;
    row.className = `block block-${block.kind.toLowerCase()}`;
    if (block.kind === "SceneHeading") {
      const h = document.createElement("h2");
      h.textContent = block.text || "Untitled scene";
      row.appendChild(h);
    } else if (block.kind === "Pause") {
      const span = document.createElement("span");
      span.textContent = `Pause: ${block.text}`;
      row.appendChild(span);
    } else {
      this.buildWords(row, block);
    }
    for (const err of block.errors) {
      const badge = document.createElement("span");
      badge.className = "error-badge";
      badge.textContent = ERROR_LABELS[err.kind];
      row.appendChild(badge);
      row.classList.add("has-error");
    }
    row.addEventListener("focus", () => {
      if (this.cursorId !== block.id) {
        this.setCursor(block.id);
      }
      this.cb.onCursor(block.id);
    });
    row.addEventListener("click", () => this.focusBlock(block.id));
    return row;
  }

  private buildWords(row: HTMLLIElement, block: Block): void {
    const mark = block.errors.length > 0 ? document.createElement("mark") : row;
    block.words.forEach((w, i) => {
      if (i > 0) mark.appendChild(document.createTextNode(" "));
      const span = document.createElement("span");
      span.className = "word";
      span.dataset.wordIndex = String(i);
      span.textContent = w.text;
      mark.appendChild(span);
    });
    if (mark !== row) row.appendChild(mark);
  }

  /** Ordered block ids as rendered. */
  blockIds(): string[] {
    return [...this.order];
  }

  headingIds(): string[] {
    return [...this.headings];
  }

  rowFor(blockId: string): HTMLLIElement | null {
    return this.rows.get(blockId) ?? null;
  }

  currentId(): string | null {
    return this.cursorId;
  }

  currentBlock(): Block | null {
    if (this.doc === null || this.cursorId === null) return null;
    return this.doc.blocks.find((b) => b.id === this.cursorId) ?? null;
  }

  setCursor(blockId: string | null): void {
    this.cursorId = blockId !== null && this.rows.has(blockId) ? blockId : null;
    this.word = { index: 0, anchor: null };
    this.applyCursorClasses();
  }

  focusBlock(blockId: string): void {
    const row = this.rows.get(blockId);
    if (!row) return;
    this.setCursor(blockId);
    row.focus();
    this.cb.onCursor(blockId);
  }

  moveLine(delta: number): void {
    if (this.order.length === 0) return;
    const at = this.cursorId === null ? -1 : this.order.indexOf(this.cursorId);
    const next = at === -1 ? 0 : Math.min(this.order.length - 1, Math.max(0, at + delta));
    this.focusBlock(this.order[next]);
  }

  /** Jump to the next scene heading, wrapping past the end. */
  nextHeading(): void {
    if (this.headings.length === 0) return;
    const at = this.cursorId === null ? -1 : this.order.indexOf(this.cursorId);
    for (const id of this.headings) {
      if (this.order.indexOf(id) > at) {
        this.focusBlock(id);
        return;
      }
    }
    this.focusBlock(this.headings[0]);
  }

  moveWord(delta: number, extend: boolean): void {
    const block = this.currentBlock();
    if (!block || block.words.length === 0) return;
    if (extend && this.word.anchor === null) {
      this.word.anchor = this.word.index;
    }
    if (!extend) {
      this.word.anchor = null;
    }
    this.word.index = Math.min(
      block.words.length - 1,
      Math.max(0, this.word.index + delta),
    );
    this.applyWordClasses();
  }

  /** Inclusive [first, last] when a word range is selected, else null. */
  selectedWordRange(): [number, number] | null {
    if (this.word.anchor === null) return null;
    const a = this.word.anchor;
    const b = this.word.index;
    return [Math.min(a, b), Math.max(a, b)];
  }

  clearWordSelection(): void {
    this.word.anchor = null;
    this.applyWordClasses();
  }

  private applyCursorClasses(): void {
    for (const [id, row] of this.rows) {
      const isCursor = id === this.cursorId;
      row.tabIndex = isCursor ? 0 : -1;
      row.classList.toggle("cursor", isCursor);
      if (isCursor) {
        row.setAttribute("aria-current", "true");
      } else {
        row.removeAttribute("aria-current");
      }
    }
    if (this.cursorId === null && this.order.length > 0) {
      // keep the list reachable by tab even before any selection
      const first = this.rows.get(this.order[0]);
      if (first) first.tabIndex = 0;
    }
    this.applyWordClasses();
  }

  private applyWordClasses(): void {
    if (this.cursorId === null) return;
    const row = this.rows.get(this.cursorId);
    if (!row) return;
    const range = this.selectedWordRange();
    row.querySelectorAll<HTMLElement>("span.word").forEach((span) => {
      const i = Number(span.dataset.wordIndex);
      span.classList.toggle("word-cursor", i === this.word.index);
      span.classList.toggle(
        "word-selected",
        range !== null && i >= range[0] && i <= range[1],
      );
    });
  }
}

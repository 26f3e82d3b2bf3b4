import type { Block, ScriptDoc } from "./types.js";

/**
 * Per-tab session state.  The UI never edits the document locally; this
 * only tracks where the user is looking and which revision they saw last.
 */
export interface UiSession {
  revision: number;
  cursorBlockId: string | null;
  cursorWord: number;
  playhead: number;
  pendingOp: boolean;
}

export function createSession(): UiSession {
  return {
    revision: 0,
    cursorBlockId: null,
    cursorWord: 0,
    playhead: 0,
    pendingOp: false,
  };
}

export function blockById(doc: ScriptDoc, id: string | null): Block | null {
  if (id === null) return null;
  return doc.blocks.find((b) => b.id === id) ?? null;
}

/** Drop the cursor if its block vanished in the latest revision. */
export function reconcileCursor(session: UiSession, doc: ScriptDoc): void {
  const block = blockById(doc, session.cursorBlockId);
  if (block === null) {
    session.cursorBlockId = null;
    session.cursorWord = 0;
    return;
  }
  if (session.cursorWord >= block.words.length) {
    session.cursorWord = Math.max(0, block.words.length - 1);
  }
}

/** Block whose span contains t, preferring speech over the enclosing scene. */
export function blockAtTime(doc: ScriptDoc, t: number): Block | null {
  let scene: Block | null = null;
  for (const b of doc.blocks) {
    if (b.start <= t && t < b.end) {
      if (b.kind === "SceneHeading") {
        scene = b;
      } else {
        return b;
      }
    }
  }
  return scene;
}

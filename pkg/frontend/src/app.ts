import type { Api } from "./api.js";
import type { Earcons } from "./earcons.js";
import type { Block, EditOp, OutlineItem, ScriptDoc, SearchHit } from "./types.js";
import { OutlinePane } from "./outline.js";
import { ScriptView } from "./script_view.js";
import { SearchPane } from "./searchpane.js";
import { ToolPane } from "./toolpane.js";
import { VideoPane } from "./videopane.js";
import { bindScriptKeys } from "./keyboard.js";
import { blockAtTime, blockById, createSession, reconcileCursor, UiSession } from "./state.js";

export interface App {
  session: UiSession;
  view: ScriptView;
  video: VideoPane;
  tools: ToolPane;
  search: SearchPane;
  alerts: HTMLElement;
  refresh(): Promise<void>;
  dispose(): void;
}

function section(root: HTMLElement, tag: string, cls: string): HTMLElement {
  const el = document.createElement(tag);
  el.className = cls;
  root.appendChild(el);
  return el;
}

/**
 * Glue between the panes and the service.  All edit math lives on the
 * server: a successful POST only flips the pending flag, and the script
 * re-renders when the event stream announces the new revision.  A 409
 * surfaces as a visible conflict message with a reload control; nothing
 * is retried behind the user's back.
 */
export function createApp(root: HTMLElement, api: Api, earcons: Earcons): App {
  const session = createSession();
  let doc: ScriptDoc = { revision: 0, source_duration: 0, blocks: [], errors: [] };

  const videoEl = section(root, "section", "pane pane-video");
  const scriptEl = section(root, "section", "pane pane-script");
  const outlineEl = section(root, "nav", "pane pane-outline");
  const toolsEl = section(root, "section", "pane pane-tools");
  const searchEl = section(root, "section", "pane pane-search");
  scriptEl.setAttribute("aria-label", "Script editor");
  searchEl.setAttribute("aria-label", "Search");

  const alerts = document.createElement("div");
  alerts.setAttribute("role", "alert");
  alerts.className = "alerts";
  root.appendChild(alerts);

  const list = document.createElement("ul");
  scriptEl.appendChild(list);

  const view = new ScriptView(list, {
    onCursor(blockId) {
      session.cursorBlockId = blockId;
      const block = blockById(doc, blockId);
      if (block) {
        video.seek(block.start);
        session.playhead = video.time();
      }
    },
  });

  const video = new VideoPane(videoEl, earcons, {
    onPlayhead(t) {
      session.playhead = t;
      const here = blockAtTime(doc, t);
      if (here && here.id !== session.cursorBlockId) {
        session.cursorBlockId = here.id;
        view.setCursor(here.id);
      }
    },
    onInspect(t) {
      void inspectAt(t);
    },
  });

  const outline = new OutlinePane(outlineEl, {
    onJump(item: OutlineItem) {
      view.focusBlock(item.target_block_id);
      video.seek(item.time);
      session.playhead = item.time;
    },
  });

  const tools = new ToolPane(toolsEl, {
    onTrim(start, end) {
      const block = needTarget();
      if (!block) return;
      void submit({
        kind: "Trim",
        revision: session.revision,
        block_id: block.id,
        start,
        end,
      });
    },
    onSpeed(factor) {
      const block = needTarget();
      if (!block) return;
      void submit({
        kind: "Speed",
        revision: session.revision,
        block_id: block.id,
        factor,
      });
    },
    onUndo() {
      void submitUndo();
    },
  });

  const search = new SearchPane(searchEl, {
    runSearch(q) {
      return api.search(q);
    },
    onJump(hit: SearchHit) {
      view.focusBlock(hit.target_block_id);
      video.seek(hit.time);
      session.playhead = hit.time;
    },
  });

  bindScriptKeys(list, view, {
    deleteSelection() {
      void deleteAtCursor();
    },
    inspect() {
      video.inspect();
    },
    togglePlay() {
      video.toggle();
    },
  });

  function needTarget(): Block | null {
    const block = view.currentBlock();
    if (!block) {
      video.speak("Select a line first");
      return null;
    }
    return block;
  }

  async function inspectAt(t: number): Promise<void> {
    try {
      const labels = await api.inspect(t);
      video.speak(labels.length > 0 ? labels.join(", ") : "Nothing recognized");
    } catch {
      video.speak("Nothing known at this time");
    }
  }

  async function deleteAtCursor(): Promise<void> {
    const block = needTarget();
    if (!block) return;
    const range = view.selectedWordRange();
    if (range !== null && block.kind === "Narration") {
      await submit({
        kind: "DeleteWords",
        revision: session.revision,
        block_id: block.id,
        first_word: range[0],
        last_word: range[1],
      });
      return;
    }
    await submit({
      kind: "DeleteBlocks",
      revision: session.revision,
      targets: [block.id],
    });
  }

  function showConflict(expected: number | undefined, got: number | undefined): void {
    alerts.textContent = "";
    const msg = document.createElement("span");
    msg.textContent =
      `Edit rejected: the script changed while you were working` +
      (expected !== undefined && got !== undefined
        ? ` (you saw revision ${got}, the service is at ${expected}).`
        : ".") +
      " Reload the script, then try the edit again.";
    const reload = document.createElement("button");
    reload.type = "button";
    reload.textContent = "Reload script";
    reload.setAttribute("aria-label", "Reload script");
    reload.addEventListener("click", () => {
      alerts.textContent = "";
      void refresh();
    });
    alerts.append(msg, reload);
  }

  async function submit(op: EditOp): Promise<void> {
    if (session.pendingOp) {
      video.speak("Still applying the previous edit");
      return;
    }
    session.pendingOp = true;
    tools.setBusy(true);
    try {
      const result = await api.postEdit(op);
      if (!result.ok) {
        if (result.status === 409) {
          showConflict(result.expected, result.got);
        } else {
          alerts.textContent = `Edit failed: ${result.detail}`;
        }
        return;
      }
      view.clearWordSelection();
      // the event stream announces the revision; rendering waits for it
    } finally {
      session.pendingOp = false;
      tools.setBusy(false);
    }
  }

  async function submitUndo(): Promise<void> {
    if (session.pendingOp) {
      video.speak("Still applying the previous edit");
      return;
    }
    session.pendingOp = true;
    tools.setBusy(true);
    try {
      const result = await api.undo(session.revision);
      if (!result.ok) {
        if (result.status === 409) {
          showConflict(result.expected, result.got);
        } else {
          alerts.textContent = `Undo failed: ${result.detail}`;
        }
      }
    } finally {
      session.pendingOp = false;
      tools.setBusy(false);
    }
  }

  async function refresh(): Promise<void> {
    try {
      const [nextDoc, items] = await Promise.all([api.getScript(), api.getOutline()]);
      doc = nextDoc;
      session.revision = nextDoc.revision;
      reconcileCursor(session, nextDoc);
      view.render(nextDoc, session.cursorBlockId);
      outline.render(items);
      video.setDoc(nextDoc);
    } catch {
      alerts.textContent = "Could not refresh the script; showing the previous version.";
    }
  }

  const unsubscribe = api.events((revision) => {
    if (revision !== session.revision) {
      void refresh();
    }
  });

  return {
    session,
    view,
    video,
    tools,
    search,
    alerts,
    refresh,
    dispose() {
      unsubscribe();
      video.pause();
    },
  };
}

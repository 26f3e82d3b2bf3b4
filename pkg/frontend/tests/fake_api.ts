import type { Api, EditResult } from "../src/api.js";
import type {
  Block,
  EditOp,
  OutlineItem,
  ScriptDoc,
  SearchHit,
} from "../src/types.js";

const CAPTIONS = [
  "Kitchen intro",
  "Pantry tour",
  "Mixing",
  "Garden",
  "Hallway",
  "Dining",
  "Cooking",
  "Serving",
];

function narrationWords(text: string, start: number) {
  return text.split(" ").map((w, i) => ({
    text: w,
    start: start + i * 0.55,
    end: start + i * 0.55 + 0.35,
  }));
}

/** Eight-scene document with one blurred line, one moving line and a dark pause. */
export function makeDoc(): { doc: ScriptDoc; outline: OutlineItem[] } {
  const blocks: Block[] = [];
  const outline: OutlineItem[] = [];
  for (let i = 0; i < CAPTIONS.length; i++) {
    const t0 = i * 60;
    blocks.push({
      id: `h${i}`,
      kind: "SceneHeading",
      start: t0,
      end: t0 + 60,
      text: CAPTIONS[i],
      errors: [],
      words: [],
    });
    outline.push({ kind: "Scene", time: t0, label: CAPTIONS[i], target_block_id: `h${i}` });
    const text = `They talk about scene ${i}.`;
    const words = narrationWords(text, t0 + 1);
    blocks.push({
      id: `n${i}`,
      kind: "Narration",
      start: t0 + 1,
      end: words[words.length - 1].end,
      text,
      errors: [],
      words,
    });
  }
  blocks[3].errors.push({ kind: "Blur", start: 61.2, end: 63.2 });
  blocks[7].errors.push({ kind: "CameraMoving", start: 181.5, end: 183.0 });
  const pause: Block = {
    id: "p1",
    kind: "Pause",
    start: 110.0,
    end: 122.5,
    text: "12.5 seconds",
    errors: [{ kind: "Dark", start: 112.0, end: 118.0 }],
    words: [],
  };
  blocks.splice(4, 0, pause);
  outline.splice(2, 0, {
    kind: "Pause",
    time: 110.0,
    label: "Pause 12.5 seconds",
    target_block_id: "p1",
  });
  outline.push({ kind: "Error", time: 61.2, label: "Camera blur in 1:01", target_block_id: "n1" });
  const doc: ScriptDoc = {
    revision: 0,
    source_duration: 480,
    blocks,
    errors: [
      { kind: "Blur", start: 61.2, end: 63.2 },
      { kind: "Dark", start: 112.0, end: 118.0 },
      { kind: "CameraMoving", start: 181.5, end: 183.0 },
    ],
  };
  return { doc, outline };
}

export class FakeApi implements Api {
  doc: ScriptDoc;
  outline: OutlineItem[];
  hitsByQuery: Record<string, SearchHit[]> = {};
  inspectLabels: string[] = ["cereal box", "snacks", "shelf"];
  posted: EditOp[] = [];
  undoCalls: number[] = [];
  failNext: EditResult | null = null;
  /** Pending postEdit resolvers when deferMutations is on. */
  private deferred: Array<() => void> = [];
  deferMutations = false;
  private snapshots: ScriptDoc[] = [];
  private queued: number[] = [];
  private subscribers: Array<(revision: number) => void> = [];

  constructor() {
    const { doc, outline } = makeDoc();
    this.doc = doc;
    this.outline = outline;
  }

  getScript(): Promise<ScriptDoc> {
    return Promise.resolve(structuredClone(this.doc));
  }

  getOutline(): Promise<OutlineItem[]> {
    const ids = new Set(this.doc.blocks.map((b) => b.id));
    return Promise.resolve(
      structuredClone(this.outline.filter((o) => ids.has(o.target_block_id))),
    );
  }

  search(q: string): Promise<SearchHit[]> {
    return Promise.resolve(structuredClone(this.hitsByQuery[q] ?? []));
  }

  inspect(_t: number): Promise<string[]> {
    return Promise.resolve([...this.inspectLabels]);
  }

  async postEdit(op: EditOp): Promise<EditResult> {
    this.posted.push(structuredClone(op));
    if (this.deferMutations) {
      await new Promise<void>((resolve) => this.deferred.push(resolve));
    }
    if (this.failNext !== null) {
      const result = this.failNext;
      this.failNext = null;
      return result;
    }
    if (op.revision !== this.doc.revision) {
      return {
        ok: false,
        status: 409,
        detail: `revision conflict: document at ${this.doc.revision}, op against ${op.revision}`,
        expected: this.doc.revision,
        got: op.revision,
      };
    }
    this.snapshots.push(structuredClone(this.doc));
    this.applyOp(op);
    this.doc.revision += 1;
    this.queued.push(this.doc.revision);
    return { ok: true, revision: this.doc.revision };
  }

  private applyOp(op: EditOp): void {
    if (op.kind === "DeleteBlocks") {
      const gone = new Set(op.targets);
      this.doc.blocks = this.doc.blocks.filter((b) => !gone.has(b.id));
    } else if (op.kind === "DeleteWords") {
      const block = this.doc.blocks.find((b) => b.id === op.block_id);
      if (block) {
        block.words.splice(op.first_word, op.last_word - op.first_word + 1);
        block.text = block.words.map((w) => w.text).join(" ");
      }
    }
    // Trim and Speed have no visible block shape to update here
  }

  undo(revision: number): Promise<EditResult> {
    this.undoCalls.push(revision);
    if (revision !== this.doc.revision) {
      return Promise.resolve({
        ok: false,
        status: 409,
        detail: "revision conflict",
        expected: this.doc.revision,
        got: revision,
      });
    }
    const prev = this.snapshots.pop();
    if (!prev) {
      return Promise.resolve({ ok: false, status: 422, detail: "nothing to undo" });
    }
    prev.revision = this.doc.revision + 1;
    this.doc = prev;
    this.queued.push(this.doc.revision);
    return Promise.resolve({ ok: true, revision: this.doc.revision });
  }

  events(onRevision: (revision: number) => void): () => void {
    this.subscribers.push(onRevision);
    return () => {
      this.subscribers = this.subscribers.filter((s) => s !== onRevision);
    };
  }

  /** Deliver every queued revision announcement, in order. */
  flushEvents(): void {
    const pending = this.queued.splice(0);
    for (const revision of pending) {
      for (const sub of [...this.subscribers]) {
        sub(revision);
      }
    }
  }

  /** Let deferred postEdit calls continue. */
  releaseMutations(): void {
    const waiting = this.deferred.splice(0);
    for (const resolve of waiting) resolve();
  }

  /** Another client edited the document; this tab hears nothing. */
  externalBump(): void {
    this.doc.revision += 1;
  }
}

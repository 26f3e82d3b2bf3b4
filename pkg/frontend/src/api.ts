import type { EditOp, OutlineItem, ScriptDoc, SearchHit } from "./types.js";

export type EditResult =
  | { ok: true; revision: number }
  | { ok: false; status: number; detail: string; expected?: number; got?: number };

/**
 * Everything the UI knows how to ask the service.  Tests substitute an
 * in-memory fake; the browser entry point uses HttpApi below.
 */
export interface Api {
  getScript(): Promise<ScriptDoc>;
  getOutline(): Promise<OutlineItem[]>;
  search(q: string): Promise<SearchHit[]>;
  inspect(t: number): Promise<string[]>;
  postEdit(op: EditOp): Promise<EditResult>;
  undo(revision: number): Promise<EditResult>;
  /** Subscribe to revision announcements. Returns an unsubscribe thunk. */
  events(onRevision: (revision: number) => void): () => void;
}

async function getJson<T>(base: string, path: string): Promise<T> {
  const resp = await fetch(base + path);
  if (!resp.ok) {
    throw new Error(`GET ${path} failed: ${resp.status}`);
  }
  return (await resp.json()) as T;
}

async function postJson(base: string, path: string, body: unknown): Promise<EditResult> {
  const resp = await fetch(base + path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const data = await resp.json().catch(() => ({}));
  if (resp.ok) {
    return { ok: true, revision: data.revision as number };
  }
  return {
    ok: false,
    status: resp.status,
    detail: typeof data.detail === "string" ? data.detail : `HTTP ${resp.status}`,
    expected: data.expected,
    got: data.got,
  };
}

export class HttpApi implements Api {
  constructor(private base: string = "") {}

  getScript(): Promise<ScriptDoc> {
    return getJson(this.base, "/script");
  }

  getOutline(): Promise<OutlineItem[]> {
    return getJson(this.base, "/outline");
  }

  search(q: string): Promise<SearchHit[]> {
    return getJson(this.base, `/search?q=${encodeURIComponent(q)}`);
  }

  inspect(t: number): Promise<string[]> {
    return getJson(this.base, `/inspect?t=${encodeURIComponent(t)}`);
  }

  postEdit(op: EditOp): Promise<EditResult> {
    return postJson(this.base, "/edits", op);
  }

  undo(revision: number): Promise<EditResult> {
    return postJson(this.base, "/undo", { revision });
  }

  events(onRevision: (revision: number) => void): () => void {
    const source = new EventSource(this.base + "/events");
    source.onmessage = (ev) => {
      try {
        const data = JSON.parse(ev.data);
        if (typeof data.revision === "number") {
          onRevision(data.revision);
        }
      } catch {
        // keep-alive comments and malformed lines are ignored
      }
    };
    return () => source.close();
  }
}

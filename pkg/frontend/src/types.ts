/** Wire types mirroring the editing service's JSON payloads. */

export type BlockKind = "SceneHeading" | "Narration" | "Pause";
export type ErrorKind = "Dark" | "Blur" | "CameraMoving";

export interface Word {
  text: string;
  start: number;
  end: number;
}

export interface ErrorSpan {
  kind: ErrorKind;
  start: number;
  end: number;
}

export interface Block {
  id: string;
  kind: BlockKind;
  start: number;
  end: number;
  text: string;
  errors: ErrorSpan[];
  words: Word[];
}

export interface ScriptDoc {
  revision: number;
  source_duration: number;
  blocks: Block[];
  errors: ErrorSpan[];
}

export interface OutlineItem {
  kind: "Scene" | "Error" | "Pause";
  time: number;
  label: string;
  target_block_id: string;
}

export interface SearchHit {
  kind: "Speech" | "Object" | "Error" | "Pause";
  time: number;
  snippet: string;
  target_block_id: string;
}

export type EditOp =
  | { kind: "DeleteBlocks"; revision: number; targets: string[] }
  | {
      kind: "DeleteWords";
      revision: number;
      block_id: string;
      first_word: number;
      last_word: number;
    }
  | { kind: "Trim"; revision: number; block_id: string; start: number; end: number }
  | { kind: "Speed"; revision: number; block_id: string; factor: number };

export const ERROR_LABELS: Record<ErrorKind, string> = {
  Dark: "Bad lighting",
  Blur: "Camera blur",
  CameraMoving: "Camera moving",
};

/** Seconds to M:SS, matching the service's outline labels. */
export function formatTime(t: number): string {
  const whole = Math.floor(t);
  const m = Math.floor(whole / 60);
  const s = whole % 60;
  return `${m}:${String(s).padStart(2, "0")}`;
}

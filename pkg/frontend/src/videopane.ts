import type { Earcons } from "./earcons.js";
import type { ErrorSpan, ScriptDoc } from "./types.js";
import { ERROR_LABELS, formatTime } from "./types.js";

export interface VideoCallbacks {
  /** Playhead moved during playback (not via seek). */
  onPlayhead(t: number): void;
  onInspect(t: number): void;
}

/**
 * Playback stand-in: a clock, transport button and a polite live region.
 * Scene changes get a page-flip cue, the start of a quality-error span
 * gets a warning cue plus its spoken label.  There is deliberately no
 * timeline scrubber; navigation happens through the script.
 */
export class VideoPane {
  readonly playButton: HTMLButtonElement;
  readonly inspectButton: HTMLButtonElement;
  readonly clock: HTMLOutputElement;
  readonly announcer: HTMLElement;
  private playhead = 0;
  private playing = false;
  private timer: ReturnType<typeof setInterval> | null = null;
  private sceneStarts: number[] = [];
  private errorSpans: ErrorSpan[] = [];
  private duration = 0;

  constructor(
    container: HTMLElement,
    private earcons: Earcons,
    private cb: VideoCallbacks,
  ) {
    container.setAttribute("aria-label", "Video");

    this.clock = document.createElement("output");
    this.clock.setAttribute("aria-label", "Playhead");
    this.clock.textContent = formatTime(0);

    this.playButton = document.createElement("button");
    this.playButton.type = "button";
    this.playButton.textContent = "Play";
    this.playButton.setAttribute("aria-label", "Play");
    this.playButton.addEventListener("click", () => this.toggle());

    this.inspectButton = document.createElement("button");
    this.inspectButton.type = "button";
    this.inspectButton.textContent = "What is on screen?";
    this.inspectButton.setAttribute("aria-label", "Describe objects on screen");
    this.inspectButton.addEventListener("click", () => this.inspect());

    this.announcer = document.createElement("p");
    this.announcer.setAttribute("role", "status");
    this.announcer.setAttribute("aria-live", "polite");
    this.announcer.className = "announcer";

    container.append(this.playButton, this.clock, this.inspectButton, this.announcer);
  }

  setDoc(doc: ScriptDoc): void {
    this.sceneStarts = doc.blocks
      .filter((b) => b.kind === "SceneHeading" && b.start > 0)
      .map((b) => b.start);
    this.errorSpans = doc.errors;
    this.duration = doc.source_duration;
  }

  time(): number {
    return this.playhead;
  }

  isPlaying(): boolean {
    return this.playing;
  }

  seek(t: number): void {
    this.playhead = Math.min(this.duration, Math.max(0, t));
    this.clock.textContent = formatTime(this.playhead);
  }

  /** Advance the clock, sounding cues for anything crossed on the way. */
  tick(dt: number): void {
    const from = this.playhead;
    const to = Math.min(this.duration, from + dt);
    for (const s of this.sceneStarts) {
      if (from < s && s <= to) {
        this.earcons.sceneChange();
      }
    }
    for (const span of this.errorSpans) {
      if (from < span.start && span.start <= to) {
        this.earcons.warning();
        this.speak(ERROR_LABELS[span.kind]);
      }
    }
    this.playhead = to;
    this.clock.textContent = formatTime(to);
    this.cb.onPlayhead(to);
    if (to >= this.duration) {
      this.pause();
    }
  }

  toggle(): void {
    if (this.playing) {
      this.pause();
    } else {
      this.play();
    }
  }

  play(): void {
    if (this.playing) return;
    this.playing = true;
    this.playButton.textContent = "Pause";
    this.playButton.setAttribute("aria-label", "Pause");
    this.timer = setInterval(() => this.tick(0.25), 250);
  }

  pause(): void {
    this.playing = false;
    this.playButton.textContent = "Play";
    this.playButton.setAttribute("aria-label", "Play");
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  /** Pause and ask what objects are visible right now. */
  inspect(): void {
    this.pause();
    this.cb.onInspect(this.playhead);
  }

  speak(text: string): void {
    this.announcer.textContent = text;
  }
}

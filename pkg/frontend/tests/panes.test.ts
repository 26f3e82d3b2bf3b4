import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { accName, mount, rowFor, settle, unmount, type Mounted } from "./helpers.js";

describe("tool pane", () => {
  let m: Mounted;

  beforeEach(async () => {
    m = await mount();
  });

  afterEach(() => {
    unmount(m);
  });

  it("posts a speed change for the selected line", async () => {
    m.app.view.focusBlock("n4");
    m.app.tools.speedFactor.value = "2";
    m.app.tools.speedFactor.form!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await settle();
    expect(m.api.posted).toEqual([
      { kind: "Speed", revision: 0, block_id: "n4", factor: 2 },
    ]);
  });

  it("posts a trim for the selected line", async () => {
    m.app.view.focusBlock("p1");
    m.app.tools.trimStart.value = "112";
    m.app.tools.trimEnd.value = "118";
    m.app.tools.trimStart.form!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await settle();
    expect(m.api.posted).toEqual([
      { kind: "Trim", revision: 0, block_id: "p1", start: 112, end: 118 },
    ]);
  });

  it("refuses tool actions without a selected line", async () => {
    m.app.tools.speedFactor.form!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await settle();
    expect(m.api.posted).toEqual([]);
    expect(m.app.video.announcer.textContent).toContain("Select a line");
  });

  it("undoes the last edit and re-renders on the event", async () => {
    m.app.view.focusBlock("n2");
    const list = m.root.querySelector("ul.script-view")!;
    list.dispatchEvent(
      new KeyboardEvent("keydown", { key: "Backspace", bubbles: true, cancelable: true }),
    );
    await settle();
    m.api.flushEvents();
    await settle();
    expect(rowFor(m.root, "n2")).toBeNull();

    m.app.tools.undoButton.click();
    await settle();
    expect(m.api.undoCalls).toEqual([1]);
    m.api.flushEvents();
    await settle();
    expect(rowFor(m.root, "n2")).not.toBeNull();
    expect(m.app.session.revision).toBe(2);
  });

  it("disables mutating buttons while an edit is in flight", async () => {
    m.api.deferMutations = true;
    m.app.view.focusBlock("n0");
    m.app.tools.speedFactor.value = "2";
    m.app.tools.speedFactor.form!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    expect(m.app.tools.undoButton.disabled).toBe(true);
    m.api.releaseMutations();
    await settle();
    expect(m.app.tools.undoButton.disabled).toBe(false);
  });
});

describe("video pane cues", () => {
  let m: Mounted;

  beforeEach(async () => {
    m = await mount();
  });

  afterEach(() => {
    unmount(m);
  });

  it("plays a page-flip cue when playback crosses a scene change", () => {
    m.app.video.seek(55);
    m.app.video.tick(6);
    expect(m.earcons.scenes).toBe(1);
    expect(m.earcons.warnings).toBe(0);
  });

  it("warns and speaks the label when an error span starts", () => {
    m.app.video.seek(60);
    m.app.video.tick(5);
    expect(m.earcons.warnings).toBe(1);
    expect(m.app.video.announcer.textContent).toBe("Camera blur");
  });

  it("stays quiet when seeking instead of playing", () => {
    m.app.video.seek(200);
    expect(m.earcons.scenes).toBe(0);
    expect(m.earcons.warnings).toBe(0);
  });
});

describe("search pane", () => {
  let m: Mounted;

  beforeEach(async () => {
    m = await mount();
    m.api.hitsByQuery["pantry"] = [
      { kind: "Speech", time: 61.0, snippet: "talk about scene 1", target_block_id: "n1" },
      { kind: "Object", time: 110.0, snippet: "cereal box (Pantry tour)", target_block_id: "p1" },
    ];
  });

  afterEach(() => {
    unmount(m);
  });

  async function runSearch(q: string): Promise<void> {
    m.app.search.input.value = q;
    m.app.search.input.form!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await settle();
  }

  it("lists hits as labelled jump buttons", async () => {
    await runSearch("pantry");
    const buttons = m.root.querySelectorAll<HTMLButtonElement>(".search-results button");
    expect(buttons.length).toBe(2);
    expect(accName(buttons[0])).toBe("Speech hit: talk about scene 1 at 1:01");
    expect(accName(buttons[1])).toBe("Object hit: cereal box (Pantry tour) at 1:50");
  });

  it("jumps cursor and playhead to an activated hit", async () => {
    await runSearch("pantry");
    const buttons = m.root.querySelectorAll<HTMLButtonElement>(".search-results button");
    buttons[1].click();
    await settle();
    expect(document.activeElement).toBe(rowFor(m.root, "p1"));
    expect(m.app.video.time()).toBe(110.0);
  });

  it("says so when nothing matches", async () => {
    await runSearch("zeppelin");
    const results = m.root.querySelector(".search-results")!;
    expect(results.textContent).toContain("No matches");
  });
});

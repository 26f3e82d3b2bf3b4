import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { accName, mount, pressKey, rowFor, settle, unmount, type Mounted } from "./helpers.js";

describe("conflicts and in-flight edits", () => {
  let m: Mounted;
  let list: HTMLElement;

  beforeEach(async () => {
    m = await mount();
    list = m.root.querySelector("ul.script-view")!;
  });

  afterEach(() => {
    unmount(m);
  });

  it("surfaces a stale-revision conflict and never retries on its own", async () => {
    m.api.externalBump();

    m.app.view.focusBlock("n2");
    pressKey(list, "Backspace");
    await settle();

    expect(m.api.posted.length).toBe(1);
    const alert = m.app.alerts;
    expect(alert.textContent).toContain("the script changed");
    expect(alert.textContent).toContain("revision 0");
    expect(alert.textContent).toContain("at 1");
    expect(alert.textContent).toContain("Reload");
    // offered, not forced: still exactly one POST after everything settles
    await settle();
    expect(m.api.posted.length).toBe(1);
    expect(rowFor(m.root, "n2")).not.toBeNull();
  });

  it("recovers through the reload control after a conflict", async () => {
    m.api.externalBump();
    m.app.view.focusBlock("n2");
    pressKey(list, "Backspace");
    await settle();

    const reload = m.app.alerts.querySelector("button")!;
    expect(accName(reload)).toBe("Reload script");
    reload.click();
    await settle();

    expect(m.app.alerts.textContent).toBe("");
    expect(m.app.session.revision).toBe(1);

    // the retry is the user's call; it succeeds against the fresh revision
    m.app.view.focusBlock("n2");
    pressKey(list, "Backspace");
    await settle();
    m.api.flushEvents();
    await settle();
    expect(rowFor(m.root, "n2")).toBeNull();
    expect(m.app.session.revision).toBe(2);
  });

  it("shows non-conflict rejections as plain failures", async () => {
    m.api.failNext = { ok: false, status: 422, detail: "unknown block" };
    m.app.view.focusBlock("n0");
    pressKey(list, "Backspace");
    await settle();
    expect(m.app.alerts.textContent).toBe("Edit failed: unknown block");
  });

  it("allows only one mutation in flight", async () => {
    m.api.deferMutations = true;
    m.app.view.focusBlock("n0");
    pressKey(list, "Backspace");
    pressKey(list, "Backspace");
    expect(m.app.session.pendingOp).toBe(true);
    expect(m.api.posted.length).toBe(1);
    expect(m.app.video.announcer.textContent).toContain("previous edit");

    m.api.releaseMutations();
    await settle();
    expect(m.app.session.pendingOp).toBe(false);
    expect(m.api.posted.length).toBe(1);
  });

  it("keeps the previous view when a refresh fails", async () => {
    const rows = m.root.querySelectorAll("li[data-block-id]").length;
    m.api.getScript = () => Promise.reject(new Error("boom"));
    await m.app.refresh();
    expect(m.app.alerts.textContent).toContain("Could not refresh");
    expect(m.root.querySelectorAll("li[data-block-id]").length).toBe(rows);
  });
});

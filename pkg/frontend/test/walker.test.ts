// @vitest-environment happy-dom
//
// Scripted browser test: drives the real UI modules inside a DOM
// against a live `saga serve` process over HTTP.

import { spawn, type ChildProcess } from "node:child_process";
import { existsSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { initWalker, type Walker } from "../src/app.js";
import { nodeDepths } from "../src/layout.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const REPO_ROOT = join(HERE, "..", "..");
const STORY = join(REPO_ROOT, "stories", "sealed_fate.saga");

let server: ChildProcess;
let base = "";
let walker: Walker;

function startServer(): Promise<string> {
  return new Promise((resolve, reject) => {
    server = spawn(
      "python3",
      ["-m", "saga.cli", "serve", STORY, "--port", "0"],
      { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
    );
    let out = "";
    server.stdout!.on("data", (chunk: Buffer) => {
      out += chunk.toString();
      const match = out.match(/http:\/\/([\d.]+):(\d+)\//);
      if (match) {
        resolve(`http://${match[1]}:${match[2]}`);
      }
    });
    server.on("error", reject);
    server.on("exit", (code) => reject(new Error(`server exited: ${code}`)));
    const timer = setTimeout(
      () => reject(new Error(`server never announced a port: ${out}`)),
      10_000,
    );
    timer.unref();
  });
}

async function waitFor(check: () => boolean, what: string): Promise<void> {
  const deadline = Date.now() + 5_000;
  while (Date.now() < deadline) {
    if (check()) {
      return;
    }
    await new Promise((r) => setTimeout(r, 20));
  }
  throw new Error(`timed out waiting for ${what}`);
}

function currentNodeName(): string | null {
  const el = document.querySelector("g.node.current");
  return el ? el.getAttribute("data-node") : null;
}

async function apiState(): Promise<{ current: string; happened: string[] }> {
  const resp = await fetch(`${base}/api/state`);
  return resp.json();
}

beforeAll(async () => {
  base = await startServer();
  // happy-dom enforces same-origin; treat the live server as the page origin
  (window as unknown as { happyDOM: { setURL(url: string): void } }).happyDOM.setURL(
    base + "/",
  );
  document.body.innerHTML = '<div id="walker-root">Loading story…</div>';
  walker = await initWalker(
    document.getElementById("walker-root") as HTMLElement,
    base,
  );
});

afterAll(() => {
  server?.kill();
});

describe("build output", () => {
  it("ships a compiled bundle for saga serve to host", () => {
    for (const name of ["app.js", "render.js", "index.html", "walker.css"]) {
      expect(existsSync(join(HERE, "..", "dist", name)), name).toBe(true);
    }
  });
});

describe("story view", () => {
  it("shows the Fate Decides group with its five nodes", () => {
    const band = document.querySelector('[data-section="Fate Decides"]');
    expect(band).not.toBeNull();
    const fate = walker.story.sections.find((s) => s.name === "Fate Decides")!;
    expect(fate.nodes).toHaveLength(5);
    // attribute selectors stumble over apostrophes in node names
    const rendered = [...document.querySelectorAll("g.node")].map((el) =>
      el.getAttribute("data-node"),
    );
    for (const name of fate.nodes) {
      expect(rendered).toContain(name);
    }
  });

  it("marks the initial node and highlights it at start", () => {
    const initial = document.querySelector('g.node[data-node="Dark Beginning"]')!;
    expect(initial.classList.contains("initial")).toBe(true);
    expect(currentNodeName()).toBe("Dark Beginning");
  });

  it("lays sections out as separate bands with depth columns", () => {
    const depths = nodeDepths(walker.story);
    expect(depths.get("Dark Beginning")).toBe(0);
    expect(depths.get("Betrayal")).toBeGreaterThan(depths.get("Point of No Return")!);
    const bands = document.querySelectorAll("g.section-band");
    expect(bands).toHaveLength(2);
  });

  it("offers one button per distinct event", () => {
    const buttons = document.querySelectorAll("button.event-button");
    const events = new Set(walker.story.transitions.flatMap((t) => t.events));
    expect(buttons).toHaveLength(events.size);
  });
});

describe("walking by clicking", () => {
  it("an enabling event moves the highlight and the API state", async () => {
    const button = document.querySelector<HTMLButtonElement>(
      'button[data-event="met the stranger"]',
    )!;
    button.click();
    await waitFor(
      () => currentNodeName() === "Uneasy Alliance",
      "highlight to move",
    );
    const state = await apiState();
    expect(state.current).toBe("Uneasy Alliance");
  });

  it("appends the transition to the log panel", () => {
    const lines = [...document.querySelectorAll(".log-pane li")].map(
      (li) => li.textContent,
    );
    expect(lines).toContain("* met the stranger");
    expect(
      lines.some((l) => l?.startsWith("-> Uneasy Alliance [The Path of Evil]")),
    ).toBe(true);
  });

  it("an irrelevant event is logged but does not move the highlight", async () => {
    const before = currentNodeName();
    const notes = await walker.signal("dragon sneezed");
    expect(notes).toHaveLength(0);
    expect(currentNodeName()).toBe(before);
    const state = await apiState();
    expect(state.happened).toContain("dragon sneezed");
  });

  it("hard refresh reproduces the identical view from /api/state", async () => {
    const mount = document.createElement("div");
    document.body.appendChild(mount);
    const second = await initWalker(mount, base);
    expect(second.state.current).toBe(walker.state.current);
    expect(mount.querySelector("g.node.current")?.getAttribute("data-node")).toBe(
      currentNodeName(),
    );
    mount.remove();
  });

  it("reset restores the initial node and clears the log", async () => {
    const reset = document.querySelector<HTMLButtonElement>(".reset-button")!;
    reset.click();
    await waitFor(
      () => currentNodeName() === "Dark Beginning",
      "reset to restore the initial highlight",
    );
    expect((await apiState()).current).toBe("Dark Beginning");
    expect(document.querySelectorAll(".log-pane li")).toHaveLength(0);
  });
});

import { WalkerApi } from "./api.js";
import { highlightCurrent, renderGraph, renderHints } from "./render.js";
import type { NotificationDoc, StateDoc, StoryDoc } from "./types.js";

export interface Walker {
  readonly story: StoryDoc;
  readonly state: StateDoc;
  /** POST the event, apply the response, append to the log panel. */
  signal(event: string): Promise<NotificationDoc[]>;
  reset(): Promise<void>;
  /** Re-pull /api/state; the view is a pure projection of it. */
  refresh(): Promise<void>;
}

function el(doc: Document, tag: string, className: string): HTMLElement {
  const node = doc.createElement(tag);
  node.className = className;
  return node;
}

function banner(doc: Document, root: HTMLElement, message: string, retry: () => void): void {
  const box = el(doc, "div", "error-banner");
  box.textContent = message + " ";
  const button = doc.createElement("button");
  button.textContent = "retry";
  button.addEventListener("click", () => {
    box.remove();
    retry();
  });
  box.appendChild(button);
  root.prepend(box);
}

/** Mount the walker into `root`. Returns the controller the page (and
 * the scripted tests) drive. */
export async function initWalker(root: HTMLElement, base = ""): Promise<Walker> {
  const doc = root.ownerDocument;
  const api = new WalkerApi(base);

  let story: StoryDoc;
  let state: StateDoc;
  try {
    story = await api.fetchStory();
    state = await api.fetchState();
  } catch (err) {
    banner(doc, root, `cannot reach the story server: ${err}`, () => {
      void initWalker(root, base);
    });
    throw err;
  }
  root.textContent = "";

  const title = el(doc, "h1", "story-title");
  title.textContent = story.story;
  root.appendChild(title);

  const columns = el(doc, "div", "columns");
  root.appendChild(columns);

  const graphPane = el(doc, "div", "graph-pane");
  graphPane.appendChild(renderGraph(doc, story));
  columns.appendChild(graphPane);

  const sidebar = el(doc, "div", "sidebar");
  columns.appendChild(sidebar);

  const hintsPane = el(doc, "div", "hints-pane");
  sidebar.appendChild(hintsPane);

  const eventsPane = el(doc, "div", "events-pane");
  sidebar.appendChild(eventsPane);

  const resetButton = doc.createElement("button");
  resetButton.className = "reset-button";
  resetButton.textContent = "reset walk";
  sidebar.appendChild(resetButton);

  const logPane = el(doc, "ul", "log-pane");
  sidebar.appendChild(logPane);

  const eventNames = [
    ...new Set(story.transitions.flatMap((t) => t.events)),
  ];
  const buttons = new Map<string, HTMLButtonElement>();
  for (const name of eventNames) {
    const button = doc.createElement("button");
    button.className = "event-button";
    button.setAttribute("data-event", name);
    button.textContent = name;
    buttons.set(name, button);
    eventsPane.appendChild(button);
  }

  function applyState(next: StateDoc): void {
    state = next;
    highlightCurrent(graphPane, state);
    hintsPane.textContent = "";
    hintsPane.appendChild(renderHints(doc, state));
    for (const [name, button] of buttons) {
      button.classList.toggle("happened", state.happened.includes(name));
    }
  }

  function appendLog(text: string): void {
    const item = doc.createElement("li");
    item.textContent = text;
    logPane.appendChild(item);
  }

  const walker: Walker = {
    story,
    get state() {
      return state;
    },
    async signal(event: string) {
      try {
        const response = await api.signalEvent(event);
        appendLog(`* ${event}`);
        for (const note of response.notifications) {
          appendLog(
            `-> ${note.new_node} [${note.new_section}] via ${note.via_events.join(" AND ")}`,
          );
        }
        applyState(response.state);
        return response.notifications;
      } catch (err) {
        appendLog(`! ${event}: ${err}`);
        return [];
      }
    },
    async reset() {
      const response = await api.reset();
      logPane.textContent = "";
      applyState(response.state);
    },
    async refresh() {
      applyState(await api.fetchState());
    },
  };

  for (const [name, button] of buttons) {
    button.addEventListener("click", () => {
      void walker.signal(name);
    });
  }
  resetButton.addEventListener("click", () => {
    void walker.reset();
  });

  applyState(state);
  return walker;
}

declare global {
  interface Window {
    sagaWalker?: Promise<Walker>;
  }
}

// Browser entry point; tests import initWalker and mount it themselves.
if (typeof document !== "undefined" && document.getElementById("walker-root")) {
  window.sagaWalker = initWalker(
    document.getElementById("walker-root") as HTMLElement,
  );
}

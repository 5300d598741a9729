import { layoutStory, type Layout, type NodeBox } from "./layout.js";
import type { StateDoc, StoryDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

function center(box: NodeBox): { x: number; y: number } {
  return { x: box.x + box.width / 2, y: box.y + box.height / 2 };
}

/** The story DAG as one SVG: section bands, labeled nodes, solid
 * node-transition edges, dashed section-transition edges. */
export function renderGraph(doc: Document, story: StoryDoc): SVGSVGElement {
  const layout: Layout = layoutStory(story);
  const svg = svgEl(doc, "svg", {
    width: String(layout.width),
    height: String(layout.height),
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    class: "story-graph",
  });

  for (const band of layout.bands) {
    const group = svgEl(doc, "g", { class: "section-band" });
    group.setAttribute("data-section", band.name);
    group.appendChild(
      svgEl(doc, "rect", {
        x: "8",
        y: String(band.y),
        width: String(layout.width - 16),
        height: String(band.height),
        class: "band-box",
      }),
    );
    const title = svgEl(doc, "text", {
      x: "20",
      y: String(band.y + 24),
      class: "band-title",
    });
    title.textContent = band.name;
    group.appendChild(title);
    svg.appendChild(group);
  }

  for (const t of story.transitions) {
    const from = layout.nodes.get(t.src);
    const to = layout.nodes.get(t.dst);
    if (!from || !to) {
      continue;
    }
    const a = center(from);
    const b = center(to);
    const edge = svgEl(doc, "g", {
      class: t.kind === "section" ? "edge edge-section" : "edge",
    });
    edge.appendChild(
      svgEl(doc, "line", {
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
      }),
    );
    const label = svgEl(doc, "text", {
      x: String((a.x + b.x) / 2),
      y: String((a.y + b.y) / 2 - 6),
      class: "edge-label",
    });
    label.textContent = t.events.join(" AND ");
    edge.appendChild(label);
    svg.appendChild(edge);
  }

  for (const [name, box] of layout.nodes) {
    const group = svgEl(doc, "g", { class: "node" });
    group.setAttribute("data-node", name);
    if (name === story.initial) {
      group.classList.add("initial");
      group.appendChild(
        svgEl(doc, "rect", {
          x: String(box.x - 4),
          y: String(box.y - 4),
          width: String(box.width + 8),
          height: String(box.height + 8),
          rx: "10",
          class: "initial-ring",
        }),
      );
    }
    group.appendChild(
      svgEl(doc, "rect", {
        x: String(box.x),
        y: String(box.y),
        width: String(box.width),
        height: String(box.height),
        rx: "8",
        class: "node-box",
      }),
    );
    const text = svgEl(doc, "text", {
      x: String(box.x + box.width / 2),
      y: String(box.y + box.height / 2 + 4),
      "text-anchor": "middle",
      class: "node-label",
    });
    text.textContent = name;
    group.appendChild(text);
    svg.appendChild(group);
  }

  return svg;
}

/** Move the `current` class to the node the state points at. */
export function highlightCurrent(root: ParentNode, state: StateDoc): void {
  for (const el of root.querySelectorAll<SVGGElement>("g.node")) {
    el.classList.toggle("current", el.getAttribute("data-node") === state.current);
  }
}

/** The enabled-transition hint list for the current node. */
export function renderHints(doc: Document, state: StateDoc): HTMLElement {
  const list = doc.createElement("ul");
  list.className = "hints";
  if (state.enabled.length === 0) {
    const item = doc.createElement("li");
    item.textContent = "terminal node: the story is over";
    list.appendChild(item);
    return list;
  }
  for (const hint of state.enabled) {
    const item = doc.createElement("li");
    item.textContent =
      hint.missing.length === 0
        ? `-> ${hint.dst} (ready)`
        : `-> ${hint.dst} (needs ${hint.missing.join(" AND ")})`;
    list.appendChild(item);
  }
  return list;
}

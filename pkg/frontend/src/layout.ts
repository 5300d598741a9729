import type { StoryDoc } from "./types.js";

export interface NodeBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface SectionBand {
  name: string;
  y: number;
  height: number;
}

export interface Layout {
  nodes: Map<string, NodeBox>;
  bands: SectionBand[];
  width: number;
  height: number;
}

export const NODE_WIDTH = 150;
export const NODE_HEIGHT = 44;
const COL_GAP = 70;
const ROW_GAP = 26;
const BAND_PAD = 46;
const MARGIN = 24;

/** Longest-path depth from the roots; the story graph is a DAG so a
 * fixpoint over the edge list terminates. */
export function nodeDepths(story: StoryDoc): Map<string, number> {
  const depth = new Map<string, number>();
  for (const section of story.sections) {
    for (const node of section.nodes) {
      depth.set(node, 0);
    }
  }
  const nodeCount = depth.size;
  for (let pass = 0; pass < nodeCount; pass++) {
    let changed = false;
    for (const t of story.transitions) {
      const candidate = (depth.get(t.src) ?? 0) + 1;
      if (candidate > (depth.get(t.dst) ?? 0)) {
        depth.set(t.dst, candidate);
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
  }
  return depth;
}

/** One horizontal band per section; within a band, nodes sit in
 * columns by DAG depth and stack in declaration order. */
export function layoutStory(story: StoryDoc): Layout {
  const depth = nodeDepths(story);
  const nodes = new Map<string, NodeBox>();
  const bands: SectionBand[] = [];

  let maxDepth = 0;
  for (const d of depth.values()) {
    maxDepth = Math.max(maxDepth, d);
  }

  let bandTop = MARGIN;
  for (const section of story.sections) {
    const rowsPerColumn = new Map<number, number>();
    let bandRows = 1;
    for (const node of section.nodes) {
      const col = depth.get(node) ?? 0;
      const row = rowsPerColumn.get(col) ?? 0;
      rowsPerColumn.set(col, row + 1);
      bandRows = Math.max(bandRows, row + 1);
      nodes.set(node, {
        x: MARGIN + col * (NODE_WIDTH + COL_GAP),
        y: bandTop + BAND_PAD + row * (NODE_HEIGHT + ROW_GAP),
        width: NODE_WIDTH,
        height: NODE_HEIGHT,
      });
    }
    const bandHeight =
      BAND_PAD + bandRows * (NODE_HEIGHT + ROW_GAP) - ROW_GAP + BAND_PAD / 2;
    bands.push({ name: section.name, y: bandTop, height: bandHeight });
    bandTop += bandHeight + MARGIN;
  }

  return {
    nodes,
    bands,
    width: MARGIN * 2 + (maxDepth + 1) * (NODE_WIDTH + COL_GAP) - COL_GAP,
    height: bandTop,
  };
}

// JSON documents served by `saga serve` under /api.

export interface SectionDoc {
  name: string;
  nodes: string[];
}

export interface TransitionDoc {
  src: string;
  dst: string;
  events: string[];
  kind: "node" | "section";
}

export interface StoryDoc {
  story: string;
  initial: string;
  sections: SectionDoc[];
  transitions: TransitionDoc[];
}

export interface HistoryStep {
  src: string;
  dst: string;
  triggering_event: string;
}

export interface EnabledHint {
  dst: string;
  missing: string[];
}

export interface StateDoc {
  current: string;
  section: string;
  happened: string[];
  history: HistoryStep[];
  enabled: EnabledHint[];
}

export interface NotificationDoc {
  new_node: string;
  new_section: string;
  via_events: string[];
}

export interface EventResponse {
  notifications: NotificationDoc[];
  state: StateDoc;
}

import type { EventResponse, StateDoc, StoryDoc } from "./types.js";

/** Thin client for the walker's JSON API; `base` is "" in the browser
 * and an absolute origin in tests. */
export class WalkerApi {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, init);
    if (!resp.ok) {
      throw new Error(`${path} failed: HTTP ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  fetchStory(): Promise<StoryDoc> {
    return this.request<StoryDoc>("/api/story");
  }

  fetchState(): Promise<StateDoc> {
    return this.request<StateDoc>("/api/state");
  }

  signalEvent(event: string): Promise<EventResponse> {
    return this.request<EventResponse>("/api/events", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ event }),
    });
  }

  reset(): Promise<{ state: StateDoc }> {
    return this.request<{ state: StateDoc }>("/api/reset", { method: "POST" });
  }
}

// Shared scaffolding: payload builders matching the service's JSON, the
// DOM shell the app expects, a fake Storage, and a poll helper for the
// asynchronous flows.

import type { SentencePayload, TokenPayload } from "../src/api.js";

export function token(partial: Partial<TokenPayload> & { id: string; form: string }): TokenPayload {
  return {
    lemma: null,
    upos: null,
    xpos: null,
    feats: "",
    head: null,
    deprel: null,
    deps: "_",
    misc: "",
    ...partial,
  };
}

// heads[i] is the head of word i+1; deprels default to root/dep by head.
export function payload(heads: number[], partial: Partial<SentencePayload> = {}): SentencePayload {
  const tokens = heads.map((h, i) =>
    token({
      id: String(i + 1),
      form: `w${i + 1}`,
      head: h,
      deprel: h === 0 ? "root" : "dep",
    }),
  );
  return {
    ref: "0",
    index: 0,
    sent_id: null,
    comments: [],
    tokens,
    note: null,
    issues: [],
    revision: 0,
    ...partial,
  };
}

export function mountShell(): HTMLElement {
  const shell = document.createElement("div");
  shell.innerHTML = `
    <strong id="doc-path"></strong>
    <span id="dirty"></span>
    <button id="prev"></button>
    <span id="position"></span>
    <button id="next"></button>
    <input id="jump">
    <button id="save"></button>
    <div id="config-panel"></div>
    <div id="table-host"></div>
    <div id="strip"></div>
    <div id="tree-host"></div>
    <textarea id="note"></textarea>
    <button id="note-save"></button>
  `;
  document.body.appendChild(shell);
  return shell;
}

export class FakeStorage implements Storage {
  private map = new Map<string, string>();

  get length(): number {
    return this.map.size;
  }

  clear(): void {
    this.map.clear();
  }

  getItem(key: string): string | null {
    return this.map.has(key) ? this.map.get(key)! : null;
  }

  key(index: number): string | null {
    return [...this.map.keys()][index] ?? null;
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
}

export class ThrowingStorage extends FakeStorage {
  override getItem(): string | null {
    throw new Error("storage blocked");
  }

  override setItem(): void {
    throw new Error("storage blocked");
  }
}

export async function until(check: () => boolean, what = "condition", timeoutMs = 10000): Promise<void> {
  const start = Date.now();
  while (Date.now() - start < timeoutMs) {
    if (check()) return;
    await new Promise((r) => setTimeout(r, 50));
  }
  throw new Error(`timed out waiting for ${what}`);
}

export function key(target: EventTarget, keyName: string, init: KeyboardEventInit = {}): void {
  target.dispatchEvent(new KeyboardEvent("keydown", { key: keyName, bubbles: true, cancelable: true, ...init }));
}

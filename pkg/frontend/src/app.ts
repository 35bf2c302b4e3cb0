// Controller. Owns the state (document summary, current sentence payload,
// view config), wires table, strip, tree, shortcuts and the header controls
// together, and funnels every mutation through one place so at most one
// request is in flight at a time. Rendering is a pure function of
// (payload, config): every successful call repaints from the response.

import { Api, ApiError } from "./api.js";
import type { DocumentSummary, Edit, SchemaPayload, SentencePayload } from "./api.js";
import { ALL_COLUMNS, REQUIRED_COLUMNS, loadConfig, saveConfig } from "./config.js";
import type { ViewConfig } from "./config.js";
import { parseFeats } from "./feats.js";
import { DEFAULT_SHORTCUTS, bindShortcuts } from "./shortcuts.js";
import type { ActionName, ShortcutMap } from "./shortcuts.js";
import { renderNotice, renderStrip } from "./strip.js";
import { SentenceTable } from "./table.js";
import { TreeView } from "./tree.js";

export interface AppOptions {
  base?: string;
  storage?: Storage | null;
  shortcuts?: ShortcutMap;
}

function el<T extends HTMLElement>(root: ParentNode, id: string): T {
  const found = root.querySelector(`#${id}`);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

export class App {
  readonly api: Api;
  config: ViewConfig;
  doc: DocumentSummary | null = null;
  payload: SentencePayload | null = null;
  schema: SchemaPayload | null = null;
  private busy = false;
  private storage: Storage | null;
  private table: SentenceTable;
  private tree: TreeView;
  private strip: HTMLElement;
  private jumpInput: HTMLInputElement;
  private noteBox: HTMLTextAreaElement;
  private position: HTMLElement;
  private docPath: HTMLElement;
  private dirtyDot: HTMLElement;
  private configPanel: HTMLElement;
  private unbind: (() => void) | null = null;

  constructor(
    private root: ParentNode,
    opts: AppOptions = {},
  ) {
    this.api = new Api(opts.base ?? "");
    if (opts.storage !== undefined) {
      this.storage = opts.storage;
    } else {
      try {
        this.storage = localStorage;
      } catch {
        this.storage = null;
      }
    }
    this.config = loadConfig(this.storage);

    this.strip = el(root, "strip");
    this.jumpInput = el(root, "jump");
    this.noteBox = el(root, "note");
    this.position = el(root, "position");
    this.docPath = el(root, "doc-path");
    this.dirtyDot = el(root, "dirty");
    this.configPanel = el(root, "config-panel");
    this.table = new SentenceTable(el(root, "table-host"), {
      onEdit: (tokenId, field, value) => this.editCell(tokenId, field, value),
      onSplit: (tokenId, first, second) => void this.mutate({ op: "split", token_id: tokenId, first, second }),
      onJoin: (tokenId) => void this.mutate({ op: "join", token_id: tokenId }),
    });
    this.tree = new TreeView(el(root, "tree-host"), (id) => this.table.highlightToken(id));

    this.jumpInput.addEventListener("keydown", (e) => {
      if (e.key === "Enter") {
        e.preventDefault();
        const ref = this.jumpInput.value.trim();
        if (ref) void this.goTo(ref);
        this.jumpInput.blur();
      }
    });
    el(root, "prev").addEventListener("click", () => void this.nav(-1));
    el(root, "next").addEventListener("click", () => void this.nav(1));
    el(root, "save").addEventListener("click", () => void this.saveDocument());
    el(root, "note-save").addEventListener("click", () => void this.saveNote());
    this.noteBox.addEventListener("keydown", (e) => {
      if (e.key === "Enter" && !e.shiftKey) {
        e.preventDefault();
        void this.saveNote();
        this.noteBox.blur();
      }
    });

    const doc = root instanceof Document ? root : (root as HTMLElement).ownerDocument;
    this.unbind = bindShortcuts(doc ?? document, opts.shortcuts ?? DEFAULT_SHORTCUTS, (a) => this.dispatch(a));
  }

  dispose(): void {
    this.unbind?.();
    this.unbind = null;
  }

  async start(): Promise<void> {
    this.doc = await this.api.getDocument();
    try {
      this.schema = await this.api.getSchema();
    } catch {
      this.schema = null;
    }
    this.docPath.textContent = this.doc.path;
    const remembered = this.config.sentenceRef;
    try {
      await this.goTo(remembered ?? this.firstRef());
    } catch {
      // the remembered sentence may be gone; fall back to the start
      await this.goTo(this.firstRef());
    }
  }

  private firstRef(): string {
    return this.doc?.sent_ids[0] ?? "0";
  }

  currentRef(): string {
    if (!this.payload) return this.firstRef();
    return this.payload.sent_id ?? String(this.payload.index);
  }

  async goTo(ref: string): Promise<void> {
    try {
      this.payload = await this.api.getSentence(ref);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        renderNotice(this.strip, `no sentence "${ref}"`);
        return;
      }
      throw err;
    }
    this.config.sentenceRef = this.currentRef();
    saveConfig(this.config, this.storage);
    this.render();
  }

  async nav(delta: number): Promise<void> {
    if (!this.doc || !this.payload) return;
    const index = Math.max(0, Math.min(this.doc.sentences - 1, this.payload.index + delta));
    if (index === this.payload.index) return;
    await this.goTo(this.doc.sent_ids[index] ?? String(index));
  }

  render(): void {
    if (!this.payload || !this.doc) return;
    this.position.textContent = `${this.payload.index + 1} / ${this.doc.sentences}`;
    this.dirtyDot.classList.toggle("on", this.doc.dirty);
    this.table.render(this.payload, this.config);
    renderStrip(this.strip, this.payload.issues);
    this.tree.render(this.payload);
    this.noteBox.value = this.payload.note ?? "";
    this.renderConfigPanel();
  }

  // Checkboxes for the CoNLL-U columns and for every known FEATS subfield.
  private renderConfigPanel(): void {
    this.configPanel.innerHTML = "";
    const columns = document.createElement("fieldset");
    const legend = document.createElement("legend");
    legend.textContent = "columns";
    columns.appendChild(legend);
    for (const col of ALL_COLUMNS) {
      columns.appendChild(this.checkbox(col, this.config.columns.includes(col), REQUIRED_COLUMNS.includes(col), (on) => {
        const set = new Set(this.config.columns);
        if (on) set.add(col);
        else set.delete(col);
        this.config.columns = ALL_COLUMNS.filter((c) => set.has(c) || REQUIRED_COLUMNS.includes(c));
        this.commitConfig();
      }));
    }
    const subs = document.createElement("fieldset");
    const subLegend = document.createElement("legend");
    subLegend.textContent = "FEATS subfields";
    subs.appendChild(subLegend);
    for (const name of this.subfieldNames()) {
      subs.appendChild(this.checkbox(name, this.config.featSubfields.includes(name), false, (on) => {
        const set = new Set(this.config.featSubfields);
        if (on) set.add(name);
        else set.delete(name);
        this.config.featSubfields = [...set].sort();
        this.commitConfig();
      }));
    }
    this.configPanel.append(columns, subs);
  }

  private subfieldNames(): string[] {
    const names = new Set<string>(this.config.featSubfields);
    const vocab = this.schema?.feature_values;
    if (vocab) for (const name of Object.keys(vocab)) names.add(name);
    if (this.payload) {
      for (const token of this.payload.tokens) {
        for (const name of parseFeats(token.feats).keys()) names.add(name);
      }
    }
    return [...names].sort();
  }

  private checkbox(label: string, checked: boolean, locked: boolean, onChange: (on: boolean) => void): HTMLElement {
    const wrap = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = checked;
    box.disabled = locked;
    box.addEventListener("change", () => onChange(box.checked));
    wrap.append(box, document.createTextNode(label));
    return wrap;
  }

  private commitConfig(): void {
    saveConfig(this.config, this.storage);
    this.render();
  }

  private editCell(tokenId: number, field: string, value: string): void {
    const name = field.startsWith("feats:") ? field.slice("feats:".length) : field;
    void this.mutate({ op: "set_field", token_id: tokenId, field: name, value });
  }

  // Single funnel for every write; one request in flight at most.
  async mutate(edit: Edit): Promise<void> {
    if (this.busy || !this.payload) return;
    this.busy = true;
    try {
      this.payload = await this.api.edit(this.currentRef(), this.payload.revision, edit);
      this.doc = await this.api.getDocument();
      this.render();
    } catch (err) {
      if (err instanceof ApiError && err.isStaleRevision) {
        renderNotice(this.strip, "this sentence changed elsewhere; reload to continue", () => void this.reload());
      } else if (err instanceof ApiError) {
        renderNotice(this.strip, `edit rejected: ${err.message}`, () => void this.reload());
      } else {
        renderNotice(this.strip, `request failed: ${String(err)}`);
      }
    } finally {
      this.busy = false;
    }
  }

  async reload(): Promise<void> {
    this.doc = await this.api.getDocument();
    await this.goTo(this.currentRef());
  }

  async saveDocument(): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      const result = await this.api.save();
      this.doc = await this.api.getDocument();
      this.dirtyDot.classList.toggle("on", this.doc.dirty);
      renderNotice(this.strip, `saved ${result.bytes_written} bytes to ${result.path}`);
    } catch (err) {
      renderNotice(this.strip, `save failed: ${String(err)}`);
    } finally {
      this.busy = false;
    }
  }

  async saveNote(): Promise<void> {
    if (!this.payload) return;
    try {
      const result = await this.api.putNote(this.currentRef(), this.noteBox.value);
      this.payload.note = result.note;
      renderNotice(this.strip, result.note === null ? "note cleared" : "note saved");
    } catch (err) {
      renderNotice(this.strip, `note not saved: ${String(err)}`);
    }
  }

  private dispatch(action: ActionName): void {
    switch (action) {
      case "move-up":
        this.table.moveSelection(-1, 0);
        break;
      case "move-down":
        this.table.moveSelection(1, 0);
        break;
      case "move-left":
        this.table.moveSelection(0, -1);
        break;
      case "move-right":
        this.table.moveSelection(0, 1);
        break;
      case "edit-cell":
        this.table.beginEdit();
        break;
      case "split-token":
        this.table.splitSelected();
        break;
      case "join-token":
        this.table.joinSelected();
        break;
      case "prev-sentence":
        void this.nav(-1);
        break;
      case "next-sentence":
        void this.nav(1);
        break;
      case "jump":
        this.jumpInput.focus();
        this.jumpInput.select();
        break;
      case "note":
        this.noteBox.focus();
        break;
      case "save":
        void this.saveDocument();
        break;
    }
  }
}

// Browser entry point, called from index.html; tests construct App themselves.
export function boot(): App {
  const app = new App(document);
  void app.start();
  return app;
}

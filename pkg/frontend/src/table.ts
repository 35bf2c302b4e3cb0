// Editable sentence table. One row per token; the first column holds the
// "+" and "-" controls for splitting and joining, then the configured
// CoNLL-U columns, with FEATS optionally expanded into one column per
// feature name. All editing runs through the handlers so the owner decides
// what a commit means; the table never talks to the network itself.

import type { SentencePayload, TokenPayload } from "./api.js";
import type { Column, ViewConfig } from "./config.js";
import { parseFeats } from "./feats.js";

export interface TableHandlers {
  // field is a column name, or "feats:Case" for a subfield column
  onEdit(tokenId: number, field: string, value: string): void;
  onSplit(tokenId: number, first: string, second: string): void;
  onJoin(tokenId: number): void;
}

interface CellRef {
  tokenId: number;
  field: string;
  editable: boolean;
}

// DEPS is display-only; the service edits the other eight columns.
const EDITABLE: ReadonlySet<string> = new Set([
  "form",
  "lemma",
  "upos",
  "xpos",
  "feats",
  "head",
  "deprel",
  "misc",
]);

function isWordId(id: string): boolean {
  return /^\d+$/.test(id);
}

function cellText(token: TokenPayload, column: Column): string {
  switch (column) {
    case "id":
      return token.id;
    case "form":
      return token.form;
    case "lemma":
      return token.lemma ?? "";
    case "upos":
      return token.upos ?? "";
    case "xpos":
      return token.xpos ?? "";
    case "feats":
      return token.feats;
    case "head":
      return token.head === null ? "" : String(token.head);
    case "deprel":
      return token.deprel ?? "";
    case "deps":
      return token.deps === "_" ? "" : token.deps;
    case "misc":
      return token.misc;
  }
}

export class SentenceTable {
  private table: HTMLTableElement;
  private cells: CellRef[][] = [];
  private rowIds: number[] = [];
  private sel = { row: 0, col: 0 };
  private editor: HTMLInputElement | null = null;
  private splitRow = -1;
  private payload: SentencePayload | null = null;

  constructor(
    private container: HTMLElement,
    private handlers: TableHandlers,
  ) {
    this.table = document.createElement("table");
    this.table.className = "sentence-table";
    container.appendChild(this.table);
  }

  get editing(): boolean {
    return this.editor !== null;
  }

  render(payload: SentencePayload, config: ViewConfig): void {
    this.cancelEdit();
    this.payload = payload;
    this.lastConfig = config;
    this.cells = [];
    this.rowIds = [];
    this.table.innerHTML = "";

    const head = this.table.createTHead().insertRow();
    head.appendChild(document.createElement("th"));
    for (const col of config.columns) {
      const th = document.createElement("th");
      th.textContent = col.toUpperCase();
      head.appendChild(th);
      if (col === "feats") {
        for (const name of config.featSubfields) {
          const sub = document.createElement("th");
          sub.textContent = name;
          sub.className = "subfield";
          head.appendChild(sub);
        }
      }
    }

    const body = this.table.createTBody();
    for (const token of payload.tokens) {
      const word = isWordId(token.id);
      const tokenId = word ? parseInt(token.id, 10) : -1;
      const row = body.insertRow();
      row.dataset.tokenId = token.id;
      const rowCells: CellRef[] = [];

      const controls = row.insertCell();
      controls.className = "controls";
      if (word) {
        const split = document.createElement("button");
        split.textContent = "+";
        split.title = "split this token in two";
        split.className = "split-btn";
        split.addEventListener("click", () => this.beginSplit(this.rowIds.indexOf(tokenId)));
        const join = document.createElement("button");
        join.textContent = "-";
        join.title = "join with the next token";
        join.className = "join-btn";
        join.addEventListener("click", () => this.handlers.onJoin(tokenId));
        controls.append(split, join);
      }

      const feats = parseFeats(token.feats);
      for (const col of config.columns) {
        this.addCell(row, rowCells, tokenId, col, cellText(token, col), word && EDITABLE.has(col));
        if (col === "feats") {
          for (const name of config.featSubfields) {
            this.addCell(row, rowCells, tokenId, `feats:${name}`, feats.get(name) ?? "", word);
          }
        }
      }
      this.cells.push(rowCells);
      this.rowIds.push(tokenId);
    }

    this.sel.row = Math.min(this.sel.row, this.cells.length - 1);
    const width = this.cells[0]?.length ?? 0;
    this.sel.col = Math.min(this.sel.col, Math.max(0, width - 1));
    this.applySelection();
  }

  private addCell(
    row: HTMLTableRowElement,
    rowCells: CellRef[],
    tokenId: number,
    field: string,
    text: string,
    editable: boolean,
  ): void {
    const cell = row.insertCell();
    cell.textContent = text;
    cell.dataset.field = field;
    if (editable) {
      cell.addEventListener("dblclick", () => {
        this.select(this.cells.findIndex((r) => r === rowCells), rowCells.findIndex((c) => c.field === field));
        this.beginEdit();
      });
    }
    cell.addEventListener("click", () => {
      this.select(this.rowIndexOf(cell), rowCells.findIndex((c) => c.field === field));
    });
    rowCells.push({ tokenId, field, editable });
  }

  private rowIndexOf(cell: HTMLTableCellElement): number {
    const tr = cell.parentElement as HTMLTableRowElement;
    return Array.from(this.table.tBodies[0]!.rows).indexOf(tr);
  }

  private cellElement(row: number, col: number): HTMLTableCellElement | null {
    const tr = this.table.tBodies[0]?.rows[row];
    // +1 skips the controls column
    return (tr?.cells[col + 1] as HTMLTableCellElement) ?? null;
  }

  select(row: number, col: number): void {
    if (row < 0 || col < 0) return;
    this.cancelEdit();
    this.sel = {
      row: Math.max(0, Math.min(row, this.cells.length - 1)),
      col: Math.max(0, Math.min(col, (this.cells[0]?.length ?? 1) - 1)),
    };
    this.applySelection();
  }

  moveSelection(dRow: number, dCol: number): void {
    // Clamp here: select() ignores negative targets so that click handlers
    // can pass findIndex misses through safely.
    const row = Math.max(0, Math.min(this.sel.row + dRow, this.cells.length - 1));
    const col = Math.max(0, Math.min(this.sel.col + dCol, (this.cells[0]?.length ?? 1) - 1));
    this.select(row, col);
  }

  get selected(): CellRef | null {
    return this.cells[this.sel.row]?.[this.sel.col] ?? null;
  }

  get selectedTokenId(): number {
    return this.rowIds[this.sel.row] ?? -1;
  }

  private applySelection(): void {
    for (const td of this.table.querySelectorAll("td.selected")) td.classList.remove("selected");
    this.cellElement(this.sel.row, this.sel.col)?.classList.add("selected");
  }

  // Turn the selected cell into an input. Enter commits, Escape cancels.
  beginEdit(): void {
    const ref = this.selected;
    if (!ref || !ref.editable || this.editor) return;
    const cell = this.cellElement(this.sel.row, this.sel.col);
    if (!cell) return;
    const input = document.createElement("input");
    input.value = cell.textContent ?? "";
    input.className = "cell-editor";
    cell.textContent = "";
    cell.appendChild(input);
    this.editor = input;
    input.addEventListener("keydown", (e) => {
      if (e.key === "Enter") {
        e.preventDefault();
        this.commitEdit();
      } else if (e.key === "Escape") {
        e.preventDefault();
        this.cancelEdit();
      }
      e.stopPropagation();
    });
    input.focus();
    input.select();
  }

  commitEdit(): void {
    const ref = this.selected;
    if (!this.editor || !ref) return;
    const value = this.editor.value;
    const row = this.splitRow;
    this.closeEditor();
    if (row >= 0) {
      this.splitRow = -1;
      const at = value.indexOf(" ");
      const tokenId = this.rowIds[row];
      if (at > 0 && at < value.length - 1 && tokenId !== undefined && tokenId > 0) {
        this.handlers.onSplit(tokenId, value.slice(0, at), value.slice(at + 1).trim());
      } else {
        // no usable cut point; restore the display
        this.rerender();
      }
      return;
    }
    this.handlers.onEdit(ref.tokenId, ref.field, value.trim());
  }

  cancelEdit(): void {
    if (!this.editor) return;
    this.closeEditor();
    this.splitRow = -1;
    this.rerender();
  }

  private closeEditor(): void {
    this.editor?.remove();
    this.editor = null;
  }

  private rerender(): void {
    if (this.payload) {
      const sel = { ...this.sel };
      this.render(this.payload, this.lastConfig!);
      this.sel = sel;
      this.applySelection();
    }
  }

  private lastConfig: ViewConfig | null = null;

  // Split entry: edit the FORM with a space marking the cut.
  beginSplit(row: number): void {
    if (row < 0 || row >= this.cells.length) return;
    const formCol = this.cells[row]?.findIndex((c) => c.field === "form") ?? -1;
    if (formCol < 0) return;
    this.select(row, formCol);
    this.splitRow = row;
    this.beginEdit();
  }

  splitSelected(): void {
    this.beginSplit(this.sel.row);
  }

  joinSelected(): void {
    const id = this.selectedTokenId;
    if (id > 0) this.handlers.onJoin(id);
  }

  highlightToken(id: string | null): void {
    for (const tr of this.table.querySelectorAll("tr.hover-target")) tr.classList.remove("hover-target");
    if (id === null) return;
    const tr = this.table.querySelector(`tr[data-token-id="${id}"]`);
    tr?.classList.add("hover-target");
  }
}

// Keyboard layer. Every mutating action in the workbench is reachable from
// here as well as from the mouse. The map is plain data so a user override
// can swap any binding without touching the dispatch logic.

export type ActionName =
  | "move-up"
  | "move-down"
  | "move-left"
  | "move-right"
  | "edit-cell"
  | "split-token"
  | "join-token"
  | "prev-sentence"
  | "next-sentence"
  | "jump"
  | "note"
  | "save";

export type ShortcutMap = Record<string, ActionName>;

export const DEFAULT_SHORTCUTS: ShortcutMap = {
  ArrowUp: "move-up",
  ArrowDown: "move-down",
  ArrowLeft: "move-left",
  ArrowRight: "move-right",
  Enter: "edit-cell",
  "+": "split-token",
  "-": "join-token",
  "[": "prev-sentence",
  "]": "next-sentence",
  g: "jump",
  n: "note",
  s: "save",
};

function inTextEntry(e: KeyboardEvent): boolean {
  const el = e.target as HTMLElement | null;
  if (!el) return false;
  const tag = el.tagName;
  return tag === "INPUT" || tag === "TEXTAREA" || tag === "SELECT" || el.isContentEditable;
}

// Attach the map to a target; returns the unbind function.
export function bindShortcuts(
  target: EventTarget,
  map: ShortcutMap,
  dispatch: (action: ActionName) => void,
): () => void {
  const listener = (ev: Event) => {
    const e = ev as KeyboardEvent;
    if (e.ctrlKey || e.metaKey || e.altKey) return;
    if (inTextEntry(e)) return;
    const action = map[e.key];
    if (!action) return;
    e.preventDefault();
    dispatch(action);
  };
  target.addEventListener("keydown", listener);
  return () => target.removeEventListener("keydown", listener);
}

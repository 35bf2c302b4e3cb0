// Keyboard layer. Every mutating action in the workbench is reachable from
// here as well as from the mouse. The map is plain data so a user override
// can swap any binding without touching the dispatch logic.
export const DEFAULT_SHORTCUTS = {
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
function inTextEntry(e) {
    const el = e.target;
    if (!el)
        return false;
    const tag = el.tagName;
    return tag === "INPUT" || tag === "TEXTAREA" || tag === "SELECT" || el.isContentEditable;
}
// Attach the map to a target; returns the unbind function.
export function bindShortcuts(target, map, dispatch) {
    const listener = (ev) => {
        const e = ev;
        if (e.ctrlKey || e.metaKey || e.altKey)
            return;
        if (inTextEntry(e))
            return;
        const action = map[e.key];
        if (!action)
            return;
        e.preventDefault();
        dispatch(action);
    };
    target.addEventListener("keydown", listener);
    return () => target.removeEventListener("keydown", listener);
}

// Hierarchical dependency tree, root at the top. Layout is a pure function
// of the token list so it can be tested without a DOM; the view draws the
// layout as SVG and reports hover so the table can highlight the matching
// row. A sentence whose heads do not form a tree (cycles, dangling heads)
// has no hierarchy to draw, so the caller falls back to table-only.
const COL_WIDTH = 104;
const ROW_HEIGHT = 74;
const TOP = 36;
function words(payload) {
    return payload.tokens.filter((t) => /^\d+$/.test(t.id));
}
// null when the heads contain a cycle or point outside the sentence.
export function computeLayout(payload) {
    const ws = words(payload);
    const n = ws.length;
    if (n === 0)
        return null;
    const depth = new Map();
    const heads = new Map();
    for (const w of ws) {
        if (w.head === null || w.head < 0 || w.head > n)
            return null;
        heads.set(parseInt(w.id, 10), w.head);
    }
    const depthOf = (id) => {
        const seen = new Set();
        let cur = id;
        let d = 0;
        while (true) {
            const cached = depth.get(cur);
            if (cached !== undefined)
                return d + cached;
            const h = heads.get(cur);
            if (h === undefined)
                return null;
            if (h === 0)
                return d;
            if (seen.has(cur))
                return null;
            seen.add(cur);
            cur = h;
            d += 1;
        }
    };
    const nodes = [];
    let maxDepth = 0;
    for (const w of ws) {
        const id = parseInt(w.id, 10);
        const d = depthOf(id);
        if (d === null)
            return null;
        depth.set(id, d);
        maxDepth = Math.max(maxDepth, d);
        nodes.push({
            id,
            form: w.form,
            x: (nodes.length + 0.5) * COL_WIDTH,
            y: TOP + d * ROW_HEIGHT,
            depth: d,
        });
    }
    const edges = [];
    for (const w of ws) {
        const id = parseInt(w.id, 10);
        const h = heads.get(id);
        if (h !== 0)
            edges.push({ from: h, to: id, label: w.deprel ?? "" });
    }
    return {
        nodes,
        edges,
        width: n * COL_WIDTH,
        height: TOP + (maxDepth + 1) * ROW_HEIGHT + 20,
    };
}
const SVG_NS = "http://www.w3.org/2000/svg";
export class TreeView {
    constructor(container, onHover) {
        this.onHover = onHover;
        this.host = container;
    }
    // true when a tree was drawn, false when it degraded to a notice
    render(payload) {
        this.host.innerHTML = "";
        const layout = computeLayout(payload);
        if (!layout) {
            const note = document.createElement("p");
            note.className = "tree-degraded";
            note.textContent = "tree view unavailable: heads do not form a tree";
            this.host.appendChild(note);
            return false;
        }
        const svg = document.createElementNS(SVG_NS, "svg");
        svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
        svg.setAttribute("width", String(layout.width));
        svg.setAttribute("height", String(layout.height));
        svg.classList.add("dep-tree");
        const byId = new Map(layout.nodes.map((nd) => [nd.id, nd]));
        for (const edge of layout.edges) {
            const a = byId.get(edge.from);
            const b = byId.get(edge.to);
            if (!a || !b)
                continue;
            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", String(a.x));
            line.setAttribute("y1", String(a.y));
            line.setAttribute("x2", String(b.x));
            line.setAttribute("y2", String(b.y));
            line.setAttribute("class", "tree-edge");
            svg.appendChild(line);
            const label = document.createElementNS(SVG_NS, "text");
            label.setAttribute("x", String((a.x + b.x) / 2));
            label.setAttribute("y", String((a.y + b.y) / 2 - 4));
            label.setAttribute("class", "edge-label");
            label.textContent = edge.label;
            svg.appendChild(label);
        }
        for (const node of layout.nodes) {
            const g = document.createElementNS(SVG_NS, "g");
            g.setAttribute("class", "tree-node");
            g.setAttribute("data-token-id", String(node.id));
            const circle = document.createElementNS(SVG_NS, "circle");
            circle.setAttribute("cx", String(node.x));
            circle.setAttribute("cy", String(node.y));
            circle.setAttribute("r", "14");
            const text = document.createElementNS(SVG_NS, "text");
            text.setAttribute("x", String(node.x));
            text.setAttribute("y", String(node.y + 28));
            text.setAttribute("class", "node-label");
            text.textContent = node.form;
            g.append(circle, text);
            g.addEventListener("mouseenter", () => this.onHover(String(node.id)));
            g.addEventListener("mouseleave", () => this.onHover(null));
            svg.appendChild(g);
        }
        this.host.appendChild(svg);
        return true;
    }
}

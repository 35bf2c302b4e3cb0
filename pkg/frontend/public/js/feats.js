// FEATS strings arrive as "Name=Value|Name=Value" (or empty). The table
// splits them into per-feature cells; editing a subfield goes back through
// the service, which owns composition and ordering.
export function parseFeats(feats) {
    const out = new Map();
    if (!feats || feats === "_")
        return out;
    for (const pair of feats.split("|")) {
        const eq = pair.indexOf("=");
        if (eq > 0)
            out.set(pair.slice(0, eq), pair.slice(eq + 1));
    }
    return out;
}

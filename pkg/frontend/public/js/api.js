// Typed client for the annotation service. Every call goes through fetch
// against the same origin by default; tests point `base` at a spawned server.
export class ApiError extends Error {
    constructor(status, detail) {
        super(detail);
        this.status = status;
    }
    get isStaleRevision() {
        return this.status === 409;
    }
}
async function request(base, path, init) {
    const res = await fetch(base + path, init);
    if (!res.ok) {
        let detail = `${res.status} ${res.statusText}`;
        try {
            const body = await res.json();
            if (typeof body.detail === "string")
                detail = body.detail;
            else if (body.detail)
                detail = JSON.stringify(body.detail);
        }
        catch {
            // non-JSON error body, keep the status line
        }
        throw new ApiError(res.status, detail);
    }
    return (await res.json());
}
function post(body) {
    return {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
    };
}
export class Api {
    constructor(base = "") {
        this.base = base;
    }
    getDocument() {
        return request(this.base, "/document");
    }
    getSentence(ref) {
        return request(this.base, `/sentence/${encodeURIComponent(String(ref))}`);
    }
    edit(ref, revision, edit) {
        return request(this.base, `/sentence/${encodeURIComponent(String(ref))}/edit`, post({ revision, edit }));
    }
    save() {
        return request(this.base, "/save", post({}));
    }
    putNote(ref, text) {
        return request(this.base, `/sentence/${encodeURIComponent(String(ref))}/note`, {
            method: "PUT",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ text }),
        });
    }
    getSchema() {
        return request(this.base, "/schema");
    }
}

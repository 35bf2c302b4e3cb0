// Typed client for the annotation service. Every call goes through fetch
// against the same origin by default; tests point `base` at a spawned server.

export interface TokenPayload {
  id: string;
  form: string;
  lemma: string | null;
  upos: string | null;
  xpos: string | null;
  feats: string;
  head: number | null;
  deprel: string | null;
  deps: string;
  misc: string;
}

export interface IssuePayload {
  sentence: string;
  token: string | null;
  code: string;
  message: string;
}

export interface SentencePayload {
  ref: string;
  index: number;
  sent_id: string | null;
  comments: string[];
  tokens: TokenPayload[];
  note: string | null;
  issues: IssuePayload[];
  revision: number;
}

export interface DocumentSummary {
  path: string;
  sentences: number;
  words: number;
  tokens: number;
  sections: string[];
  sent_ids: (string | null)[];
  revision: number;
  dirty: boolean;
}

export interface SaveResult {
  path: string;
  bytes_written: number;
  revision: number;
  dirty: boolean;
}

export interface SchemaPayload {
  upos: string[];
  deprels: string[];
  feature_values: Record<string, string[] | null> | null;
}

export type Edit =
  | { op: "set_field"; token_id: number; field: string; value: string }
  | { op: "split"; token_id: number; first: string; second: string }
  | { op: "join"; token_id: number };

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }

  get isStaleRevision(): boolean {
    return this.status === 409;
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(base + path, init);
  if (!res.ok) {
    let detail = `${res.status} ${res.statusText}`;
    try {
      const body = await res.json();
      if (typeof body.detail === "string") detail = body.detail;
      else if (body.detail) detail = JSON.stringify(body.detail);
    } catch {
      // non-JSON error body, keep the status line
    }
    throw new ApiError(res.status, detail);
  }
  return (await res.json()) as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class Api {
  constructor(public base: string = "") {}

  getDocument(): Promise<DocumentSummary> {
    return request(this.base, "/document");
  }

  getSentence(ref: string | number): Promise<SentencePayload> {
    return request(this.base, `/sentence/${encodeURIComponent(String(ref))}`);
  }

  edit(ref: string | number, revision: number, edit: Edit): Promise<SentencePayload> {
    return request(
      this.base,
      `/sentence/${encodeURIComponent(String(ref))}/edit`,
      post({ revision, edit }),
    );
  }

  save(): Promise<SaveResult> {
    return request(this.base, "/save", post({}));
  }

  putNote(ref: string | number, text: string): Promise<{ sent_id: string; note: string | null }> {
    return request(this.base, `/sentence/${encodeURIComponent(String(ref))}/note`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  getSchema(): Promise<SchemaPayload> {
    return request(this.base, "/schema");
  }
}

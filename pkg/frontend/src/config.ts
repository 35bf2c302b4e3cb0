// View configuration: which columns and FEATS subfields the table shows,
// plus the sentence the annotator was last on. Persisted in localStorage so
// the layout survives a reload; ID and FORM can never be hidden.

export const ALL_COLUMNS = [
  "id",
  "form",
  "lemma",
  "upos",
  "xpos",
  "feats",
  "head",
  "deprel",
  "deps",
  "misc",
] as const;

export type Column = (typeof ALL_COLUMNS)[number];

export const REQUIRED_COLUMNS: readonly Column[] = ["id", "form"];

export interface ViewConfig {
  columns: Column[];
  featSubfields: string[];
  sentenceRef: string | null;
}

const STORAGE_KEY = "treekit-view-config";

export function defaultConfig(): ViewConfig {
  return {
    columns: [...ALL_COLUMNS],
    featSubfields: [],
    sentenceRef: null,
  };
}

// Drop unknown columns, force the required ones, keep canonical order.
export function normalize(config: ViewConfig): ViewConfig {
  const wanted = new Set<Column>(REQUIRED_COLUMNS);
  for (const c of config.columns) {
    if ((ALL_COLUMNS as readonly string[]).includes(c)) wanted.add(c);
  }
  return {
    columns: ALL_COLUMNS.filter((c) => wanted.has(c)),
    featSubfields: [...new Set(config.featSubfields)],
    sentenceRef: config.sentenceRef,
  };
}

export function loadConfig(storage: Storage | null = defaultStorage()): ViewConfig {
  if (!storage) return defaultConfig();
  try {
    const raw = storage.getItem(STORAGE_KEY);
    if (!raw) return defaultConfig();
    const parsed = JSON.parse(raw);
    return normalize({
      columns: Array.isArray(parsed.columns) ? parsed.columns : [...ALL_COLUMNS],
      featSubfields: Array.isArray(parsed.featSubfields) ? parsed.featSubfields : [],
      sentenceRef: typeof parsed.sentenceRef === "string" ? parsed.sentenceRef : null,
    });
  } catch {
    return defaultConfig();
  }
}

export function saveConfig(config: ViewConfig, storage: Storage | null = defaultStorage()): void {
  if (!storage) return;
  try {
    storage.setItem(STORAGE_KEY, JSON.stringify(normalize(config)));
  } catch {
    // storage may be full or blocked; the config is a convenience only
  }
}

function defaultStorage(): Storage | null {
  try {
    return typeof localStorage === "undefined" ? null : localStorage;
  } catch {
    return null;
  }
}

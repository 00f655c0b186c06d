import type { ApiClient } from "./api";
import type { SessionStore } from "./session";
import type { Language } from "./i18n";
import { t } from "./i18n";

/** Everything a view needs; tests construct this directly with fakes. */
export interface AppContext {
  api: ApiClient;
  session: SessionStore;
  /** Localize a console string in the session language. */
  tr(key: string, params?: string[]): string;
  /** Surface a transient message (localized by the caller). */
  banner(text: string, kind?: "info" | "error"): void;
  /** Re-render the whole application after a session change. */
  refresh(): void;
}

export function translator(session: SessionStore) {
  return (key: string, params: string[] = []) => t(key, session.language as Language, params);
}

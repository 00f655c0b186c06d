/** Session and offline-draft persistence.
 *
 * The bearer token lives here and in browser storage only; no view ever
 * interpolates it into markup. Drafts are keyed by account id and survive
 * reloads until they are submitted.
 */

import type { Language } from "./i18n";

const SESSION_KEY = "cs.session";
const DRAFTS_PREFIX = "cs.drafts.";

export interface Session {
  token: string;
  accountId: string;
  role: "Citizen" | "CityEmployee" | "CentralAdmin";
  city: string | null;
  email: string;
}

export interface Draft {
  id: string;
  imageBase64: string;
  source: "Auto" | "Manual";
  latitude?: number;
  longitude?: number;
  manualText?: string;
  note: string | null;
  createdAt: string;
}

export class SessionStore {
  language: Language = "en";
  private session: Session | null = null;

  constructor(private storage: Storage = window.localStorage) {
    const raw = this.storage.getItem(SESSION_KEY);
    if (raw) {
      try {
        const parsed = JSON.parse(raw) as Session & { language?: Language };
        this.session = parsed;
        this.language = parsed.language ?? "en";
      } catch {
        this.storage.removeItem(SESSION_KEY);
      }
    }
  }

  get current(): Session | null {
    return this.session;
  }

  get token(): string | null {
    return this.session?.token ?? null;
  }

  signIn(session: Session): void {
    this.session = session;
    this.persist();
  }

  signOut(): void {
    this.session = null;
    this.storage.removeItem(SESSION_KEY);
  }

  setLanguage(language: Language): void {
    this.language = language;
    if (this.session) this.persist();
  }

  private persist(): void {
    this.storage.setItem(
      SESSION_KEY,
      JSON.stringify({ ...this.session, language: this.language }),
    );
  }

  // -- drafts ---------------------------------------------------------------

  private draftsKey(): string {
    return DRAFTS_PREFIX + (this.session?.accountId ?? "anonymous");
  }

  drafts(): Draft[] {
    const raw = this.storage.getItem(this.draftsKey());
    if (!raw) return [];
    try {
      return JSON.parse(raw) as Draft[];
    } catch {
      return [];
    }
  }

  saveDraft(draft: Omit<Draft, "id" | "createdAt">): Draft {
    const complete: Draft = {
      ...draft,
      id: `draft-${Date.now()}-${Math.floor(Math.random() * 1e6)}`,
      createdAt: new Date().toISOString(),
    };
    const all = this.drafts();
    all.push(complete);
    this.storage.setItem(this.draftsKey(), JSON.stringify(all));
    return complete;
  }

  removeDraft(id: string): void {
    const remaining = this.drafts().filter((d) => d.id !== id);
    if (remaining.length === 0) {
      this.storage.removeItem(this.draftsKey());
    } else {
      this.storage.setItem(this.draftsKey(), JSON.stringify(remaining));
    }
  }
}

import type { ApiClient, Complaint, Series } from "../src/api";
import { App } from "../src/app";

export function flush(times = 6): Promise<void> {
  let chain = Promise.resolve();
  for (let i = 0; i < times; i++) {
    chain = chain.then(() => new Promise((resolve) => setTimeout(resolve, 0)));
  }
  return chain;
}

/** Poll until the assertion stops throwing; for flows with real I/O. */
export async function waitFor(check: () => void, timeout = 10_000): Promise<void> {
  const deadline = Date.now() + timeout;
  for (;;) {
    try {
      check();
      return;
    } catch (error) {
      if (Date.now() > deadline) throw error;
    }
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
}

export function emptySeries(kind: "status" | "category", scope = "ALL"): Series {
  const keys =
    kind === "status"
      ? ["status.pending", "status.processing", "status.solved"]
      : [
          "category.damaged_road",
          "category.flood",
          "category.trash",
          "category.homeless_people",
          "category.fake_complaint",
        ];
  return { scope, kind, points: keys.map((label_key) => ({ label_key, value: 0 })) };
}

export function sampleComplaint(overrides: Partial<Complaint> = {}): Complaint {
  return {
    id: "C-000001",
    submitter_id: "A-000001",
    image_ref: "0".repeat(64),
    category: "Trash",
    category_source: "Model",
    confidence: 0.9,
    status: "Pending",
    city: "Khulna",
    location: { latitude: 22.8456, longitude: 89.5403, source: "Auto", manual_text: null },
    note: "sample",
    created_at: "2026-01-01T00:00:00.000Z",
    updated_at: "2026-01-01T00:00:00.000Z",
    revision: 1,
    ...overrides,
  };
}

/** Method-for-method stand-in for ApiClient; override what the test drives. */
export function fakeApi(overrides: Record<string, unknown> = {}): ApiClient {
  const base = {
    login: async () => {
      throw new Error("login not faked");
    },
    registerCitizen: async () => ({ account: {} }),
    verifyEmail: async () => ({ account: {} }),
    registerEmployee: async () => ({ account: {} }),
    submitComplaint: async () => ({ complaint: sampleComplaint() }),
    listComplaints: async () => ({ complaints: [] as Complaint[] }),
    updateStatus: async () => ({ event: {} }),
    updateCategory: async () => ({ event: {} }),
    markFake: async () => ({ event: {} }),
    sendFeedback: async () => ({ event: {} }),
    mapLink: async () => ({ url: "https://example.org/map" }),
    contactLink: async () => ({ url: "mailto:x@y.z" }),
    statsStatus: async () => emptySeries("status"),
    statsCategory: async () => emptySeries("category"),
    notifications: async () => ({ notifications: [] }),
    markRead: async () => ({ notification: {} }),
    generateCredential: async () => ({ credential: {}, payload: "CS1|A|B|C|D" }),
    listEmployees: async () => ({ employees: [] }),
    removeEmployee: async () => ({ removed: true, email_dispatched: true }),
    ...overrides,
  };
  return base as unknown as ApiClient;
}

export interface MountedApp {
  app: App;
  root: HTMLElement;
}

export function mountApp(options: {
  api?: ApiClient;
  session?: { token: string; accountId: string; role: string; city: string | null; email: string };
  baseUrl?: string;
  storage?: Storage;
}): MountedApp {
  const app = new App({
    baseUrl: options.baseUrl ?? "http://backend.invalid",
    storage: options.storage ?? window.localStorage,
  });
  if (options.api) {
    // swap the real client for the fake before any view renders
    Object.defineProperty(app, "api", { value: options.api });
  }
  if (options.session) {
    app.session.signIn(options.session as Parameters<typeof app.session.signIn>[0]);
  }
  const root = document.createElement("div");
  document.body.append(root);
  app.mount(root);
  return { app, root };
}

export function textNodes(root: HTMLElement): string[] {
  const walker = document.createTreeWalker(root, NodeFilter.SHOW_TEXT);
  const out: string[] = [];
  while (walker.nextNode()) {
    const text = walker.currentNode.textContent?.trim();
    if (text) out.push(text);
  }
  return out;
}

/** Matches bare catalog keys like "status.pending" or "citizen.submit.title". */
export const RAW_KEY_PATTERN = /^[a-z][a-z0-9_]*(\.[a-z0-9_]+)+$/;

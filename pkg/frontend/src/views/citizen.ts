/** Citizen view: photo complaint submission with automatic or manual
 * location, offline drafts, submission history, notifications, and the
 * public dashboards.
 *
 * A submission that fails at the network layer becomes a local draft keyed
 * to the account; drafts outlive reloads and submit later with one click.
 */

import { el, clear } from "../dom";
import { ApiError, NetworkError, type LocationInput } from "../api";
import type { AppContext } from "../context";
import type { Draft } from "../session";
import { label } from "../i18n";
import { statsPanel } from "./statsPanel";

export async function fileToBase64(file: File): Promise<string> {
  // FileReader fallback: some DOM implementations ship File without arrayBuffer
  const raw: ArrayBuffer =
    typeof file.arrayBuffer === "function"
      ? await file.arrayBuffer()
      : await new Promise((resolve, reject) => {
          const reader = new FileReader();
          reader.onload = () => resolve(reader.result as ArrayBuffer);
          reader.onerror = () => reject(reader.error);
          reader.readAsArrayBuffer(file);
        });
  const buffer = new Uint8Array(raw);
  let binary = "";
  const chunk = 0x8000;
  for (let i = 0; i < buffer.length; i += chunk) {
    binary += String.fromCharCode(...buffer.subarray(i, i + chunk));
  }
  return btoa(binary);
}

function currentPosition(): Promise<{ latitude: number; longitude: number }> {
  return new Promise((resolve, reject) => {
    navigator.geolocation.getCurrentPosition(
      (pos) => resolve({ latitude: pos.coords.latitude, longitude: pos.coords.longitude }),
      (err) => reject(new Error(err.message)),
    );
  });
}

export function citizenView(ctx: AppContext): HTMLElement {
  const photo = el("input", { name: "photo", type: "file", accept: "image/png,image/jpeg" });
  const modeSelect = el("select", { name: "location-mode" });
  modeSelect.append(
    el("option", { value: "Auto" }, ctx.tr("citizen.submit.mode.auto")),
    el("option", { value: "Manual" }, ctx.tr("citizen.submit.mode.manual")),
  );
  const manualCity = el("input", {
    name: "manual-city",
    placeholder: ctx.tr("citizen.submit.manual_city"),
    style: "display:none",
  });
  modeSelect.addEventListener("change", () => {
    manualCity.style.display = modeSelect.value === "Manual" ? "" : "none";
  });
  const note = el("textarea", { name: "note", placeholder: ctx.tr("citizen.submit.note") });
  const result = el("div", { "data-testid": "submit-result" });
  const draftsArea = el("section", { "data-testid": "drafts" });
  const historyArea = el("section", { "data-testid": "history" });
  const notificationsArea = el("section", { "data-testid": "notifications" });

  function describeComplaint(category: string, status: string): string {
    const lang = ctx.session.language;
    const categoryKey = `category.${category.replace(/([a-z0-9])([A-Z])/g, "$1_$2").toLowerCase()}`;
    const statusKey = `status.${status.toLowerCase()}`;
    return ctx.tr("citizen.submit.success", [label(categoryKey, lang), label(statusKey, lang)]);
  }

  async function push(imageBase64: string, location: LocationInput, noteText: string | null) {
    const { complaint } = await ctx.api.submitComplaint(imageBase64, location, noteText);
    clear(result);
    result.append(el("p", { class: "success" }, describeComplaint(complaint.category, complaint.status)));
    await Promise.all([renderHistory(), renderDrafts()]);
  }

  async function submit(event: Event) {
    event.preventDefault();
    const file = photo.files?.[0];
    if (!file) {
      ctx.banner(ctx.tr("citizen.submit.missing_photo"), "error");
      return;
    }
    const imageBase64 = await fileToBase64(file);
    const noteText = note.value.trim() || null;
    let location: LocationInput;
    if (modeSelect.value === "Manual") {
      location = { source: "Manual", manual_text: manualCity.value.trim() };
    } else {
      const coords = await currentPosition();
      location = { source: "Auto", ...coords };
    }
    try {
      await push(imageBase64, location, noteText);
    } catch (error) {
      if (error instanceof NetworkError) {
        ctx.session.saveDraft({
          imageBase64,
          source: location.source,
          latitude: location.latitude,
          longitude: location.longitude,
          manualText: location.manual_text,
          note: noteText,
        });
        ctx.banner(ctx.tr("citizen.drafts.saved"));
        await renderDrafts();
      } else if (error instanceof ApiError) {
        ctx.banner(error.message, "error");
      } else {
        throw error;
      }
    }
  }

  async function submitDraft(draft: Draft) {
    const location: LocationInput =
      draft.source === "Manual"
        ? { source: "Manual", manual_text: draft.manualText }
        : { source: "Auto", latitude: draft.latitude, longitude: draft.longitude };
    try {
      await push(draft.imageBase64, location, draft.note);
      ctx.session.removeDraft(draft.id);
      await renderDrafts();
    } catch (error) {
      if (error instanceof NetworkError) {
        ctx.banner(ctx.tr("error.network"), "error");
      } else if (error instanceof ApiError) {
        // the draft is no longer submittable (e.g. outside country); keep it visible
        ctx.banner(error.message, "error");
      } else {
        throw error;
      }
    }
  }

  async function renderDrafts() {
    const drafts = ctx.session.drafts();
    clear(draftsArea);
    if (drafts.length === 0) return;
    draftsArea.append(el("h3", {}, ctx.tr("citizen.drafts.title")));
    for (const draft of drafts) {
      draftsArea.append(
        el(
          "div",
          { class: "draft-row", "data-draft-id": draft.id },
          el("span", {}, `${draft.createdAt} ${draft.note ?? ""}`),
          el(
            "button",
            { type: "button", onclick: () => void submitDraft(draft) },
            ctx.tr("citizen.drafts.retry"),
          ),
        ),
      );
    }
  }

  async function renderHistory() {
    try {
      const { complaints } = await ctx.api.listComplaints();
      clear(historyArea);
      historyArea.append(el("h3", {}, ctx.tr("citizen.history.title")));
      if (complaints.length === 0) {
        historyArea.append(el("p", {}, ctx.tr("citizen.history.empty")));
        return;
      }
      const lang = ctx.session.language;
      for (const c of complaints) {
        const categoryKey = `category.${c.category.replace(/([a-z0-9])([A-Z])/g, "$1_$2").toLowerCase()}`;
        const statusKey = `status.${c.status.toLowerCase()}`;
        historyArea.append(
          el(
            "div",
            { class: "history-row", "data-complaint-id": c.id },
            el("span", { class: "chip category" }, label(categoryKey, lang)),
            el("span", { class: "chip status" }, label(statusKey, lang)),
            el("span", { class: "city" }, c.city),
            el("span", { class: "note" }, c.note ?? ""),
          ),
        );
      }
    } catch (error) {
      if (!(error instanceof NetworkError)) throw error;
    }
  }

  async function renderNotifications() {
    try {
      const { notifications } = await ctx.api.notifications();
      clear(notificationsArea);
      notificationsArea.append(el("h3", {}, ctx.tr("citizen.notifications.title")));
      if (notifications.length === 0) {
        notificationsArea.append(el("p", {}, ctx.tr("citizen.notifications.empty")));
        return;
      }
      for (const n of notifications) {
        const row = el(
          "div",
          { class: n.read ? "notification read" : "notification unread", "data-notification-id": n.id },
          el("span", {}, n.message),
        );
        if (!n.read) {
          row.append(
            el(
              "button",
              {
                type: "button",
                onclick: async () => {
                  await ctx.api.markRead(n.id);
                  await renderNotifications();
                },
              },
              ctx.tr("citizen.notifications.mark_read"),
            ),
          );
        }
        notificationsArea.append(row);
      }
    } catch (error) {
      if (!(error instanceof NetworkError)) throw error;
    }
  }

  const form = el(
    "form",
    { "data-testid": "submit-form", onsubmit: (event: Event) => void submit(event) },
    el("h3", {}, ctx.tr("citizen.submit.title")),
    el("label", {}, ctx.tr("citizen.submit.photo"), photo),
    modeSelect,
    manualCity,
    note,
    el("button", { type: "submit" }, ctx.tr("citizen.submit.button")),
  );

  void renderDrafts();
  void renderHistory();
  void renderNotifications();

  return el(
    "div",
    { "data-testid": "citizen-view" },
    form,
    result,
    draftsArea,
    historyArea,
    notificationsArea,
    statsPanel(ctx),
  );
}

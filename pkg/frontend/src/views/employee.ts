/** Employee triage board: the signed-in employee's city queue with status,
 * category, fake, map, email, and feedback actions. Every action round-trips
 * through the API and refreshes the row; a stale-revision conflict refetches
 * the whole board and says so. */

import { el, clear } from "../dom";
import { ApiError, NetworkError, type Complaint } from "../api";
import type { AppContext } from "../context";
import { label } from "../i18n";

const MODEL_CATEGORIES = ["DamagedRoad", "Flood", "Trash", "HomelessPeople"];
const STATUSES = ["Pending", "Processing", "Solved"];

function categoryKey(category: string): string {
  return `category.${category.replace(/([a-z0-9])([A-Z])/g, "$1_$2").toLowerCase()}`;
}

export function employeeView(ctx: AppContext): HTMLElement {
  const statusFilter = el("select", { name: "filter-status" });
  statusFilter.append(el("option", { value: "" }, ctx.tr("employee.filter.all")));
  for (const status of STATUSES) {
    statusFilter.append(el("option", { value: status }, label(`status.${status.toLowerCase()}`, ctx.session.language)));
  }
  const categoryFilter = el("select", { name: "filter-category" });
  categoryFilter.append(el("option", { value: "" }, ctx.tr("employee.filter.all")));
  for (const category of [...MODEL_CATEGORIES, "FakeComplaint"]) {
    categoryFilter.append(el("option", { value: category }, label(categoryKey(category), ctx.session.language)));
  }

  const board = el("div", { "data-testid": "triage-board" });

  async function act(action: () => Promise<unknown>) {
    try {
      await action();
      await renderBoard();
    } catch (error) {
      if (error instanceof ApiError) {
        ctx.banner(error.message, "error");
        if (error.code === "Conflict") {
          await renderBoard();
          ctx.banner(ctx.tr("employee.conflict.refreshed"));
        }
      } else if (error instanceof NetworkError) {
        ctx.banner(ctx.tr("error.network"), "error");
      } else {
        throw error;
      }
    }
  }

  function row(complaint: Complaint): HTMLElement {
    const lang = ctx.session.language;
    const reassignSelect = el("select", { name: `reassign-${complaint.id}` });
    for (const category of MODEL_CATEGORIES) {
      reassignSelect.append(el("option", { value: category }, label(categoryKey(category), lang)));
    }
    const actions = el(
      "span",
      { class: "actions" },
      el(
        "button",
        {
          type: "button",
          "data-action": "processing",
          onclick: () => void act(() => ctx.api.updateStatus(complaint.id, "Processing")),
        },
        ctx.tr("employee.action.processing"),
      ),
      el(
        "button",
        {
          type: "button",
          "data-action": "solved",
          onclick: () => void act(() => ctx.api.updateStatus(complaint.id, "Solved")),
        },
        ctx.tr("employee.action.solved"),
      ),
      reassignSelect,
      el(
        "button",
        {
          type: "button",
          "data-action": "reassign",
          onclick: () => void act(() => ctx.api.updateCategory(complaint.id, reassignSelect.value)),
        },
        ctx.tr("employee.action.reassign"),
      ),
      el(
        "button",
        {
          type: "button",
          "data-action": "fake",
          onclick: () => void act(() => ctx.api.markFake(complaint.id)),
        },
        ctx.tr("employee.action.fake"),
      ),
      el(
        "button",
        {
          type: "button",
          "data-action": "feedback",
          onclick: () => {
            const text = window.prompt(ctx.tr("employee.feedback.prompt"));
            if (text) void act(() => ctx.api.sendFeedback(complaint.id, text));
          },
        },
        ctx.tr("employee.action.feedback"),
      ),
      el(
        "button",
        {
          type: "button",
          "data-action": "map",
          onclick: () =>
            void act(async () => {
              const { url } = await ctx.api.mapLink(complaint.id);
              window.open(url, "_blank");
            }),
        },
        ctx.tr("employee.action.map"),
      ),
      el(
        "button",
        {
          type: "button",
          "data-action": "email",
          onclick: () =>
            void act(async () => {
              const { url } = await ctx.api.contactLink(complaint.id);
              window.open(url, "_self");
            }),
        },
        ctx.tr("employee.action.email"),
      ),
    );
    return el(
      "div",
      { class: "triage-row", "data-complaint-id": complaint.id },
      el("span", { class: "chip category" }, label(categoryKey(complaint.category), lang)),
      el("span", { class: "chip status" }, label(`status.${complaint.status.toLowerCase()}`, lang)),
      el("span", { class: "note" }, complaint.note ?? ""),
      actions,
    );
  }

  async function renderBoard() {
    try {
      const { complaints } = await ctx.api.listComplaints({
        status: statusFilter.value || undefined,
        category: categoryFilter.value || undefined,
      });
      clear(board);
      if (complaints.length === 0) {
        board.append(el("p", {}, ctx.tr("employee.board.empty")));
        return;
      }
      for (const complaint of complaints) board.append(row(complaint));
    } catch (error) {
      if (error instanceof ApiError) {
        ctx.banner(error.message, "error");
      } else if (error instanceof NetworkError) {
        ctx.banner(ctx.tr("error.network"), "error");
      } else {
        throw error;
      }
    }
  }

  const filters = el(
    "form",
    {
      "data-testid": "triage-filters",
      onsubmit: (event: Event) => {
        event.preventDefault();
        void renderBoard();
      },
    },
    el("label", {}, ctx.tr("employee.filter.status"), statusFilter),
    el("label", {}, ctx.tr("employee.filter.category"), categoryFilter),
    el("button", { type: "submit" }, ctx.tr("employee.filter.apply")),
  );

  void renderBoard();
  return el(
    "div",
    { "data-testid": "employee-view" },
    el("h3", {}, ctx.tr("employee.board.title", [ctx.session.current?.city ?? ""])),
    filters,
    board,
  );
}

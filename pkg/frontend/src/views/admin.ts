/** Admin panel: credential generation with client-rendered QR plus the
 * copyable payload text, the employee roster with removal, and any-city
 * dashboards. */

import { el, clear } from "../dom";
import { ApiError, NetworkError } from "../api";
import type { AppContext } from "../context";
import { qrSvg } from "../qr";
import { statsPanel } from "./statsPanel";

export function adminView(ctx: AppContext): HTMLElement {
  const employeeId = el("input", { name: "employee-id", placeholder: ctx.tr("admin.credential.id") });
  const firstName = el("input", { name: "first-name", placeholder: ctx.tr("admin.credential.first") });
  const lastName = el("input", { name: "last-name", placeholder: ctx.tr("admin.credential.last") });
  const city = el("input", { name: "city", placeholder: ctx.tr("admin.credential.city") });
  const credentialArea = el("div", { "data-testid": "credential-result" });
  const rosterArea = el("div", { "data-testid": "roster" });

  function surface(error: unknown): void {
    if (error instanceof ApiError) {
      ctx.banner(error.message, "error");
    } else if (error instanceof NetworkError) {
      ctx.banner(ctx.tr("error.network"), "error");
    } else {
      throw error;
    }
  }

  async function generate(event: Event) {
    event.preventDefault();
    try {
      const { payload } = await ctx.api.generateCredential(
        employeeId.value.trim(),
        firstName.value.trim(),
        lastName.value.trim(),
        city.value.trim(),
      );
      clear(credentialArea);
      const payloadBox = el("input", {
        name: "payload-text",
        readonly: true,
        value: payload,
        "data-testid": "payload-text",
      });
      payloadBox.value = payload;
      const qrBox = el("div", { class: "qr", "data-testid": "qr" });
      qrBox.innerHTML = await qrSvg(payload);
      credentialArea.append(
        el("h4", {}, ctx.tr("admin.credential.payload")),
        qrBox,
        payloadBox,
        el(
          "button",
          {
            type: "button",
            onclick: async () => {
              await navigator.clipboard.writeText(payload);
              ctx.banner(ctx.tr("admin.credential.copied"));
            },
          },
          ctx.tr("admin.credential.copy"),
        ),
      );
    } catch (error) {
      surface(error);
    }
  }

  async function renderRoster() {
    try {
      const { employees } = await ctx.api.listEmployees();
      clear(rosterArea);
      rosterArea.append(el("h3", {}, ctx.tr("admin.roster.title")));
      if (employees.length === 0) {
        rosterArea.append(el("p", {}, ctx.tr("admin.roster.empty")));
        return;
      }
      for (const employee of employees) {
        rosterArea.append(
          el(
            "div",
            { class: "roster-row", "data-account-id": employee.id },
            el("span", {}, `${employee.display_name} (${employee.city ?? ""}) ${employee.email}`),
            el(
              "button",
              {
                type: "button",
                "data-action": "remove",
                onclick: async () => {
                  if (!window.confirm(ctx.tr("admin.roster.confirm"))) return;
                  try {
                    await ctx.api.removeEmployee(employee.id);
                    ctx.banner(ctx.tr("admin.roster.removed"));
                    await renderRoster();
                  } catch (error) {
                    surface(error);
                  }
                },
              },
              ctx.tr("admin.roster.remove"),
            ),
          ),
        );
      }
    } catch (error) {
      surface(error);
    }
  }

  const credentialForm = el(
    "form",
    { "data-testid": "credential-form", onsubmit: (event: Event) => void generate(event) },
    el("h3", {}, ctx.tr("admin.credential.title")),
    employeeId,
    firstName,
    lastName,
    city,
    el("button", { type: "submit" }, ctx.tr("admin.credential.generate")),
  );

  void renderRoster();
  return el(
    "div",
    { "data-testid": "admin-view" },
    credentialForm,
    credentialArea,
    rosterArea,
    statsPanel(ctx),
  );
}

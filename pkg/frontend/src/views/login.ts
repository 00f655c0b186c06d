/** Sign-in plus the two registration paths. Employee registration takes the
 * pasted credential payload text; a camera scanner is an optional extra the
 * desk flow never depends on. */

import { el } from "../dom";
import { ApiError, NetworkError } from "../api";
import type { AppContext } from "../context";

function surface(ctx: AppContext, error: unknown): void {
  if (error instanceof ApiError) {
    ctx.banner(error.message, "error");
  } else if (error instanceof NetworkError) {
    ctx.banner(ctx.tr("error.network"), "error");
  } else {
    throw error;
  }
}

export function loginView(ctx: AppContext): HTMLElement {
  const email = el("input", { name: "email", type: "email", placeholder: ctx.tr("login.email") });
  const password = el("input", {
    name: "password",
    type: "password",
    placeholder: ctx.tr("login.password"),
  });

  const loginForm = el(
    "form",
    {
      "data-testid": "login-form",
      onsubmit: async (event: Event) => {
        event.preventDefault();
        try {
          const result = await ctx.api.login(email.value, password.value);
          ctx.session.signIn({
            token: result.token,
            accountId: result.account_id,
            role: result.role as "Citizen" | "CityEmployee" | "CentralAdmin",
            city: result.city,
            email: email.value,
          });
          ctx.refresh();
        } catch (error) {
          surface(ctx, error);
        }
      },
    },
    el("h3", {}, ctx.tr("login.title")),
    email,
    password,
    el("button", { type: "submit" }, ctx.tr("login.submit")),
  );

  // citizen registration + email verification
  const regEmail = el("input", { name: "reg-email", type: "email", placeholder: ctx.tr("login.email") });
  const regPassword = el("input", {
    name: "reg-password",
    type: "password",
    placeholder: ctx.tr("login.password"),
  });
  const regName = el("input", { name: "reg-name", placeholder: ctx.tr("register.name") });
  const verifyToken = el("input", {
    name: "verify-token",
    placeholder: ctx.tr("register.verify.token"),
  });

  const citizenForm = el(
    "form",
    {
      "data-testid": "register-citizen-form",
      onsubmit: async (event: Event) => {
        event.preventDefault();
        try {
          await ctx.api.registerCitizen(
            regEmail.value,
            regPassword.value,
            regName.value,
            ctx.session.language,
          );
          ctx.banner(ctx.tr("register.verify.hint"));
        } catch (error) {
          surface(ctx, error);
        }
      },
    },
    el("h3", {}, ctx.tr("register.citizen.title")),
    regEmail,
    regPassword,
    regName,
    el("button", { type: "submit" }, ctx.tr("register.submit")),
    el(
      "div",
      {},
      verifyToken,
      el(
        "button",
        {
          type: "button",
          onclick: async () => {
            try {
              await ctx.api.verifyEmail(verifyToken.value.trim());
              ctx.banner(ctx.tr("register.verify.done"));
            } catch (error) {
              surface(ctx, error);
            }
          },
        },
        ctx.tr("register.verify.submit"),
      ),
    ),
  );

  // employee registration via credential payload
  const payload = el("textarea", {
    name: "credential-payload",
    placeholder: ctx.tr("register.employee.payload"),
  });
  const empEmail = el("input", { name: "emp-email", type: "email", placeholder: ctx.tr("login.email") });
  const empPassword = el("input", {
    name: "emp-password",
    type: "password",
    placeholder: ctx.tr("login.password"),
  });

  const employeeForm = el(
    "form",
    {
      "data-testid": "register-employee-form",
      onsubmit: async (event: Event) => {
        event.preventDefault();
        try {
          await ctx.api.registerEmployee(
            payload.value.trim(),
            empEmail.value,
            empPassword.value,
            ctx.session.language,
          );
          const result = await ctx.api.login(empEmail.value, empPassword.value);
          ctx.session.signIn({
            token: result.token,
            accountId: result.account_id,
            role: result.role as "CityEmployee",
            city: result.city,
            email: empEmail.value,
          });
          ctx.refresh();
        } catch (error) {
          surface(ctx, error);
        }
      },
    },
    el("h3", {}, ctx.tr("register.employee.title")),
    payload,
    empEmail,
    empPassword,
    el("button", { type: "submit" }, ctx.tr("register.submit")),
  );

  return el("div", { "data-testid": "login-view" }, loginForm, citizenForm, employeeForm);
}

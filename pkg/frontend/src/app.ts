/** Application shell: role-routed views, language toggle, banner area.
 *
 * The view for a role is the only one ever constructed; employee and admin
 * controls are unreachable in a citizen session by construction. All
 * authority checks still live server-side.
 */

import { el, clear } from "./dom";
import { ApiClient } from "./api";
import { SessionStore } from "./session";
import { translator, type AppContext } from "./context";
import { loginView } from "./views/login";
import { citizenView } from "./views/citizen";
import { employeeView } from "./views/employee";
import { adminView } from "./views/admin";

export interface AppOptions {
  baseUrl: string;
  storage?: Storage;
}

export class App {
  readonly session: SessionStore;
  readonly api: ApiClient;
  private root: HTMLElement | null = null;
  private bannerArea = el("div", { "data-testid": "banners", class: "banners" });

  constructor(options: AppOptions) {
    this.session = new SessionStore(options.storage ?? window.localStorage);
    this.api = new ApiClient(options.baseUrl, () => ({
      token: this.session.token,
      language: this.session.language,
    }));
  }

  context(): AppContext {
    return {
      api: this.api,
      session: this.session,
      tr: translator(this.session),
      banner: (text, kind = "info") => this.showBanner(text, kind),
      refresh: () => this.render(),
    };
  }

  mount(root: HTMLElement): void {
    this.root = root;
    this.render();
  }

  showBanner(text: string, kind: "info" | "error"): void {
    const banner = el("div", { class: `banner ${kind}`, role: "alert" }, text);
    this.bannerArea.append(banner);
    setTimeout(() => banner.remove(), 6000);
  }

  render(): void {
    if (!this.root) return;
    const ctx = this.context();
    clear(this.root);
    clear(this.bannerArea);

    const header = el(
      "header",
      {},
      el("h1", {}, ctx.tr("app.title")),
      el(
        "button",
        {
          type: "button",
          "data-testid": "language-toggle",
          onclick: () => {
            this.session.setLanguage(this.session.language === "en" ? "bn" : "en");
            this.render();
          },
        },
        ctx.tr("app.language.switch"),
      ),
    );
    const session = this.session.current;
    if (session) {
      header.append(
        el("span", { class: "who" }, session.email),
        el(
          "button",
          {
            type: "button",
            "data-testid": "logout",
            onclick: () => {
              this.session.signOut();
              this.render();
            },
          },
          ctx.tr("app.logout"),
        ),
      );
    }

    let view: HTMLElement;
    if (!session) {
      view = loginView(ctx);
    } else if (session.role === "CentralAdmin") {
      view = adminView(ctx);
    } else if (session.role === "CityEmployee") {
      view = employeeView(ctx);
    } else {
      view = citizenView(ctx);
    }
    this.root.append(header, this.bannerArea, view);
  }
}

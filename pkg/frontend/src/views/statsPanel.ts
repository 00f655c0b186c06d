/** City dashboards: both charts for a chosen city, or nationwide when the
 * city box is left empty. Citizens and the admin share this panel. */

import { el, clear } from "../dom";
import { renderChart } from "../charts";
import type { AppContext } from "../context";

export function statsPanel(ctx: AppContext): HTMLElement {
  const chartArea = el("div", { "data-testid": "chart-area" });
  const cityInput = el("input", { name: "stats-city", placeholder: ctx.tr("stats.city") });

  async function load() {
    const city = cityInput.value.trim() || undefined;
    const [status, category] = await Promise.all([
      ctx.api.statsStatus(city),
      ctx.api.statsCategory(city),
    ]);
    clear(chartArea);
    chartArea.append(
      renderChart(status, ctx.session.language),
      renderChart(category, ctx.session.language),
    );
  }

  const panel = el(
    "section",
    { "data-testid": "stats-panel" },
    el("h3", {}, ctx.tr("stats.title")),
    el(
      "form",
      {
        onsubmit: (event: Event) => {
          event.preventDefault();
          void load();
        },
      },
      cityInput,
      el("button", { type: "submit" }, ctx.tr("stats.load")),
    ),
    chartArea,
  );
  void load();
  return panel;
}

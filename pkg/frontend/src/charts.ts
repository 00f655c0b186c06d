/** Chart rendering for statistics series.
 *
 * Renders exactly the points the API returned, in order; an all-zero series
 * shows labeled zero bars plus an explicit empty-state note instead of a
 * blank region.
 */

import { el } from "./dom";
import { label, t, type Language } from "./i18n";
import type { Series } from "./api";

export function renderChart(series: Series, language: Language): HTMLElement {
  const max = Math.max(...series.points.map((p) => p.value), 0);
  const titleKey = series.kind === "status" ? "chart.status.title" : "chart.category.title";
  const root = el(
    "div",
    { class: "chart", "data-testid": `chart-${series.kind}`, "data-scope": series.scope },
    el("h4", {}, t(titleKey, language)),
  );
  for (const point of series.points) {
    const percent = max > 0 ? Math.round((point.value / max) * 100) : 0;
    root.append(
      el(
        "div",
        { class: "chart-row", "data-label-key": point.label_key },
        el("span", { class: "chart-label" }, label(point.label_key, language)),
        el("span", {
          class: "chart-bar",
          style: `display:inline-block;height:0.8em;background:#2b6cb0;width:${percent}%;min-width:${point.value > 0 ? 2 : 0}px`,
        }),
        el("span", { class: "chart-value" }, String(point.value)),
      ),
    );
  }
  if (max === 0) {
    root.append(el("p", { class: "chart-empty", "data-testid": "chart-empty" }, t("chart.empty", language)));
  }
  return root;
}

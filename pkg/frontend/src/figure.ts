import { RunRecord } from "./csv.js";
import { aggregate, SettingSeries, totalFailedSets } from "./series.js";
import { LABEL, STYLE } from "./style.js";

export const PANELS = ["a", "b", "c", "d"] as const;
export type Panel = (typeof PANELS)[number];

const PANEL_TITLE: Record<Panel, string> = {
  a: "(a) repeated task draws",
  b: "(b) random user placements",
  c: "(c) growing user count",
  d: "(d) growing task count",
};

const PANEL_X_LABEL: Record<Panel, string> = {
  a: "task draw",
  b: "placement draw",
  c: "number of users",
  d: "number of tasks",
};

const WIDTH = 720;
const HEIGHT = 440;
const MARGIN = { top: 56, bottom: 52, left: 62, right: 30 };
const RIGHT_AXIS_EXTRA = 44;

/** Rounds a positive value up to a 1/2/5 grid step giving 4..8 ticks. */
function niceStep(span: number): number {
  const raw = span / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= raw) {
      return m * mag;
    }
  }
  return 10 * mag;
}

function axisTicks(max: number): number[] {
  const top = max > 0 ? max : 1;
  const step = niceStep(top);
  const ticks: number[] = [];
  for (let v = 0; v <= top + step * 0.999; v += step) {
    ticks.push(Number(v.toFixed(6)));
  }
  return ticks;
}

const px = (v: number): string => v.toFixed(2);

const fmt = (v: number): string =>
  Number.isInteger(v) ? String(v) : String(Number(v.toFixed(2)));

function text(
  x: number,
  y: number,
  body: string,
  anchor: string,
  extra = ""
): string {
  return (
    `<text x="${px(x)}" y="${px(y)}" text-anchor="${anchor}" ` +
    `font-family="sans-serif" font-size="12"${extra}>${body}</text>`
  );
}

/** Renders one panel of run records as a standalone SVG document. */
export function renderFigure(records: RunRecord[], panel: Panel): string {
  const series = aggregate(records);
  const withFailures = totalFailedSets(records) > 0;
  const right = MARGIN.right + (withFailures ? RIGHT_AXIS_EXTRA : 0);
  const plotW = WIDTH - MARGIN.left - right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const x0 = MARGIN.left;
  const y0 = MARGIN.top;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const sx = (x: number): number =>
    xMax === xMin ? x0 + plotW / 2 : x0 + ((x - xMin) / (xMax - xMin)) * plotW;

  const yTicks = axisTicks(
    Math.max(...series.flatMap((s) => s.points.map((p) => p.meanQPost)))
  );
  const yTop = yTicks[yTicks.length - 1] as number;
  const sy = (v: number): number => y0 + plotH - (v / yTop) * plotH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
      `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    text(WIDTH / 2, 22, PANEL_TITLE[panel], "middle", ' font-size="14"'),
  ];

  parts.push(`<g class="axis-left">`);
  parts.push(
    `<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x0)}" ` +
      `y2="${px(y0 + plotH)}" stroke="black"/>`
  );
  for (const v of yTicks) {
    const y = sy(v);
    parts.push(
      `<line x1="${px(x0 - 4)}" y1="${px(y)}" x2="${px(x0)}" ` +
        `y2="${px(y)}" stroke="black"/>`
    );
    parts.push(text(x0 - 8, y + 4, fmt(v), "end"));
  }
  parts.push(
    text(16, y0 + plotH / 2, "mean qubits after merging", "middle",
      ` transform="rotate(-90 16 ${px(y0 + plotH / 2)})"`)
  );
  parts.push(`</g>`);

  parts.push(`<g class="axis-bottom">`);
  parts.push(
    `<line x1="${px(x0)}" y1="${px(y0 + plotH)}" x2="${px(x0 + plotW)}" ` +
      `y2="${px(y0 + plotH)}" stroke="black"/>`
  );
  const xTickValues =
    xMax === xMin
      ? [xMin]
      : axisTicks(xMax - xMin).map((v) => v + xMin).filter((v) => v <= xMax);
  for (const v of xTickValues) {
    const x = sx(v);
    parts.push(
      `<line x1="${px(x)}" y1="${px(y0 + plotH)}" x2="${px(x)}" ` +
        `y2="${px(y0 + plotH + 4)}" stroke="black"/>`
    );
    parts.push(text(x, y0 + plotH + 18, fmt(v), "middle"));
  }
  parts.push(text(x0 + plotW / 2, HEIGHT - 14, PANEL_X_LABEL[panel], "middle"));
  parts.push(`</g>`);

  let fTop = 1;
  if (withFailures) {
    const fTicks = axisTicks(
      Math.max(...series.flatMap((s) => s.points.map((p) => p.failedSets)))
    );
    fTop = fTicks[fTicks.length - 1] as number;
    const xr = x0 + plotW;
    parts.push(`<g class="axis-right">`);
    parts.push(
      `<line x1="${px(xr)}" y1="${px(y0)}" x2="${px(xr)}" ` +
        `y2="${px(y0 + plotH)}" stroke="black"/>`
    );
    for (const v of fTicks) {
      const y = y0 + plotH - (v / fTop) * plotH;
      parts.push(
        `<line x1="${px(xr)}" y1="${px(y)}" x2="${px(xr + 4)}" ` +
          `y2="${px(y)}" stroke="black"/>`
      );
      parts.push(text(xr + 8, y + 4, fmt(v), "start"));
    }
    parts.push(
      text(WIDTH - 12, y0 + plotH / 2, "failed sets", "middle",
        ` transform="rotate(90 ${px(WIDTH - 12)} ${px(y0 + plotH / 2)})"`)
    );
    parts.push(`</g>`);
  }

  const sf = (v: number): number => y0 + plotH - (v / fTop) * plotH;
  for (const s of series) {
    parts.push(...seriesMarks(s, sx, sy));
    if (withFailures) {
      const pts = s.points
        .map((p) => `${px(sx(p.x))},${px(sf(p.failedSets))}`)
        .join(" ");
      parts.push(
        `<polyline class="failures failures-${s.setting}" points="${pts}" ` +
          `fill="none" stroke="${STYLE[s.setting].color}" ` +
          `stroke-width="1" stroke-dasharray="4 3"/>`
      );
    }
  }

  parts.push(`<g class="legend">`);
  series.forEach((s, k) => {
    const lx = x0 + 12 + k * 96;
    const ly = y0 + 8;
    const { color, mark } = STYLE[s.setting];
    if (mark === "line") {
      parts.push(
        `<line x1="${px(lx)}" y1="${px(ly)}" x2="${px(lx + 18)}" ` +
          `y2="${px(ly)}" stroke="${color}" stroke-width="1.5"/>`
      );
    } else {
      parts.push(`<circle cx="${px(lx + 9)}" cy="${px(ly)}" r="3" fill="${color}"/>`);
    }
    parts.push(text(lx + 24, ly + 4, LABEL[s.setting], "start"));
  });
  parts.push(`</g>`);

  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}

function seriesMarks(
  s: SettingSeries,
  sx: (x: number) => number,
  sy: (v: number) => number
): string[] {
  const { color, mark } = STYLE[s.setting];
  if (mark === "line") {
    const pts = s.points
      .map((p) => `${px(sx(p.x))},${px(sy(p.meanQPost))}`)
      .join(" ");
    return [
      `<polyline class="series series-${s.setting}" points="${pts}" ` +
        `fill="none" stroke="${color}" stroke-width="1.5"/>`,
    ];
  }
  return [
    `<g class="series series-${s.setting}">`,
    ...s.points.map(
      (p) =>
        `<circle cx="${px(sx(p.x))}" cy="${px(sy(p.meanQPost))}" r="3" ` +
        `fill="${color}"/>`
    ),
    `</g>`,
  ];
}

import { Setting } from "./csv.js";

export interface SeriesStyle {
  /** Red marks the satellite-assisted settings, black the rest. */
  color: "red" | "black";
  /** Chain-capable settings draw as lines, the rest as dot markers. */
  mark: "line" | "dot";
}

export const STYLE: Record<Setting, SeriesStyle> = {
  bm: { color: "black", mark: "dot" },
  sed: { color: "red", mark: "dot" },
  ec: { color: "black", mark: "line" },
  sed_ec: { color: "red", mark: "line" },
};

export const LABEL: Record<Setting, string> = {
  bm: "BM",
  sed: "SED",
  ec: "EC",
  sed_ec: "SED+EC",
};

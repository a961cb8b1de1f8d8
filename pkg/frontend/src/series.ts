import { RunRecord, SETTINGS, Setting } from "./csv.js";

export interface SeriesPoint {
  x: number;
  meanQPost: number;
  failedSets: number;
}

export interface SettingSeries {
  setting: Setting;
  points: SeriesPoint[];
}

/** Per-setting curves over ascending sweep values: mean q_post, failed sets. */
export function aggregate(records: RunRecord[]): SettingSeries[] {
  const series: SettingSeries[] = [];
  for (const setting of SETTINGS) {
    const mine = records.filter((r) => r.setting === setting);
    if (mine.length === 0) {
      continue;
    }
    const values = [...new Set(mine.map((r) => r.sweep))].sort((a, b) => a - b);
    const points = values.map((x) => {
      const cell = mine.filter((r) => r.sweep === x);
      return {
        x,
        meanQPost: cell.reduce((acc, r) => acc + r.qPost, 0) / cell.length,
        failedSets: cell.reduce((acc, r) => acc + r.setFailed, 0),
      };
    });
    series.push({ setting, points });
  }
  return series;
}

export function totalFailedSets(records: RunRecord[]): number {
  return records.reduce((acc, r) => acc + r.setFailed, 0);
}

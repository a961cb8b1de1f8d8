export const HEADER =
  "sweep,trial,setting,q_pre,q_post,tasks_total,tasks_failed,set_failed,seed";

export function row(
  sweep: number,
  trial: number,
  setting: string,
  qPost: number,
  failed = 0
): string {
  return [
    sweep,
    trial,
    setting,
    qPost + 4,
    qPost,
    5,
    failed,
    failed > 0 ? 1 : 0,
    "17195319236771816063",
  ].join(",");
}

export function csv(rows: string[]): string {
  return [HEADER, ...rows].join("\n") + "\n";
}

/** One full four-setting sweep with two values and no failures. */
export function cleanCsv(): string {
  const rows: string[] = [];
  for (const [k, setting] of ["bm", "sed", "ec", "sed_ec"].entries()) {
    rows.push(row(0, 0, setting, 10 + k));
    rows.push(row(0, 1, setting, 12 + k));
    rows.push(row(5, 0, setting, 14 + k));
    rows.push(row(5, 1, setting, 18 + k));
  }
  return csv(rows);
}

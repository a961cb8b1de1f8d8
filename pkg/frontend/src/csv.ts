import Papa from "papaparse";

/** One simulation run row, as written by `entplan simulate`. */
export interface RunRecord {
  sweep: number;
  trial: number;
  setting: Setting;
  qPre: number;
  qPost: number;
  tasksTotal: number;
  tasksFailed: number;
  setFailed: number;
  /** 64-bit value; kept as text to avoid precision loss. */
  seed: string;
}

export const SETTINGS = ["bm", "sed", "ec", "sed_ec"] as const;
export type Setting = (typeof SETTINGS)[number];

const REQUIRED = [
  "sweep",
  "trial",
  "setting",
  "q_pre",
  "q_post",
  "tasks_total",
  "tasks_failed",
  "set_failed",
  "seed",
] as const;

export class CsvError extends Error {}

function toCount(row: Record<string, string>, field: string, line: number): number {
  const raw = row[field] ?? "";
  if (!/^\d+$/.test(raw)) {
    throw new CsvError(`line ${line}: field ${field} is not a count: '${raw}'`);
  }
  return Number(raw);
}

/** Parses simulation CSV text; rejects missing columns and empty bodies. */
export function parseRecords(text: string): RunRecord[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  const missing = REQUIRED.filter((f) => !fields.includes(f));
  if (missing.length > 0) {
    throw new CsvError(`missing columns: ${missing.join(", ")}`);
  }
  if (parsed.data.length === 0) {
    throw new CsvError("CSV has a header but no data rows");
  }
  return parsed.data.map((row, k) => {
    const line = k + 2;
    const setting = row["setting"] ?? "";
    if (!(SETTINGS as readonly string[]).includes(setting)) {
      throw new CsvError(`line ${line}: unknown setting '${setting}'`);
    }
    return {
      sweep: toCount(row, "sweep", line),
      trial: toCount(row, "trial", line),
      setting: setting as Setting,
      qPre: toCount(row, "q_pre", line),
      qPost: toCount(row, "q_post", line),
      tasksTotal: toCount(row, "tasks_total", line),
      tasksFailed: toCount(row, "tasks_failed", line),
      setFailed: toCount(row, "set_failed", line),
      seed: row["seed"] ?? "",
    };
  });
}

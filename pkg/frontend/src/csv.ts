/**
 * Strict CSV reader for the simulator's output files.
 *
 * Every file has one header row and purely numeric data columns; anything
 * else is a schema violation and the error must name the offending column
 * so the caller can surface it.
 */

export interface Table {
  header: string[];
  /** Row-major values, rows.length x header.length. */
  rows: number[][];
}

export function parseCsv(text: string, file: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`${file}: empty file`);
  }
  const header = lines[0]!.split(",").map((name) => name.trim());
  if (header.some((name) => name.length === 0)) {
    throw new Error(`${file}: blank column name in header`);
  }
  if (new Set(header).size !== header.length) {
    throw new Error(`${file}: duplicate column names in header`);
  }
  const rows: number[][] = [];
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r]!.split(",");
    if (cells.length !== header.length) {
      throw new Error(
        `${file}: row ${r} has ${cells.length} fields, header has ${header.length}`,
      );
    }
    const row: number[] = [];
    for (let c = 0; c < cells.length; c++) {
      const cell = cells[c]!.trim();
      const value = cell === "" ? NaN : Number(cell);
      if (!Number.isFinite(value)) {
        throw new Error(`${file}: column ${header[c]}, row ${r}: not a finite number: "${cell}"`);
      }
      row.push(value);
    }
    rows.push(row);
  }
  return { header, rows };
}

/** Extract one column by name; a missing name is a schema mismatch. */
export function column(table: Table, name: string, file: string): number[] {
  const index = table.header.indexOf(name);
  if (index < 0) {
    throw new Error(`${file}: missing column ${name} (have: ${table.header.join(", ")})`);
  }
  return table.rows.map((row) => row[index]!);
}

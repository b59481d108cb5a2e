/**
 * The discrete 17-step judgment scale: nine dominance grades in each
 * direction plus equality. Sliders index into this list, so every value
 * the client can submit is on-scale by construction.
 */

export interface ScaleStep {
  /** exact rational as the server expects it, e.g. "1/7", "1", "3" */
  value: string;
  /** verbal anchor shown under the slider */
  anchor: string;
  /** signed grade: -8 (1/9) .. 0 (equal) .. +8 (9) */
  grade: number;
}

const ANCHORS: Record<number, string> = {
  1: "Equal importance",
  2: "Weak preference",
  3: "Moderate preference",
  4: "Moderate plus",
  5: "Strong preference",
  6: "Strong plus",
  7: "Very strong preference",
  8: "Very, very strong",
  9: "Extreme preference",
};

function describe(k: number, inverted: boolean): string {
  const base = ANCHORS[k];
  return inverted ? base.replace("preference", "preference (reversed)") + " for the second" : base;
}

export const SCALE: readonly ScaleStep[] = (() => {
  const steps: ScaleStep[] = [];
  for (let k = 9; k >= 2; k--) {
    steps.push({ value: `1/${k}`, anchor: describe(k, true), grade: -(k - 1) });
  }
  steps.push({ value: "1", anchor: ANCHORS[1], grade: 0 });
  for (let k = 2; k <= 9; k++) {
    steps.push({ value: `${k}`, anchor: describe(k, false), grade: k - 1 });
  }
  return steps;
})();

export const EQUAL_INDEX = 8;

export function stepAt(index: number): ScaleStep {
  const step = SCALE[index];
  if (!step) throw new Error(`scale index out of range: ${index}`);
  return step;
}

export function indexOfValue(value: string): number {
  const i = SCALE.findIndex((s) => s.value === value);
  if (i < 0) throw new Error(`value not on the scale: ${value}`);
  return i;
}

/** "3" -> "A is moderately more important", "1/3" -> mirrored reading. */
export function readingFor(index: number, rowLabel: string, colLabel: string): string {
  const step = stepAt(index);
  if (step.grade === 0) return `${rowLabel} and ${colLabel} matter equally`;
  const [stronger, weaker] = step.grade > 0 ? [rowLabel, colLabel] : [colLabel, rowLabel];
  const magnitude = Math.abs(step.grade) + 1;
  return `${stronger} over ${weaker} at ${magnitude}`;
}

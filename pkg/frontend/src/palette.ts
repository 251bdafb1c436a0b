/** Fixed knowledge-area ordering and color palette, shared by every chart. */

export const KA_NAMES = [
  'Miscellaneous',
  'Data',
  'Software',
  'Component',
  'Connection',
  'System',
  'Human',
  'Organizational',
  'Societal',
] as const;

// one fixed color per area so pies and bars stay comparable across views
export const KA_COLORS = [
  '#9acd32', // Miscellaneous: lime
  '#1f77b4', // Data: blue
  '#ff7f0e', // Software: orange
  '#8c564b', // Component: brown
  '#d62728', // Connection: red
  '#2ca02c', // System: green
  '#e377c2', // Human: pink
  '#7f7f7f', // Organizational: gray
  '#bcbd22', // Societal: olive
] as const;

export function areaName(index: number): string {
  return KA_NAMES[index] ?? `KA${index}`;
}

export function areaColor(index: number): string {
  return KA_COLORS[index] ?? '#000000';
}

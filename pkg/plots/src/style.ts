/** Pinned figure style: identical inputs must yield identical bytes. */
export const STYLE = {
  width: 640,
  height: 420,
  margin: { top: 36, right: 24, bottom: 48, left: 64 },
  font: "Helvetica, Arial, sans-serif",
  fontSize: 12,
  titleSize: 14,
  axisColor: "#333333",
  gridColor: "#dddddd",
  line: "#1f77b4",
  line2: "#d62728",
  accent: "#2ca02c",
  marker: "#7f2fa6",
  blowup: "#cc0000",
  bandFill: "#c6dbef",
} as const;

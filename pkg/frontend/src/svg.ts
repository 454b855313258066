/** Minimal deterministic SVG string building. */

export type Attrs = Record<string, string | number>;

export function fmt(x: number): string {
  // fixed 2-decimal pixel coordinates keep output byte-stable
  return x.toFixed(2);
}

export function el(tag: string, attrs: Attrs, children: string[] = []): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join(" ");
  const open = parts.length > 0 ? `<${tag} ${parts}>` : `<${tag}>`;
  if (children.length === 0) {
    return parts.length > 0 ? `<${tag} ${parts}/>` : `<${tag}/>`;
  }
  return `${open}${children.join("")}</${tag}>`;
}

export function text(x: number, y: number, content: string, extra: Attrs = {}): string {
  return el("text", { x, y, ...extra }, [escapeXml(content)]);
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
  "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/** Linear and log10 axis scales with simple tick generation. */

export interface Scale {
  (x: number): number;
  domain: [number, number];
  range: [number, number];
  log: boolean;
  ticks(): number[];
}

export function makeScale(domain: [number, number], range: [number, number], log = false): Scale {
  const [d0, d1] = log ? [Math.log10(domain[0]), Math.log10(domain[1])] : domain;
  const span = d1 - d0 || 1;
  const f = ((x: number) => {
    const t = ((log ? Math.log10(x) : x) - d0) / span;
    return range[0] + t * (range[1] - range[0]);
  }) as Scale;
  f.domain = domain;
  f.range = range;
  f.log = log;
  f.ticks = () => (log ? logTicks(domain[0], domain[1]) : linearTicks(domain[0], domain[1]));
  return f;
}

function linearTicks(lo: number, hi: number, count = 6): number[] {
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => (hi - lo) / s <= count) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = start; t <= hi + 1e-9; t += step) ticks.push(Number(t.toPrecision(12)));
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  // powers of 10, padded with 2x/4x points when the decade span is short
  const ticks: number[] = [];
  const eLo = Math.floor(Math.log10(lo));
  const eHi = Math.ceil(Math.log10(hi));
  const short = eHi - eLo <= 3;
  for (let e = eLo; e <= eHi; e++) {
    for (const m of short ? [1, 2, 4] : [1]) {
      const t = m * Math.pow(10, e);
      if (t >= lo * 0.999 && t <= hi * 1.001) ticks.push(t);
    }
  }
  return ticks;
}

import { z } from 'zod';

// Exact rational string as used in the pipeline's JSON files: "p" or
// "p/q" with positive q. No floats anywhere.
export const RATIONAL_RE = /^-?[0-9]+(\/[1-9][0-9]*)?$/;

export const rationalString = z.string().regex(RATIONAL_RE, 'not a rational string');

// A cyclotomic number on the power basis of Q(zeta_n): n and the list
// of rational coordinates 1, z, ..., z^(phi(n)-1).
export const cycNumSchema = z
  .object({
    n: z.number().int().min(1),
    c: z.array(rationalString),
  })
  .strict();

export type CycJson = z.infer<typeof cycNumSchema>;

export function rationalCyc(value: string): CycJson {
  if (!RATIONAL_RE.test(value)) {
    throw new Error(`not a rational string: ${value}`);
  }
  return { n: 1, c: [value] };
}

export function isZeroCyc(x: CycJson): boolean {
  return x.c.every((coord) => /^-?0+$/.test(coord.split('/')[0]));
}

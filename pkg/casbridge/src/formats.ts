import { z } from 'zod';
import { cycNumSchema, isZeroCyc } from './cycjson.js';

// Zod mirrors of the pipeline's published JSON file formats. Every
// exported file must parse here before it is written, and the pipeline
// validates again on ingest with its own JSON Schemas; the two checks
// are intentionally independent.

export const characterFileSchema = z
  .object({
    modulus: z.number().int().min(1),
    zeta_order: z.number().int().min(1),
    generators: z.array(z.tuple([z.number().int().min(0), cycNumSchema])),
    label: z.string(),
    source: z.string().optional(),
  })
  .strict();

export type CharacterFile = z.infer<typeof characterFileSchema>;

const basisFormSchema = z
  .object({
    label: z.string(),
    coeffs: z.record(z.string().regex(/^[1-9][0-9]*$/), cycNumSchema),
  })
  .strict();

export const basisFileSchema = z
  .object({
    level: z.number().int().min(1),
    weight: z.number().int().min(1),
    character: z.string(),
    jmax: z.number().int().min(1),
    forms: z.array(basisFormSchema),
    source: z.string().optional(),
  })
  .strict()
  .superRefine((file, ctx) => {
    file.forms.forEach((form, i) => {
      const exps = Object.keys(form.coeffs).map(Number);
      if (exps.some((j) => j > file.jmax)) {
        ctx.addIssue({
          code: z.ZodIssueCode.custom,
          path: ['forms', i],
          message: `form ${form.label} has a coefficient past jmax ${file.jmax}`,
        });
      }
      if (!Object.values(form.coeffs).some((c) => !isZeroCyc(c))) {
        ctx.addIssue({
          code: z.ZodIssueCode.custom,
          path: ['forms', i],
          message: `form ${form.label} is identically zero`,
        });
      }
    });
  });

export type BasisFile = z.infer<typeof basisFileSchema>;

export const operatorFileSchema = z
  .object({
    label: z.string(),
    level: z.number().int().min(1).optional(),
    weight: z.number().int().min(1).optional(),
    entries: z.array(z.array(cycNumSchema)),
    source: z.string().optional(),
  })
  .strict()
  .superRefine((file, ctx) => {
    const rows = file.entries.length;
    if (file.entries.some((row) => row.length !== rows)) {
      ctx.addIssue({
        code: z.ZodIssueCode.custom,
        path: ['entries'],
        message: `operator ${file.label} is not square`,
      });
    }
  });

export type OperatorFile = z.infer<typeof operatorFileSchema>;

export const dimFragmentSchema = z
  .object({
    classical_dim: z.number().int().min(0),
    source: z.string().optional(),
  })
  .strict();

export type DimFragment = z.infer<typeof dimFragmentSchema>;

function describeIssues(error: z.ZodError): string {
  return error.issues
    .map((issue) => `${issue.path.join('.') || '<root>'}: ${issue.message}`)
    .join('; ');
}

export function parseWith<T>(schema: z.ZodType<T>, raw: unknown, what: string): T {
  const result = schema.safeParse(raw);
  if (!result.success) {
    throw new Error(`invalid ${what}: ${describeIssues(result.error)}`);
  }
  return result.data;
}

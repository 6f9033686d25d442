import { readFileSync } from 'node:fs';
import { z } from 'zod';
import { CharacterFile, characterFileSchema, parseWith } from './formats.js';

export const TARGETS = ['basis', 'operator', 'classical-dim'] as const;

export type Target = (typeof TARGETS)[number];

const OPERATOR_LABEL_RE = /^W([1-9][0-9]*)$/;

const rawJobSchema = z
  .object({
    target: z.enum(TARGETS),
    level: z.number().int().min(1),
    weight: z.number().int().min(1),
    prec: z.number().int().min(2),
    out: z.string().min(1),
    character: z.union([z.literal('trivial'), characterFileSchema]),
    operatorLabel: z.string().optional(),
  })
  .strict();

export interface ExportJob {
  target: Target;
  level: number;
  weight: number;
  prec: number;
  out: string;
  character: 'trivial' | CharacterFile;
  /** Divisor of the level whose Atkin-Lehner operator is exported. */
  operatorQ?: number;
  operatorLabel?: string;
}

export function loadCharacterSpec(spec: string): 'trivial' | CharacterFile {
  if (spec === 'trivial') {
    return 'trivial';
  }
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(spec, 'utf8'));
  } catch (err) {
    throw new Error(`cannot read character file ${spec}: ${(err as Error).message}`);
  }
  return parseWith(characterFileSchema, raw, `character file ${spec}`);
}

export function makeJob(raw: unknown): ExportJob {
  const job = parseWith(rawJobSchema, raw, 'export job');
  if (job.character !== 'trivial' && job.level % job.character.modulus !== 0) {
    throw new Error(
      `character modulus ${job.character.modulus} does not divide level ${job.level}`,
    );
  }
  if (job.target === 'operator') {
    const match = job.operatorLabel?.match(OPERATOR_LABEL_RE);
    if (!match) {
      throw new Error(
        `operator target needs a label like W2, got ${job.operatorLabel ?? 'nothing'}`,
      );
    }
    const q = Number(match[1]);
    if (job.level % q !== 0) {
      throw new Error(`operator ${job.operatorLabel} needs ${q} to divide level ${job.level}`);
    }
    return { ...job, operatorQ: q };
  }
  if (job.operatorLabel !== undefined) {
    throw new Error(`target ${job.target} takes no operator label`);
  }
  return job;
}

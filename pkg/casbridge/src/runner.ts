import { spawnSync } from 'node:child_process';
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import {
  BasisFile,
  DimFragment,
  OperatorFile,
  basisFileSchema,
  dimFragmentSchema,
  operatorFileSchema,
  parseWith,
} from './formats.js';
import { ExportJob } from './job.js';
import { sageScript } from './scripts.js';

export type ExportResult = BasisFile | OperatorFile | DimFragment;

export function hasSage(): boolean {
  return spawnSync('sage', ['--version'], { encoding: 'utf8' }).status === 0;
}

function runScript(script: string): void {
  const dir = mkdtempSync(join(tmpdir(), 'casbridge-'));
  const path = join(dir, 'job.sage');
  try {
    writeFileSync(path, script);
    const proc = spawnSync('sage', [path], { encoding: 'utf8' });
    if (proc.error) {
      throw new Error(`cannot run sage: ${proc.error.message}`);
    }
    if (proc.status !== 0) {
      // surface the CAS diagnostics verbatim: they name the real failure
      throw new Error(`sage exited with ${proc.status}:\n${proc.stderr}`);
    }
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function validateOutput(job: ExportJob, raw: unknown): ExportResult {
  switch (job.target) {
    case 'basis': {
      const basis = parseWith(basisFileSchema, raw, `exported basis ${job.out}`);
      if (basis.jmax < job.prec - 1) {
        throw new Error(
          `precision shortfall: asked for q^${job.prec - 1}, file stops at q^${basis.jmax}`,
        );
      }
      return basis;
    }
    case 'operator':
      return parseWith(operatorFileSchema, raw, `exported operator ${job.out}`);
    case 'classical-dim':
      return parseWith(dimFragmentSchema, raw, `exported dimension ${job.out}`);
  }
}

export function runExport(job: ExportJob): ExportResult {
  runScript(sageScript(job));
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(job.out, 'utf8'));
  } catch (err) {
    throw new Error(`CAS produced no readable output at ${job.out}: ${(err as Error).message}`);
  }
  return validateOutput(job, raw);
}

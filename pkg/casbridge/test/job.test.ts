import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { describe, expect, it } from 'vitest';
import { loadCharacterSpec, makeJob } from '../src/job.js';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), '..', '..', 'fixtures');
const CHAR13 = join(FIXTURES, 'level13', 'char13.json');

function base() {
  return {
    target: 'basis' as const,
    level: 9,
    weight: 4,
    prec: 30,
    out: '/tmp/out.json',
    character: 'trivial' as const,
  };
}

describe('makeJob', () => {
  it('accepts a trivial basis job', () => {
    const job = makeJob(base());
    expect(job.target).toBe('basis');
    expect(job.operatorQ).toBeUndefined();
  });

  it('accepts a character job when the modulus divides the level', () => {
    const chi = loadCharacterSpec(CHAR13);
    const job = makeJob({ ...base(), level: 26, character: chi });
    expect(job.character).not.toBe('trivial');
  });

  it('rejects a character whose modulus does not divide the level', () => {
    const chi = loadCharacterSpec(CHAR13);
    expect(() => makeJob({ ...base(), level: 9, character: chi })).toThrow(/divide/);
  });

  it('derives the operator divisor from the label', () => {
    const job = makeJob({ ...base(), target: 'operator', level: 26, operatorLabel: 'W2' });
    expect(job.operatorQ).toBe(2);
  });

  it('rejects unknown operator labels', () => {
    expect(() =>
      makeJob({ ...base(), target: 'operator', level: 26, operatorLabel: 'T2' }),
    ).toThrow(/label like W2/);
    expect(() => makeJob({ ...base(), target: 'operator', level: 26 })).toThrow(/label/);
  });

  it('rejects an operator divisor outside the level', () => {
    expect(() =>
      makeJob({ ...base(), target: 'operator', level: 9, operatorLabel: 'W2' }),
    ).toThrow(/divide/);
  });

  it('rejects a stray operator label on other targets', () => {
    expect(() => makeJob({ ...base(), operatorLabel: 'W2' })).toThrow(/no operator label/);
  });

  it('rejects undersized precision and unknown targets', () => {
    expect(() => makeJob({ ...base(), prec: 1 })).toThrow(/prec/);
    expect(() => makeJob({ ...base(), target: 'eigenvalues' })).toThrow(/target/);
  });
});

describe('loadCharacterSpec', () => {
  it('passes the trivial marker through', () => {
    expect(loadCharacterSpec('trivial')).toBe('trivial');
  });

  it('loads and validates a character file', () => {
    const chi = loadCharacterSpec(CHAR13);
    expect(chi).not.toBe('trivial');
    if (chi !== 'trivial') {
      expect(chi.zeta_order).toBe(6);
      expect(JSON.parse(readFileSync(CHAR13, 'utf8')).label).toBe(chi.label);
    }
  });

  it('reports missing files', () => {
    expect(() => loadCharacterSpec('/nonexistent/char.json')).toThrow(/cannot read/);
  });
});

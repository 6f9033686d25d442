import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { describe, expect, it } from 'vitest';
import {
  basisFileSchema,
  characterFileSchema,
  operatorFileSchema,
  parseWith,
} from '../src/formats.js';
import { isZeroCyc, rationalCyc } from '../src/cycjson.js';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), '..', '..', 'fixtures');

function load(rel: string): unknown {
  return JSON.parse(readFileSync(join(FIXTURES, rel), 'utf8'));
}

describe('pipeline fixture files', () => {
  it('accepts the shipped character file', () => {
    const chi = parseWith(characterFileSchema, load('level13/char13.json'), 'char');
    expect(chi.modulus).toBe(13);
    expect(chi.generators).toHaveLength(1);
  });

  it('accepts the shipped basis files', () => {
    for (const rel of ['level13/basis_13_4.json', 'level9/basis_9_4.json']) {
      const basis = parseWith(basisFileSchema, load(rel), rel);
      expect(basis.forms.length).toBeGreaterThan(0);
    }
  });

  it('accepts the shipped operator files', () => {
    const w26 = parseWith(operatorFileSchema, load('level13/operator_w2_26.json'), 'op');
    expect(w26.entries).toHaveLength(9);
    const w18 = parseWith(operatorFileSchema, load('level9/operator_w2_18.json'), 'op');
    expect(w18.entries).toHaveLength(5);
  });
});

describe('rejections', () => {
  it('rejects float-like rational strings', () => {
    expect(() =>
      parseWith(characterFileSchema, {
        modulus: 13,
        zeta_order: 6,
        generators: [[2, { n: 6, c: ['1.5', '0'] }]],
        label: 'bad',
      }, 'char'),
    ).toThrow(/rational/);
  });

  it('rejects coefficients past jmax', () => {
    expect(() =>
      parseWith(basisFileSchema, {
        level: 9,
        weight: 4,
        character: 'trivial',
        jmax: 3,
        forms: [{ label: 'f', coeffs: { '5': rationalCyc('1') } }],
      }, 'basis'),
    ).toThrow(/past jmax/);
  });

  it('rejects identically zero forms', () => {
    expect(() =>
      parseWith(basisFileSchema, {
        level: 9,
        weight: 4,
        character: 'trivial',
        jmax: 3,
        forms: [{ label: 'f', coeffs: { '2': rationalCyc('0') } }],
      }, 'basis'),
    ).toThrow(/zero/);
  });

  it('rejects non-square operators', () => {
    expect(() =>
      parseWith(operatorFileSchema, {
        label: 'W2',
        entries: [[rationalCyc('1'), rationalCyc('2')]],
      }, 'op'),
    ).toThrow(/square/);
  });

  it('rejects unknown properties', () => {
    expect(() =>
      parseWith(operatorFileSchema, {
        label: 'W2',
        entries: [],
        extra: 1,
      }, 'op'),
    ).toThrow(/extra/);
  });
});

describe('cyc helpers', () => {
  it('detects zero in any field', () => {
    expect(isZeroCyc({ n: 6, c: ['0', '0'] })).toBe(true);
    expect(isZeroCyc({ n: 6, c: ['0', '-1'] })).toBe(false);
  });

  it('refuses malformed rationals', () => {
    expect(() => rationalCyc('1/0')).toThrow(/rational/);
  });
});

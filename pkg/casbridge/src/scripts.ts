import { CharacterFile } from './formats.js';
import { ExportJob } from './job.js';

// Generated Sage scripts write the output JSON themselves, so the
// bridge never parses CAS pretty-printing: the only contract is the
// file format. Scripts are deterministic for a fixed job, and each
// output records the CAS version in its source header.

function pyString(text: string): string {
  return JSON.stringify(text);
}

function characterBlock(chi: CharacterFile): string {
  const assignments = chi.generators
    .map(([r, value]) => {
      const terms = value.c
        .map((coord, i) => `QQ(${pyString(coord)}) * z**${i}`)
        .join(' + ');
      return `    (${r}, K(${terms || '0'})),`;
    })
    .join('\n');
  return `K = CyclotomicField(${chi.zeta_order})
z = K.gen()
assignments = [
${assignments}
]
chi = None
for cand in DirichletGroup(${chi.modulus}, K):
    if all(cand(r) == v for r, v in assignments):
        chi = cand
        break
if chi is None:
    raise RuntimeError("no mod-${chi.modulus} character matches the generator assignments")
chi = chi.extend(LEVEL) if chi.modulus() != LEVEL else chi

def enc(x):
    return {"n": ${chi.zeta_order}, "c": [str(QQ(t)) for t in K(x).list()]}
`;
}

function trivialBlock(): string {
  return `chi = trivial_character(LEVEL)

def enc(x):
    return {"n": 1, "c": [str(QQ(x))]}
`;
}

function preamble(job: ExportJob): string {
  const block = job.character === 'trivial' ? trivialBlock() : characterBlock(job.character);
  return `import json
from sage.all import *

LEVEL = ${job.level}
WEIGHT = ${job.weight}
PREC = ${job.prec}
OUT = ${pyString(job.out)}

${block}
M = ModularSymbols(chi, WEIGHT, sign=1)
S = M.cuspidal_subspace()

def emit(payload):
    payload["source"] = "exported by casbridge via %s" % version()
    with open(OUT, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\\n")
`;
}

export function basisScript(job: ExportJob): string {
  const label = job.character === 'trivial' ? 'trivial' : job.character.label;
  return `${preamble(job)}
forms = []
for i, f in enumerate(S.q_expansion_basis(PREC)):
    coeffs = {}
    for j in range(1, PREC):
        cj = f[j]
        if cj != 0:
            coeffs[str(j)] = enc(cj)
    forms.append({"label": "g%d" % (i + 1), "coeffs": coeffs})
emit({
    "level": LEVEL,
    "weight": WEIGHT,
    "character": ${pyString(label)},
    "jmax": PREC - 1,
    "forms": forms,
})
`;
}

export function operatorScript(job: ExportJob): string {
  if (job.operatorQ === undefined || job.operatorLabel === undefined) {
    throw new Error('operator script needs an operator label');
  }
  return `${preamble(job)}
A = S.atkin_lehner_operator(${job.operatorQ}).matrix()
emit({
    "label": ${pyString(job.operatorLabel)},
    "level": LEVEL,
    "weight": WEIGHT,
    "entries": [[enc(A[i][j]) for j in range(A.ncols())] for i in range(A.nrows())],
})
`;
}

export function classicalDimScript(job: ExportJob): string {
  return `${preamble(job)}
emit({"classical_dim": int(CuspForms(chi, WEIGHT).dimension())})
`;
}

export function sageScript(job: ExportJob): string {
  switch (job.target) {
    case 'basis':
      return basisScript(job);
    case 'operator':
      return operatorScript(job);
    case 'classical-dim':
      return classicalDimScript(job);
  }
}

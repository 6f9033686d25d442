export { CycJson, cycNumSchema, rationalCyc, isZeroCyc, RATIONAL_RE } from './cycjson.js';
export {
  BasisFile,
  CharacterFile,
  DimFragment,
  OperatorFile,
  basisFileSchema,
  characterFileSchema,
  dimFragmentSchema,
  operatorFileSchema,
  parseWith,
} from './formats.js';
export { ExportJob, TARGETS, Target, loadCharacterSpec, makeJob } from './job.js';
export { basisScript, classicalDimScript, operatorScript, sageScript } from './scripts.js';
export { ExportResult, hasSage, runExport } from './runner.js';

#!/usr/bin/env node
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { TARGETS, loadCharacterSpec, makeJob } from './job.js';
import { runExport } from './runner.js';

// Exit codes follow the pipeline convention: 0 success, 1 CAS failure,
// 2 usage or validation error.

export async function main(argv: string[]): Promise<void> {
  await yargs(argv)
    .command(
      'export',
      'Run one CAS export job and validate the output file',
      (cmd) =>
        cmd
          .option('target', { choices: TARGETS, demandOption: true })
          .option('level', { type: 'number', demandOption: true })
          .option('weight', { type: 'number', demandOption: true })
          .option('char', { type: 'string', default: 'trivial', describe: 'Character file, or "trivial"' })
          .option('prec', { type: 'number', default: 30, describe: 'q-expansion precision' })
          .option('operator', { type: 'string', describe: 'Operator label, e.g. W2' })
          .option('out', { type: 'string', demandOption: true }),
      (args) => {
        let job;
        try {
          job = makeJob({
            target: args.target,
            level: args.level,
            weight: args.weight,
            prec: args.prec,
            out: args.out,
            character: loadCharacterSpec(args.char),
            ...(args.operator === undefined ? {} : { operatorLabel: args.operator }),
          });
        } catch (err) {
          console.error(`error: ${(err as Error).message}`);
          process.exit(2);
        }
        try {
          runExport(job);
          console.log(`wrote ${job.out}`);
        } catch (err) {
          console.error(`export failed: ${(err as Error).message}`);
          process.exit(1);
        }
      },
    )
    .demandCommand(1)
    .strict()
    .fail((msg, err) => {
      console.error(`error: ${msg ?? err?.message}`);
      process.exit(2);
    })
    .parseAsync();
}

main(hideBin(process.argv));

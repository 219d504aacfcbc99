import argparse
import logging
import os
import sys
from typing import List, Optional

from prefnoise.exceptions import PrefNoiseException
from prefnoise.harness import load_config, report, run_experiment, sweep, with_overrides

logger = logging.getLogger(__name__)


def _rates(text: str) -> List[float]:
    try:
        rates = [float(r) for r in text.split(',') if r.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'rates must be comma-separated numbers, got {text!r}') from None
    if not rates or any(not 0.0 <= r <= 1.0 for r in rates):
        raise argparse.ArgumentTypeError(f'rates must lie in [0, 1], got {text!r}')
    return rates


def _kinds(text: str) -> List[str]:
    return [k.strip() for k in text.split(',') if k.strip()]


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog='prefnoise',
                                     description='Preference-noise experiments for preference-based RL.')
    parser.add_argument('--log-level', default='INFO', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='run one experiment config')
    run.add_argument('--config', required=True)
    run.add_argument('--seed', type=int, default=None, help='run only this seed')
    run.add_argument('--out', default=None, help='output CSV path')
    run.add_argument('--jobs', type=int, default=1, help='seeds run in parallel')

    sw = sub.add_parser('sweep', help='noise kind x rate x seed grid')
    sw.add_argument('--config', required=True)
    sw.add_argument('--rates', type=_rates, default=[0.1, 0.2, 0.3, 0.4])
    sw.add_argument('--kinds', type=_kinds, default=None,
                    help="comma-separated preset names; defaults to the config's noise spec")
    sw.add_argument('--seed', type=int, default=None)
    sw.add_argument('--out', default='results', help='output directory')
    sw.add_argument('--jobs', type=int, default=1)

    rp = sub.add_parser('report', help='summary table and curve files from a run CSV')
    rp.add_argument('csv')
    rp.add_argument('--out', default=None, help='output directory (defaults to the CSV directory)')
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=args.log_level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        if args.command == 'run':
            cfg = with_overrides(load_config(args.config), seed=args.seed, out=args.out)
            records = run_experiment(cfg, jobs=args.jobs)
            logger.info(f'wrote {len(records)} records to {cfg.output_path}')
        elif args.command == 'sweep':
            cfg = with_overrides(load_config(args.config), seed=args.seed)
            kinds = args.kinds or [cfg.noise]
            table = sweep(cfg, kinds, args.rates, out_dir=args.out, jobs=args.jobs)
            logger.info(f'wrote {len(table)} aggregate rows to {os.path.join(args.out, "aggregate.csv")}')
        elif args.command == 'report':
            out_dir = args.out or os.path.dirname(os.path.abspath(args.csv))
            summary, per_cell = report(args.csv, out_dir)
            print(summary.to_string(index=False))
            logger.info(f'wrote summary and {len(per_cell)} curve files to {out_dir}')
    except PrefNoiseException as e:
        logger.error(f'{args.command} failed: {e}')
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())

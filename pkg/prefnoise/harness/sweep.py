import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import List, Sequence, Union

import pandas as pd

from prefnoise.exceptions import ConfigurationError
from prefnoise.harness.report import harder_than_uniform, mark_harder
from prefnoise.harness.runner import RecordWriter, run_seed
from prefnoise.model import CSV_HEADER, EnvSpec, ExperimentConfig, ExperimentRecord, NoiseModelSpec
from prefnoise.noise.presets import PRESETS, preset

logger = logging.getLogger(__name__)

AGGREGATE_COLUMNS = ['noise_kind', 'target_rate', 'seeds', 'mean_return', 'std_return', 'realized_rate',
                     'reward_label_accuracy', 'denoiser_precision', 'denoiser_recall', 'harder_than_uniform']


def at_rate(spec: Union[NoiseModelSpec, str], rate: float, env: EnvSpec) -> NoiseModelSpec:
    """``spec`` re-targeted to ``rate``; presets are rebuilt since some parameters depend on the rate."""
    if isinstance(spec, str):
        return preset(spec, rate, env)
    if spec.name in PRESETS:
        return preset(spec.name, rate, env)
    update = {'target_rate': rate}
    if spec.component_f is not None:
        update['component_f'] = spec.component_f.model_copy(update={'target_rate': rate})
    return spec.model_copy(update=update)


def run_path(out_dir: str, spec: NoiseModelSpec) -> str:
    return os.path.join(out_dir, 'runs', f'{spec.label}_{spec.target_rate:g}.csv')


def aggregate(records: Sequence[ExperimentRecord]) -> pd.DataFrame:
    """Final-round mean and std over seeds, one row per (noise_kind, target_rate) cell."""
    if not records:
        return pd.DataFrame(columns=AGGREGATE_COLUMNS)
    df = pd.DataFrame([r.model_dump() for r in records], columns=list(CSV_HEADER))
    final = df[df['round'] == df.groupby(['noise_kind', 'target_rate'])['round'].transform('max')]
    grouped = final.groupby(['noise_kind', 'target_rate'], sort=False)
    out = grouped.agg(seeds=('seed', 'nunique'),
                      mean_return=('mean_return', 'mean'),
                      std_return=('mean_return', 'std'),
                      realized_rate=('realized_rate', 'mean'),
                      reward_label_accuracy=('reward_label_accuracy', 'mean'),
                      denoiser_precision=('denoiser_precision', 'mean'),
                      denoiser_recall=('denoiser_recall', 'mean')).reset_index()
    out['std_return'] = out['std_return'].fillna(0.0)
    return mark_harder(out)[AGGREGATE_COLUMNS]


def sweep(base: ExperimentConfig,
          kinds: Sequence[Union[NoiseModelSpec, str]],
          rates: Sequence[float],
          out_dir: str = 'results',
          jobs: int = 1,
          transport=None) -> pd.DataFrame:
    """
    Every (kind, rate, seed) run of the cross product, ``jobs`` at a time.
    Per-cell run CSVs go to ``<out_dir>/runs/``; the aggregate table to
    ``<out_dir>/aggregate.csv`` and the per-rate count of cells ending below
    uniform noise to ``<out_dir>/harder_than_uniform.csv``.
    """
    if not kinds:
        raise ConfigurationError('sweep needs at least one noise kind')
    if not rates:
        raise ConfigurationError('sweep needs at least one noise rate')
    if jobs < 1:
        raise ConfigurationError(f'jobs must be >= 1, got {jobs}')
    cells = [at_rate(k, r, base.env) for k in kinds for r in rates]
    labels = [(c.label, c.target_rate) for c in cells]
    if len(set(labels)) != len(labels):
        raise ConfigurationError(f'duplicate sweep cells: {labels}')
    tasks = [(i, cell, seed) for i, cell in enumerate(cells) for seed in base.seeds]
    logger.info(f'sweep: {len(cells)} cells x {len(base.seeds)} seeds = {len(tasks)} runs, {jobs} jobs')

    def __process__(index: int, cell: NoiseModelSpec, seed: int):
        cfg = base.model_copy(update={'noise': cell})
        return index, seed, run_seed(cfg, seed, transport)

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(__process__, i, cell, seed) for i, cell, seed in tasks]
        results = [future.result() for future in as_completed(futures)]
    results.sort(key=lambda x: (x[0], base.seeds.index(x[1])))

    records: List[ExperimentRecord] = []
    for i, cell in enumerate(cells):
        cell_records = [r for index, _, rs in results if index == i for r in rs]
        with RecordWriter(run_path(out_dir, cell)) as writer:
            for record in cell_records:
                writer.write(record)
        records.extend(cell_records)

    table = aggregate(records)
    table.to_csv(os.path.join(out_dir, 'aggregate.csv'), index=False, float_format='%.6f')
    harder_than_uniform(table).to_csv(os.path.join(out_dir, 'harder_than_uniform.csv'), index=False,
                                      float_format='%.6f')
    return table

"""
Summaries of run CSVs: final-round mean/std per (noise_kind, target_rate)
cell, per-round learning curves with the standard error over seeds, and the
count of noise kinds that end below uniform noise at each rate.
"""
import logging
import os
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from prefnoise.exceptions import ReportFormatError
from prefnoise.model import CSV_HEADER

logger = logging.getLogger(__name__)

NUMERIC_COLUMNS = [c for c in CSV_HEADER if c != 'noise_kind']
INTEGER_COLUMNS = ('seed', 'round')


def read_results(csv_path: str) -> pd.DataFrame:
    try:
        df = pd.read_csv(csv_path, dtype=str, keep_default_na=False)
    except FileNotFoundError:
        raise ReportFormatError(f'results file {csv_path} does not exist') from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ReportFormatError(f'cannot parse {csv_path}: {e}') from None
    missing = [c for c in CSV_HEADER if c not in df.columns]
    if missing:
        raise ReportFormatError(f'{csv_path}: missing column {missing[0]!r}')
    for column in NUMERIC_COLUMNS:
        parsed = pd.to_numeric(df[column], errors='coerce')
        bad = parsed.isna() | ~np.isfinite(parsed.astype(float))
        if column in INTEGER_COLUMNS:
            bad |= parsed.notna() & (parsed != parsed.round())
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            # +2: header line and 1-based numbering
            raise ReportFormatError(f'{csv_path}: line {row + 2} has a bad {column} value {df[column].iloc[row]!r}')
        df[column] = parsed.astype(int) if column in INTEGER_COLUMNS else parsed.astype(float)
    return df


HARDER_COLUMNS = ['target_rate', 'uniform_return', 'cells', 'harder', 'harder_pct']


def mark_harder(table: pd.DataFrame, baseline: str = 'uniform') -> pd.DataFrame:
    """Adds ``harder_than_uniform``: the cell ends below the baseline kind at the same rate."""
    baseline_returns = table[table['noise_kind'] == baseline].set_index('target_rate')['mean_return']
    reference = table['target_rate'].map(baseline_returns)
    table['harder_than_uniform'] = (table['noise_kind'] != baseline) & (table['mean_return'] < reference)
    return table


def harder_than_uniform(table: pd.DataFrame, baseline: str = 'uniform') -> pd.DataFrame:
    """
    Per noise rate, how many non-baseline cells finish with a lower mean
    return than the baseline kind. Rates without a baseline cell are skipped.
    """
    reference = table[table['noise_kind'] == baseline].set_index('target_rate')['mean_return']
    rows = []
    for rate, group in table[table['noise_kind'] != baseline].groupby('target_rate', sort=True):
        if rate not in reference.index:
            continue
        harder = int((group['mean_return'] < reference[rate]).sum())
        rows.append([rate, float(reference[rate]), len(group), harder, 100.0 * harder / len(group)])
    return pd.DataFrame(rows, columns=HARDER_COLUMNS)


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    final = df[df['round'] == df.groupby(['noise_kind', 'target_rate'])['round'].transform('max')]
    out = (final.groupby(['noise_kind', 'target_rate'], sort=True)
           .agg(seeds=('seed', 'nunique'),
                mean_return=('mean_return', 'mean'),
                std_return=('mean_return', 'std'),
                reward_label_accuracy=('reward_label_accuracy', 'mean'),
                realized_rate=('realized_rate', 'mean'))
           .reset_index())
    out['single_seed'] = out['seeds'] < 2
    out['std_return'] = out['std_return'].fillna(0.0)
    return mark_harder(out)


def curves(df: pd.DataFrame) -> Dict[Tuple[str, float], pd.DataFrame]:
    """Per cell: round, mean episodic return over seeds and its standard error std/sqrt(n)."""
    out = {}
    for (kind, rate), cell in df.groupby(['noise_kind', 'target_rate'], sort=True):
        per_round = cell.groupby('round')['mean_return'].agg(['mean', 'std', 'count']).reset_index()
        per_round['stderr'] = (per_round['std'] / np.sqrt(per_round['count'])).fillna(0.0)
        out[(kind, rate)] = per_round[['round', 'mean', 'stderr']]
    return out


def report(csv_path: str, out_dir: Optional[str] = None) -> Tuple[pd.DataFrame, Dict[Tuple[str, float], pd.DataFrame]]:
    """Writes ``summary.csv`` and ``curves/<kind>_<rate>.csv`` under ``out_dir`` when given."""
    df = read_results(csv_path)
    summary, per_cell = summarize(df), curves(df)
    for row in summary[summary['single_seed']].itertuples():
        logger.info(f'{row.noise_kind}@{row.target_rate:g}: single seed, std reported as 0')
    if out_dir:
        os.makedirs(os.path.join(out_dir, 'curves'), exist_ok=True)
        summary.to_csv(os.path.join(out_dir, 'summary.csv'), index=False, float_format='%.6f')
        harder_than_uniform(summary).to_csv(os.path.join(out_dir, 'harder_than_uniform.csv'), index=False,
                                           float_format='%.6f')
        for (kind, rate), frame in per_cell.items():
            frame.to_csv(os.path.join(out_dir, 'curves', f'{kind}_{rate:g}.csv'), index=False, float_format='%.6f')
    return summary, per_cell

from prefnoise.harness.config import load_config, parse_config, with_overrides
from prefnoise.harness.runner import run_experiment, run_seed, labeled_pairs
from prefnoise.harness.sweep import sweep, aggregate, at_rate
from prefnoise.harness.report import report, read_results, summarize, curves, harder_than_uniform

import asyncio
import json
import logging
import os
import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from prefnoise.engine import BaseTransport, EngineOpenAI
from prefnoise.exceptions import ExperimentIOError, ResponseParseError
from prefnoise.model import (LabeledPreference, ModelChat, PreferenceLabel, RemoteTeacherConfig,
                             RemoteVerdict, TrajectoryPair)
from prefnoise.remote.prompts import image_summary_prompt, preference_elicitation_prompt
from prefnoise.remote.render import render_pair
from prefnoise.teachers.oracle import oracle_label

logger = logging.getLogger(__name__)

_ANSWER = re.compile(r'^\s*(-1|0|1)\s*[.]?\s*$')
_LABELS = {'0': 'first', '1': 'second', '-1': 'indifferent'}

CacheKey = Tuple[int, int, str]


def parse_answer(raw: str) -> str:
    """Last non-empty line must be exactly 0, 1 or -1."""
    lines = [line for line in (raw or '').strip().splitlines() if line.strip()]
    match = _ANSWER.match(lines[-1]) if lines else None
    if not match:
        raise ResponseParseError('expected a single line of 0, 1 or -1', raw_response=raw)
    return _LABELS[match.group(1)]


class VerdictCache:
    """Append-only JSON-lines file of verdicts keyed by (first id, second id, model)."""

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._entries: Dict[CacheKey, RemoteVerdict] = {}
        self._lock = threading.Lock()
        if path and os.path.exists(path):
            self._load()

    def _load(self):
        with open(self.path, 'r', encoding='utf-8') as f:
            for n, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                    key = (int(row['first']), int(row['second']), row['model'])
                    self._entries[key] = RemoteVerdict.model_validate(row['verdict'])
                except (ValueError, KeyError) as e:
                    logger.error(f'skipping unreadable cache line {n} in {self.path}: {e}')

    @staticmethod
    def key(pair: TrajectoryPair, model_name: str) -> CacheKey:
        return pair.first.id, pair.second.id, model_name

    def get(self, pair: TrajectoryPair, model_name: str) -> Optional[RemoteVerdict]:
        return self._entries.get(self.key(pair, model_name))

    def put(self, pair: TrajectoryPair, model_name: str, verdict: RemoteVerdict):
        key = self.key(pair, model_name)
        with self._lock:
            self._entries[key] = verdict
            if not self.path:
                return
            row = {'first': key[0], 'second': key[1], 'model': model_name, 'verdict': verdict.model_dump()}
            try:
                with open(self.path, 'a', encoding='utf-8') as f:
                    f.write(json.dumps(row) + '\n')
            except OSError as e:
                raise ExperimentIOError(f'cannot append to verdict cache {self.path}: {e}',
                                        records_written=len(self._entries) - 1) from e

    def __len__(self):
        return len(self._entries)


def _summary_chat(pair: TrajectoryPair, bounds: float) -> ModelChat:
    chat = ModelChat()
    chat.add_user_images(image_summary_prompt(pair.first.kind), list(render_pair(pair, bounds)))
    return chat


def _elicitation_chat(pair: TrajectoryPair, summary: str) -> ModelChat:
    chat = ModelChat()
    chat.add_user_message(preference_elicitation_prompt(pair.first.kind, summary))
    return chat


def query_preference(cfg: RemoteTeacherConfig,
                     pair: TrajectoryPair,
                     transport: BaseTransport,
                     cache: Optional[VerdictCache] = None,
                     bounds: float = 1.0) -> RemoteVerdict:
    """
    Summary request with both rendered images, then the elicitation request on
    that summary. Transport retries live in the transport; a cached verdict
    short-circuits both requests.
    """
    if cache is not None and (hit := cache.get(pair, cfg.model_name)) is not None:
        return hit
    start = time.time()
    summary = transport.generate(_summary_chat(pair, bounds)).content
    raw = transport.generate(_elicitation_chat(pair, summary)).content
    verdict = RemoteVerdict(label=parse_answer(raw), raw_response=raw, latency=time.time() - start, summary=summary)
    if cache is not None:
        cache.put(pair, cfg.model_name, verdict)
    return verdict


async def async_query_preference(cfg: RemoteTeacherConfig,
                                 pair: TrajectoryPair,
                                 transport: BaseTransport,
                                 cache: Optional[VerdictCache] = None,
                                 bounds: float = 1.0) -> RemoteVerdict:
    if cache is not None and (hit := cache.get(pair, cfg.model_name)) is not None:
        return hit
    start = time.time()
    summary = (await transport.async_generate(_summary_chat(pair, bounds))).content
    raw = (await transport.async_generate(_elicitation_chat(pair, summary))).content
    verdict = RemoteVerdict(label=parse_answer(raw), raw_response=raw, latency=time.time() - start, summary=summary)
    if cache is not None:
        cache.put(pair, cfg.model_name, verdict)
    return verdict


def measure_noise(verdicts: Sequence[RemoteVerdict], oracle_labels: Sequence[PreferenceLabel]) -> float:
    """Disagreement rate with the scripted oracle over non-indifferent verdicts."""
    if len(verdicts) != len(oracle_labels):
        raise ValueError(f'{len(verdicts)} verdicts but {len(oracle_labels)} oracle labels')
    decided = [(v, o) for v, o in zip(verdicts, oracle_labels) if not v.is_indifferent]
    if not decided:
        return 0.0
    wrong = sum((v.label == 'first') != (o is PreferenceLabel.FIRST) for v, o in decided)
    return wrong / len(decided)


class RemoteTeacher:
    """
    Labels pairs with an external chat model. ``transport`` defaults to an
    OpenAI-compatible engine built from ``cfg``; tests pass an ``EngineMock``.
    """

    def __init__(self,
                 cfg: RemoteTeacherConfig,
                 transport: Optional[BaseTransport] = None,
                 bounds: float = 1.0):
        self.cfg = cfg
        self.transport = transport or EngineOpenAI.from_config(cfg)
        self.cache = VerdictCache(cfg.cache_path)
        self.bounds = bounds

    def query(self, pair: TrajectoryPair) -> RemoteVerdict:
        return query_preference(self.cfg, pair, self.transport, self.cache, self.bounds)

    def query_batch(self, pairs: Sequence[TrajectoryPair]) -> List[RemoteVerdict]:
        """Concurrent queries, at most ``max_in_flight`` at a time, returned in input order."""
        def __process__(index: int, pair: TrajectoryPair):
            return index, self.query(pair)

        with ThreadPoolExecutor(max_workers=self.cfg.max_in_flight) as executor:
            futures = [executor.submit(__process__, i, p) for i, p in enumerate(pairs)]
            results = [future.result() for future in as_completed(futures)]
        results.sort(key=lambda x: x[0])
        return [verdict for _, verdict in results]

    async def async_query_batch(self, pairs: Sequence[TrajectoryPair]) -> List[RemoteVerdict]:
        semaphore = asyncio.Semaphore(self.cfg.max_in_flight)

        async def bounded(pair: TrajectoryPair) -> RemoteVerdict:
            async with semaphore:
                return await async_query_preference(self.cfg, pair, self.transport, self.cache, self.bounds)

        return list(await asyncio.gather(*(bounded(p) for p in pairs)))

    def label(self,
              pairs: Sequence[TrajectoryPair],
              gamma: float = 1.0,
              tolerance: float = 0.0) -> Tuple[List[LabeledPreference], List[RemoteVerdict]]:
        """
        Preferences from the remote model, with the scripted oracle as ground
        truth. Indifferent verdicts and oracle ties are left out.
        """
        verdicts = self.query_batch(pairs)
        labeled = []
        for pair, verdict in zip(pairs, verdicts):
            truth = oracle_label(pair, gamma, tolerance)
            if verdict.is_indifferent or not isinstance(truth, PreferenceLabel):
                continue
            observed = PreferenceLabel.FIRST if verdict.label == 'first' else PreferenceLabel.SECOND
            labeled.append(LabeledPreference(pair=pair,
                                             observed=observed,
                                             ground_truth=truth,
                                             flipped=observed is not truth))
        realized = float(np.mean([s.flipped for s in labeled])) if labeled else 0.0
        logger.info(f'{self.cfg.model_name}: {len(labeled)}/{len(pairs)} usable verdicts, noise rate {realized:.3f}')
        return labeled, verdicts

import asyncio
import base64
import json

import numpy as np
import pytest

from prefnoise import NoiseInjector
from prefnoise.engine import EngineMock, EngineOpenAI
from prefnoise.exceptions import ConfigurationError, ResponseParseError, TransportException
from prefnoise.model import ModelChat, PreferenceLabel, RemoteTeacherConfig, RemoteVerdict
from prefnoise.remote import (RemoteTeacher, VerdictCache, image_summary_prompt, measure_noise, parse_answer,
                              preference_elicitation_prompt, query_preference, render_trajectory)
from prefnoise.remote.render import gridworld_raster, pointmass_raster

from conftest import make_pair, make_traj

CFG = RemoteTeacherConfig(model_name='mock-vlm', max_in_flight=1)


def verdict(label):
    return RemoteVerdict(label=label, raw_response='')


class TestParseAnswer:
    @pytest.mark.parametrize('raw, label', [
        ('0', 'first'),
        ('1', 'second'),
        ('-1', 'indifferent'),
        (' 1.\n', 'second'),
        ('Image 1 looks closer.\n\n0', 'first'),
    ])
    def test_valid(self, raw, label):
        assert parse_answer(raw) == label

    @pytest.mark.parametrize('raw', ['maybe', '', '2', '0 or 1'])
    def test_invalid(self, raw):
        with pytest.raises(ResponseParseError) as e:
            parse_answer(raw)
        assert e.value.raw_response == raw


class TestQuery:
    @pytest.mark.parametrize('answer, label', [('0', 'first'), ('-1', 'indifferent')])
    def test_scripted_answers(self, answer, label):
        transport = EngineMock(answers=[answer])
        result = query_preference(CFG, make_pair(1.0, 0.0), transport)
        assert result.label == label
        assert result.raw_response == answer
        assert transport.calls == 2

    def test_unparseable_answer(self):
        with pytest.raises(ResponseParseError) as e:
            query_preference(CFG, make_pair(1.0, 0.0), EngineMock(answers=['maybe']))
        assert e.value.raw_response == 'maybe'

    def test_two_stage_prompts_are_verbatim(self):
        transport = EngineMock(answers=['1'], summary='The dot is closer in Image 2.')
        result = query_preference(CFG, make_pair(1.0, 0.0), transport)
        summary_chat, elicitation_chat = transport.requests
        parts = summary_chat.get_messages()[0]['content']
        assert parts[0]['text'] == image_summary_prompt('pointmass')
        assert [p['type'] for p in parts[1:]] == ['image_url', 'image_url']
        encoded = parts[1]['image_url']['url'].split('base64,', 1)[1]
        assert base64.b64decode(encoded).startswith(b'P5\n64 64\n255\n')
        assert elicitation_chat.text_parts() == [preference_elicitation_prompt('pointmass', result.summary)]
        assert result.summary == 'The dot is closer in Image 2.'

    def test_retries_then_succeeds(self):
        transport = EngineMock(answers=['0'], failures=2, retries=3)
        assert query_preference(CFG, make_pair(1.0, 0.0), transport).label == 'first'
        assert transport.calls == 4

    def test_retries_exhausted(self):
        transport = EngineMock(failures=100, retries=2)
        with pytest.raises(TransportException) as e:
            query_preference(CFG, make_pair(1.0, 0.0), transport)
        assert e.value.attempts == 3
        assert isinstance(e.value.last_error, ConnectionError)
        assert transport.calls == 3


class TestCache:
    def test_hit_issues_no_requests(self):
        cache = VerdictCache()
        transport = EngineMock(answers=['0'])
        pair = make_pair(1.0, 0.0)
        first = query_preference(CFG, pair, transport, cache)
        second = query_preference(CFG, pair, transport, cache)
        assert first == second
        assert transport.calls == 2

    def test_keyed_by_order_and_model(self):
        cache = VerdictCache()
        pair = make_pair(1.0, 0.0)
        cache.put(pair, 'a', verdict('first'))
        assert cache.get(pair, 'b') is None
        assert cache.get(pair.swapped(), 'a') is None
        assert cache.get(pair, 'a').label == 'first'

    def test_persists_across_instances(self, tmp_path):
        path = str(tmp_path / 'verdicts.jsonl')
        pair = make_pair(1.0, 0.0, ids=(4, 9))
        VerdictCache(path).put(pair, 'mock-vlm', verdict('second'))
        reloaded = VerdictCache(path)
        assert len(reloaded) == 1
        assert reloaded.get(pair, 'mock-vlm').label == 'second'

    def test_unreadable_lines_are_skipped(self, tmp_path):
        path = tmp_path / 'verdicts.jsonl'
        path.write_text('not json\n' + json.dumps({'first': 1, 'second': 2, 'model': 'm',
                                                    'verdict': {'label': 'first', 'raw_response': '0'}}) + '\n')
        assert len(VerdictCache(str(path))) == 1


class TestMeasureNoise:
    def test_agreement_and_disagreement(self):
        truth = [PreferenceLabel.FIRST, PreferenceLabel.SECOND]
        assert measure_noise([verdict('first'), verdict('second')], truth) == 0.0
        assert measure_noise([verdict('second'), verdict('first')], truth) == 1.0

    def test_indifferent_excluded(self):
        truth = [PreferenceLabel.FIRST] * 50 + [PreferenceLabel.SECOND] * 10
        verdicts = [verdict('second')] * 23 + [verdict('first')] * 27 + [verdict('indifferent')] * 10
        assert measure_noise(verdicts, truth) == pytest.approx(0.46)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            measure_noise([verdict('first')], [])


class TestRender:
    def test_gridworld_goal_reached(self):
        states = np.zeros((3, 27))
        states[-1, 24] = 1.0
        pixels = gridworld_raster(make_traj(0, [0.0, 1.0], states=states, kind='gridworld'))
        assert pixels.shape == (5, 5)
        assert pixels[4, 4] == 192
        assert np.count_nonzero(pixels) == 1

    def test_gridworld_agent_and_goal(self):
        states = np.zeros((3, 27))
        states[-1, 6] = 1.0
        pixels = gridworld_raster(make_traj(0, [0.0, 0.0], states=states, kind='gridworld'))
        assert pixels[1, 1] == 128 and pixels[4, 4] == 255

    def test_pointmass_corner(self):
        states = np.zeros((3, 2))
        states[-1] = [1.0, 1.0]
        pixels = pointmass_raster(make_traj(0, [0.0, 0.0], states=states))
        assert pixels[0, 63] == 255
        assert pixels[63 - 32, 32] == 128

    def test_pgm_header(self):
        data = render_trajectory(make_traj(0, [0.0, 0.0], states=np.zeros((3, 2))))
        header = b'P5\n64 64\n255\n'
        assert data.startswith(header)
        assert len(data) == len(header) + 64 * 64

    def test_unknown_kind(self):
        with pytest.raises(ConfigurationError):
            render_trajectory(make_traj(0, kind='atari'))


class TestRemoteTeacher:
    def test_batch_keeps_input_order(self):
        teacher = RemoteTeacher(CFG, transport=EngineMock(answers=['0', '1', '-1']))
        pairs = [make_pair(1.0, 0.0, ids=(2 * i, 2 * i + 1)) for i in range(3)]
        assert [v.label for v in teacher.query_batch(pairs)] == ['first', 'second', 'indifferent']

    def test_concurrent_batch(self):
        cfg = RemoteTeacherConfig(model_name='mock-vlm', max_in_flight=4)
        teacher = RemoteTeacher(cfg, transport=EngineMock(answers=['1']))
        pairs = [make_pair(1.0, 0.0, ids=(2 * i, 2 * i + 1)) for i in range(10)]
        verdicts = teacher.query_batch(pairs)
        assert len(verdicts) == 10 and all(v.label == 'second' for v in verdicts)
        assert teacher.transport.calls == 20

    def test_async_batch(self):
        teacher = RemoteTeacher(CFG, transport=EngineMock(answers=['0']))
        pairs = [make_pair(1.0, 0.0, ids=(2 * i, 2 * i + 1)) for i in range(5)]
        verdicts = asyncio.run(teacher.async_query_batch(pairs))
        assert [v.label for v in verdicts] == ['first'] * 5

    def test_label_drops_indifferent_and_ties(self):
        teacher = RemoteTeacher(CFG, transport=EngineMock(answers=['0', '1', '0', '-1']))
        pairs = [make_pair(3.0, 1.0, ids=(0, 1)),
                 make_pair(3.0, 1.0, ids=(2, 3)),
                 make_pair(1.0, 1.0, ids=(4, 5)),
                 make_pair(0.0, 2.0, ids=(6, 7))]
        labeled, verdicts = teacher.label(pairs)
        assert len(verdicts) == 4
        assert [s.pair.key for s in labeled] == [(0, 1), (2, 3)]
        assert not labeled[0].flipped
        assert labeled[1].flipped and labeled[1].ground_truth is PreferenceLabel.FIRST

    def test_injected_noise_keeps_remote_verdicts(self):
        teacher = RemoteTeacher(CFG, transport=EngineMock(answers=['1']))
        pairs = [make_pair(3.0, 1.0, ids=(2 * i, 2 * i + 1)) for i in range(200)]
        labeled, _ = teacher.label(pairs)
        assert all(s.flipped for s in labeled)
        noisy = NoiseInjector({'kind': 'uniform', 'target_rate': 0.1}).apply(labeled, np.random.default_rng(2))
        # 200 draws at p=0.1: 4 sigma is about 0.085
        assert np.mean([s.flipped for s in noisy]) == pytest.approx(0.9, abs=0.085)
        assert all(s.ground_truth is PreferenceLabel.FIRST for s in noisy)

    def test_default_transport_needs_api_key(self, monkeypatch):
        monkeypatch.delenv('PREFNOISE_TEST_KEY', raising=False)
        with pytest.raises(ConfigurationError):
            RemoteTeacher(RemoteTeacherConfig(api_key_env_var='PREFNOISE_TEST_KEY'))


class FakeHttpClient:
    posted = []

    def __init__(self, timeout=None):
        self.timeout = timeout

    def __enter__(self):
        return self

    def __exit__(self, *args):
        return False

    def post_json(self, url, data, headers):
        FakeHttpClient.posted.append((url, json.loads(data), headers))
        return {'choices': [{'message': {'role': 'assistant', 'content': '1'}}],
                'usage': {'prompt_tokens': 12, 'completion_tokens': 1, 'total_tokens': 13}}


class TestEngineOpenAI:
    def test_from_config(self, monkeypatch):
        monkeypatch.setenv('PREFNOISE_TEST_KEY', 'sk-test')
        engine = EngineOpenAI.from_config(RemoteTeacherConfig(endpoint_url='http://localhost:8000/v1/',
                                                              model_name='local-vlm',
                                                              api_key_env_var='PREFNOISE_TEST_KEY',
                                                              max_retries=5))
        assert engine.url == 'http://localhost:8000/v1/chat/completions'
        assert engine.headers['Authorization'] == 'Bearer sk-test'
        assert engine.retry_config.attempts == 6

    def test_payload(self):
        engine = EngineOpenAI(api_key='k', model='local-vlm', temperature=0.2)
        chat = ModelChat()
        chat.add_user_message('hello')
        data, headers = engine.prepare_data(chat)
        assert json.loads(data) == {'model': 'local-vlm',
                                    'messages': [{'role': 'user', 'content': 'hello'}],
                                    'temperature': 0.2}
        assert headers['Content-Type'] == 'application/json'

    def test_generate_parses_completion(self, monkeypatch):
        monkeypatch.setattr('prefnoise.engine.engine_openai.HttpClient', FakeHttpClient)
        FakeHttpClient.posted.clear()
        engine = EngineOpenAI(api_key='k', model='local-vlm', retries=0)
        chat = ModelChat()
        chat.add_user_message('hello')
        response = engine.generate(chat)
        assert response.content == '1'
        assert response.usage.total_tokens == 13
        assert FakeHttpClient.posted[0][0].endswith('/chat/completions')

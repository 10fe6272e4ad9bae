#!/usr/bin/env python3
"""
Tests for run configuration loading, merging and validation
"""
import json

import pytest

from transientscope.config import DEFAULT_CONFIG, RunConfig, load_json, merge
from transientscope.errors import ConfigError
from transientscope.zoo import get_preset


def test_defaults():
    config = RunConfig()
    assert config.model == 'example1'
    assert config.seed == 0
    assert config.transient_time.threshold == 0.005
    assert config.classify.empirical.radii == [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    assert config.portrait.grid == [60, 60]
    assert DEFAULT_CONFIG.search.mode == 'profile'


def test_unknown_key_reports_dotted_path():
    with pytest.raises(ConfigError, match=r"^search\.radius: unknown key$"):
        RunConfig.from_dict({'search': {'radius': 1e-3}})
    with pytest.raises(ConfigError, match=r"^classify\.empirical\.budget: unknown key$"):
        RunConfig.from_dict({'classify': {'empirical': {'budget': 4}}})
    with pytest.raises(ConfigError, match=r"^colour: unknown key$"):
        RunConfig.from_dict({'colour': 'red'})


def test_nested_sections_are_built():
    config = RunConfig.from_dict({
        'simulate': {'initial_state': [0.1, 0.0], 'first_crossing': {'level': 0.5}},
        'classify': {'empirical': {'samples': 32}},
    })
    assert config.simulate.first_crossing.level == 0.5
    assert config.simulate.first_crossing.component == 0
    assert config.classify.empirical.samples == 32
    assert config.classify.empirical.horizon == 10_000


def test_steps_must_be_positive():
    config = RunConfig.from_dict({'simulate': {'initial_state': [0.0, 0.0], 'steps': 0}})
    with pytest.raises(ConfigError, match=r"simulate\.steps"):
        config.validate_command('simulate')


@pytest.mark.parametrize("block, message", [
    ({'transient_time': {}}, r"transient_time\.initial_state: required"),
    ({'transient_time': {'initial_state': [0.1, 0.0], 'threshold': -1}},
     r"transient_time\.threshold"),
    ({'transient_time': {'initial_state': [0.1, 0.0], 'horizon': 10, 'T': 10}},
     r"transient_time\.horizon"),
    ({'transient_time': {'initial_state': [0.1, 'a']}}, r"transient_time\.initial_state\[1\]"),
])
def test_transient_time_block_errors(block, message):
    with pytest.raises(ConfigError, match=message):
        RunConfig.from_dict(block).validate_command('transient_time')


def test_search_mode_requirements():
    with pytest.raises(ConfigError, match=r"search\.mode"):
        RunConfig.from_dict({'search': {'mode': 'grid'}}).validate_command('search')
    with pytest.raises(ConfigError, match=r"search\.candidate"):
        RunConfig.from_dict({'search': {'mode': 'profile'}}).validate_command('search')
    with pytest.raises(ConfigError, match=r"search\.direction"):
        RunConfig.from_dict({'search': {'mode': 'scaling', 'candidate': [0, 0]}}) \
            .validate_command('search')
    with pytest.raises(ConfigError, match=r"search\.region"):
        RunConfig.from_dict({'search': {'mode': 'points'}}).validate_command('search')


def test_portrait_region_needs_two_axes():
    with pytest.raises(ConfigError, match=r"portrait\.region: required"):
        RunConfig().validate_command('portrait')
    with pytest.raises(ConfigError, match=r"portrait\.region"):
        RunConfig.from_dict({'portrait': {'region': [[0, 1]]}}).validate_command('portrait')
    with pytest.raises(ConfigError, match=r"portrait\.region\[0\]"):
        RunConfig.from_dict({'portrait': {'region': [[1, 0], [0, 1]]}}).validate_command('portrait')


def test_top_level_checks():
    with pytest.raises(ConfigError, match=r"^seed"):
        RunConfig.from_dict({'seed': -1}).validate()
    with pytest.raises(ConfigError, match=r"^seed"):
        RunConfig.from_dict({'seed': 2 ** 64}).validate()
    with pytest.raises(ConfigError, match=r"^jobs"):
        RunConfig.from_dict({'jobs': 0}).validate()
    with pytest.raises(ConfigError, match=r"^observable"):
        RunConfig.from_dict({'observable': []}).validate()
    assert RunConfig.from_dict({'observable': [1, 2]}).validate().observable == [1.0, 2.0]


def test_simulate_states_order():
    config = RunConfig.from_dict({'simulate': {
        'initial_state': [1.0, 0.0],
        'extra_states': [[2.0, 0.0]],
        'direction': [0.0, 1.0],
        'scales': [0.5, 0.25],
    }}).validate_command('simulate')
    assert config.simulate.states() == [[1.0, 0.0], [2.0, 0.0], [0.0, 0.5], [0.0, 0.25]]


def test_sweep_axis_values():
    config = RunConfig.from_dict({'sweep': {
        'grid': {'d': {'start': 0.5, 'stop': 4.5, 'num': 9}, 'r': [0.5, 1]},
        'fixed_point': 'E_K',
    }}).validate_command('sweep')
    assert config.sweep.axis_values('d') == pytest.approx([0.5 + 0.5 * k for k in range(9)])
    assert config.sweep.axis_values('r') == [0.5, 1.0]


def test_sweep_axis_errors():
    with pytest.raises(ConfigError, match=r"sweep\.grid\.d\.step: unknown key"):
        RunConfig.from_dict({'sweep': {'grid': {'d': {'start': 0, 'stop': 1, 'step': 2}},
                                       'fixed_point': 'E0'}}).validate_command('sweep')
    with pytest.raises(ConfigError, match=r"sweep\.fixed_point"):
        RunConfig.from_dict({'sweep': {'grid': {'d': [1.0]}}}).validate_command('sweep')
    with pytest.raises(ConfigError, match=r"sweep\.initial_state"):
        RunConfig.from_dict({'sweep': {'grid': {}, 'target': 'transient_time'}}) \
            .validate_command('sweep')


def test_merge_precedence():
    preset = get_preset('fig4')
    file_config = {'params': {'d': 2.0}, 'classify': {'empirical': {'samples': 16}}}
    cli = {'seed': 9}
    merged = merge(merge(preset, file_config), cli)

    # params are replaced wholesale, sections merge key by key
    assert merged['params'] == {'d': 2.0}
    assert merged['classify']['empirical']['samples'] == 16
    assert merged['classify']['empirical']['enabled'] is False
    assert merged['seed'] == 9
    assert preset['params'] != merged['params']


def test_json_round_trip(tmp_path):
    config = RunConfig.from_dict(get_preset('fig6')).validate()
    path = tmp_path / "run.json"
    config.to_json_file(str(path))

    again = RunConfig.from_json_file(str(path))
    assert again.to_dict() == config.to_dict()


def test_load_json_errors(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_json(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_json(str(bad))
    listing = tmp_path / "list.json"
    listing.write_text(json.dumps([1, 2]))
    with pytest.raises(ConfigError, match="top level"):
        load_json(str(listing))

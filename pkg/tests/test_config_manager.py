"""Tests für config.config_manager."""

import json

import pytest
import yaml

from config.config_manager import ConfigManager


def test_defaults_without_file(tmp_path):
    manager = ConfigManager(tmp_path)
    assert manager.config_file == tmp_path / "config" / "settings.yaml"
    assert manager.get_numerics()['dense_cap'] == 4096
    assert manager.get_settings()['output_format'] == 'csv'
    assert manager.get_table_settings()['levels_2d'] == 4
    assert manager.validate_config() == []


def test_project_settings_are_valid(project_root):
    manager = ConfigManager(project_root)
    assert manager.validate_config() == []
    assert manager.get_full_config() == manager.default_config


def test_file_is_merged_recursively(tmp_path):
    config_file = tmp_path / "custom.yaml"
    config_file.write_text(yaml.safe_dump({'numerics': {'max_workers': 4}}), encoding='utf-8')
    manager = ConfigManager(tmp_path, config_file)
    assert manager.get_numerics()['max_workers'] == 4
    assert manager.get_numerics()['dense_cap'] == 4096


def test_broken_file_falls_back_to_defaults(tmp_path):
    config_file = tmp_path / "broken.yaml"
    config_file.write_text("- nur\n- eine Liste\n", encoding='utf-8')
    manager = ConfigManager(tmp_path, config_file)
    assert manager.load_config() is False
    assert manager.get_full_config() == manager.default_config


def test_validation_reports_errors(tmp_path):
    manager = ConfigManager(tmp_path)
    manager.set_setting('output_format', 'pdf')
    manager.set_setting('default_metric', 'z', section='numerics')
    manager.set_setting('alphas', [1.5, 2.0], section='tables')
    manager.set_setting('eval_point', 1.5, section='tables')
    errors = manager.validate_config()
    assert len(errors) == 4
    with pytest.raises(ValueError):
        manager.set_setting('x', 1, section='unknown')


def test_save_reload_and_reset(tmp_path):
    manager = ConfigManager(tmp_path)
    manager.set_setting('debug_mode', True)
    assert manager.save_config()
    reloaded = ConfigManager(tmp_path)
    assert reloaded.get_setting('debug_mode') is True
    reloaded.reset_to_defaults()
    assert reloaded.get_setting('debug_mode') is False
    assert json.loads(reloaded.export_config('json'))['numerics']['default_metric'] == 'b'
    assert yaml.safe_load(reloaded.export_config('yaml')) == reloaded.default_config


def test_summary_output(tmp_path, capsys):
    ConfigManager(tmp_path).show_config_summary()
    assert "Konfiguration gültig" in capsys.readouterr().out

#!/usr/bin/env python3
"""
Configuration Manager für das Riesz-Toolkit
===========================================

Zentrale Verwaltung aller Konfigurationseinstellungen.
Standardwerte liegen im Code; config/settings.yaml überschreibt sie rekursiv.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.1.0
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from modules.coefficients import ALPHA_MAX, ALPHA_MIN

VALID_OUTPUT_FORMATS = ['csv', 'json', 'xlsx']
VALID_METRICS = ['a', 'b']


class ConfigManager:
    """Zentrale Verwaltung der Konfigurationseinstellungen."""

    def __init__(self, project_root: Path, config_file: Optional[Path] = None):
        """
        Initialisiert den Configuration Manager.

        Args:
            project_root: Wurzelverzeichnis des Projekts
            config_file: alternative YAML-Datei (Standard: config/settings.yaml)
        """
        self.project_root = Path(project_root)
        self.config_file = Path(config_file) if config_file else self.project_root / "config" / "settings.yaml"
        self.logger = logging.getLogger(__name__)

        # Standard-Konfiguration
        self.default_config = self._get_default_config()

        # Aktuelle Konfiguration
        self.config = copy.deepcopy(self.default_config)

        # Konfiguration laden
        self.load_config()

    def _get_default_config(self) -> Dict[str, Any]:
        """
        Gibt die Standard-Konfiguration zurück.

        Returns:
            Standard-Konfiguration
        """
        return {
            'settings': {
                'debug_mode': False,
                'log_to_file': False,
                'output_dir': 'data/output',
                'output_format': 'csv',
            },
            'numerics': {
                'dense_cap': 4096,
                'sign_threshold': 1e-13,
                'default_metric': 'b',
                'max_workers': 1,
                'float_format': '%.6e',
            },
            'tables': {
                'alphas': [1.1, 1.3, 1.5, 1.7, 1.9],
                'alpha_beta_pairs': [[1.1, 1.8], [1.3, 1.6], [1.5, 1.5], [1.7, 1.4], [1.9, 1.2]],
                'levels_1d': 5,
                'levels_2d': 4,
                'eval_point': 0.5,
            },
        }

    def load_config(self) -> bool:
        """
        Lädt die Konfiguration aus der YAML-Datei.

        Returns:
            True wenn erfolgreich, False sonst
        """
        if not self.config_file.exists():
            self.logger.info("Keine Konfigurationsdatei gefunden - verwende Standards")
            return False

        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                file_config = yaml.safe_load(f) or {}

            if not isinstance(file_config, dict):
                raise ValueError("Konfigurationsdatei enthält kein Mapping")

            # Konfiguration rekursiv mergen
            self.config = self._merge_config(self.default_config, file_config)

            self.logger.info(f"Konfiguration geladen: {self.config_file}")
            return True

        except Exception as e:
            self.logger.error(f"Fehler beim Laden der Konfiguration: {e}")
            self.config = copy.deepcopy(self.default_config)
            return False

    def save_config(self) -> bool:
        """
        Speichert die aktuelle Konfiguration als YAML.

        Returns:
            True wenn erfolgreich, False sonst
        """
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)

            with open(self.config_file, 'w', encoding='utf-8') as f:
                f.write(self.export_config('yaml'))

            self.logger.info(f"Konfiguration gespeichert: {self.config_file}")
            return True

        except Exception as e:
            self.logger.error(f"Fehler beim Speichern der Konfiguration: {e}")
            return False

    def _merge_config(self, default: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
        """
        Mergt geladene Konfiguration mit Standard-Konfiguration.

        Args:
            default: Standard-Konfiguration
            loaded: Geladene Konfiguration

        Returns:
            Gemergete Konfiguration
        """
        merged = copy.deepcopy(default)

        for key, value in loaded.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_config(merged[key], value)
            else:
                merged[key] = value

        return merged

    def get_settings(self) -> Dict[str, Any]:
        """Allgemeine Einstellungen (Debug, Logging, Ausgabe)."""
        return dict(self.config['settings'])

    def get_numerics(self) -> Dict[str, Any]:
        """Numerische Einstellungen (Dichte-Grenze, Metrik, Threads)."""
        return dict(self.config['numerics'])

    def get_table_settings(self) -> Dict[str, Any]:
        return dict(self.config['tables'])

    def set_setting(self, key: str, value: Any, section: str = 'settings'):
        """
        Setzt eine Einstellung.

        Args:
            key: Einstellungs-Schlüssel
            value: Wert
            section: Abschnitt ('settings', 'numerics', 'tables')
        """
        if section not in self.config:
            raise ValueError(f"Unbekannter Abschnitt: {section}")
        self.config[section][key] = value
        self.logger.info(f"Einstellung '{section}.{key}' = {value}")

    def get_setting(self, key: str, default: Any = None) -> Any:
        return self.config['settings'].get(key, default)

    def reset_to_defaults(self):
        """Setzt die Konfiguration auf Standard-Werte zurück."""
        self.config = copy.deepcopy(self.default_config)
        self.logger.info("Konfiguration auf Standard-Werte zurückgesetzt")

    def export_config(self, format: str = 'json') -> str:
        """
        Exportiert die Konfiguration.

        Args:
            format: Ausgabeformat ('json', 'yaml')

        Returns:
            Konfiguration als String
        """
        if format.lower() == 'yaml':
            return yaml.safe_dump(self.config, default_flow_style=False,
                                  allow_unicode=True, indent=2, sort_keys=False)
        return json.dumps(self.config, indent=2, ensure_ascii=False)

    def validate_config(self) -> List[str]:
        """
        Validiert die aktuelle Konfiguration.

        Returns:
            Liste der Validierungsfehler
        """
        errors = []
        settings = self.config.get('settings', {})
        numerics = self.config.get('numerics', {})
        tables = self.config.get('tables', {})

        if settings.get('output_format') not in VALID_OUTPUT_FORMATS:
            errors.append(f"Ungültiges Ausgabeformat: {settings.get('output_format')}")

        if numerics.get('default_metric') not in VALID_METRICS:
            errors.append(f"Unbekannte Fehlermetrik: {numerics.get('default_metric')}")

        cap = numerics.get('dense_cap')
        if not isinstance(cap, int) or cap <= 0:
            errors.append(f"Dichte-Grenze muss eine positive ganze Zahl sein: {cap}")

        workers = numerics.get('max_workers')
        if not isinstance(workers, int) or workers < 1:
            errors.append(f"max_workers muss >= 1 sein: {workers}")

        alphas = list(tables.get('alphas', []))
        for pair in tables.get('alpha_beta_pairs', []):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                errors.append(f"Ungültiges (alpha, beta)-Paar: {pair}")
                continue
            alphas.extend(pair)
        for alpha in alphas:
            if not isinstance(alpha, (int, float)) or not ALPHA_MIN <= alpha <= ALPHA_MAX:
                errors.append(f"Ordnung außerhalb von (1, 2): {alpha}")

        point = tables.get('eval_point')
        if not isinstance(point, (int, float)) or not 0.0 < point < 1.0:
            errors.append(f"Auswertepunkt muss in (0, 1) liegen: {point}")

        return errors

    def show_config_summary(self):
        """Zeigt eine Zusammenfassung der Konfiguration an."""
        print("\n⚙️ KONFIGURATION")
        print("-" * 40)

        for section in ('settings', 'numerics', 'tables'):
            print(f"{section}:")
            for key, value in self.config[section].items():
                print(f"  {key}: {value}")

        errors = self.validate_config()
        if errors:
            print("\n❌ Validierungsfehler:")
            for error in errors:
                print(f"  • {error}")
        else:
            print("\n✅ Konfiguration gültig")

    def get_full_config(self) -> Dict[str, Any]:
        return copy.deepcopy(self.config)

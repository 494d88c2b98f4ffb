#!/usr/bin/env python3
"""
Results Processor
=================

Schreibt Konvergenzberichte und Felder in strukturierte Ausgabedateien:

- Berichte als CSV (Punkt als Dezimaltrenner, %.6e), JSON (volle Genauigkeit)
  oder Excel-Mappe mit Ergebnis- und Zusammenfassungsblatt
- 1D-Felder (x, numeric, exact, error) und 2D-Felder (x, y, numeric, exact, error) als CSV

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 2.0.0
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from modules.harness import ConvergenceReport
from modules.operators import Field1D
from modules.solver2d import Field2D

OUTPUT_FORMATS = ('csv', 'json', 'xlsx')


class ResultsProcessor:
    """Rendert Berichte und Felder und legt die Dateien im Ausgabeverzeichnis ab."""

    def __init__(self, output_dir: Path, settings: Dict[str, Any]):
        """
        Initialisiert den Results Processor.

        Args:
            output_dir: Ausgabeverzeichnis
            settings: Konfigurationseinstellungen (Abschnitt 'numerics' wird gelesen)
        """
        self.output_dir = Path(output_dir)
        self.settings = settings
        self.logger = logging.getLogger(__name__)
        numerics = settings.get('numerics', {}) if isinstance(settings, dict) else {}
        self.float_format = numerics.get('float_format', '%.6e')

        # Ausgabedateien
        self.output_files: List[Path] = []

    def format_report(self, report: ConvergenceReport, fmt: str = 'csv') -> str:
        """Bericht als Text (csv oder json)."""
        fmt = fmt.lower()
        if fmt == 'csv':
            return report.to_csv(self.float_format)
        if fmt == 'json':
            return report.to_json()
        raise ValueError(f"Textformat nicht unterstützt: {fmt}")

    def save_report(self, report: ConvergenceReport, filename: Optional[str] = None,
                    fmt: Optional[str] = None) -> Path:
        """
        Speichert einen Bericht.

        Args:
            report: Konvergenzbericht
            filename: Dateiname oder Pfad; Standard table_<id>.<fmt>
            fmt: csv | json | xlsx; Standard aus der Dateiendung oder 'csv'

        Returns:
            Pfad der geschriebenen Datei
        """
        if fmt is None:
            suffix = Path(filename).suffix.lstrip('.').lower() if filename else ''
            fmt = suffix if suffix in OUTPUT_FORMATS else 'csv'
        fmt = fmt.lower()
        if fmt not in OUTPUT_FORMATS:
            raise ValueError(f"Unbekanntes Ausgabeformat: {fmt}")

        target = self._target(filename or f"table_{report.table_id}.{fmt}")
        if fmt == 'xlsx':
            self._write_excel(report, target)
        else:
            target.write_text(self.format_report(report, fmt), encoding='utf-8')

        self.output_files.append(target)
        self.logger.info(f"   📄 Bericht gespeichert: {target.name}")
        return target

    def _write_excel(self, report: ConvergenceReport, target: Path) -> None:
        df = report.to_dataframe()
        summary = pd.DataFrame([
            {'Parameter': str(key), **{name: value for name, value in orders.items()}}
            for key, orders in report.final_orders().items()
        ])
        try:
            with pd.ExcelWriter(target, engine='openpyxl') as writer:
                df.to_excel(writer, sheet_name='Ergebnisse', index=False)
                if not summary.empty:
                    summary.to_excel(writer, sheet_name='Zusammenfassung', index=False)
        except Exception as e:
            self.logger.error(f"Fehler beim Erstellen der Excel-Datei: {e}")
            raise

    def save_field_1d(self, numeric: Field1D, exact: Optional[Field1D] = None,
                      filename: str = 'field_1d.csv') -> Path:
        """Schreibt ein 1D-Feld mit Spalten x, numeric, exact, error."""
        data = {'x': numeric.grid.nodes, 'numeric': numeric.values}
        if exact is not None:
            data['exact'] = exact.values
            data['error'] = np.abs(numeric.values - exact.values)
        return self._write_frame(pd.DataFrame(data), filename)

    def save_field_2d(self, numeric: Field2D, exact: Optional[Field2D] = None,
                      filename: str = 'field_2d.csv') -> Path:
        """Schreibt ein 2D-Feld mit Spalten x, y, numeric, exact, error (x läuft schnell)."""
        X, Y = np.meshgrid(numeric.grid_x.nodes, numeric.grid_y.nodes)
        data = {'x': X.ravel(), 'y': Y.ravel(), 'numeric': numeric.values.ravel()}
        if exact is not None:
            data['exact'] = exact.values.ravel()
            data['error'] = np.abs(numeric.values - exact.values).ravel()
        return self._write_frame(pd.DataFrame(data), filename)

    def _write_frame(self, df: pd.DataFrame, filename: str) -> Path:
        target = self._target(filename)
        df.to_csv(target, index=False, float_format=self.float_format, lineterminator='\n')
        self.output_files.append(target)
        self.logger.info(f"   📄 Feld gespeichert: {target.name} ({len(df)} Zeilen)")
        return target

    def _target(self, filename: str) -> Path:
        path = Path(filename)
        if not path.is_absolute() and path.parent == Path('.'):
            path = self.output_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

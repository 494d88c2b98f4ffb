#!/usr/bin/env python3
"""
File Utilities für das Riesz-Toolkit
====================================

Hilfsfunktionen für Ausgabeverzeichnisse und die Übersicht erzeugter Dateien.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.1.0
"""

import logging
from pathlib import Path
from typing import Dict, List, Union


class FileUtils:
    """Hilfsfunktionen für Datei- und Verzeichnisoperationen."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def ensure_directory_structure(self, directories: Dict[str, Union[str, Path]]) -> Dict[str, Path]:
        """
        Stellt sicher, dass alle Verzeichnisse existieren.

        Args:
            directories: Dictionary mit Verzeichnis-Namen und Pfaden

        Returns:
            Dictionary mit Verzeichnis-Namen und Path-Objekten
        """
        created_directories = {}

        for name, path in directories.items():
            dir_path = Path(path)

            if not dir_path.exists():
                try:
                    dir_path.mkdir(parents=True, exist_ok=True)
                    self.logger.info(f"Verzeichnis erstellt: {dir_path}")
                except Exception as e:
                    self.logger.error(f"Fehler beim Erstellen von {name}: {e}")
                    raise

            created_directories[name] = dir_path

        return created_directories

    def create_output_directory(self, base_dir: Path, run_name: str) -> Path:
        """
        Erstellt das Ausgabeverzeichnis eines Laufs (z. B. 'table_3').

        Args:
            base_dir: Basis-Verzeichnis
            run_name: Name des Laufs

        Returns:
            Pfad zum Ausgabeverzeichnis
        """
        output_dir = Path(base_dir) / run_name
        output_dir.mkdir(parents=True, exist_ok=True)
        self.logger.debug(f"Ausgabeverzeichnis: {output_dir}")
        return output_dir

    def format_file_size(self, size_bytes: int) -> str:
        """
        Formatiert eine Dateigröße lesbar.

        Args:
            size_bytes: Größe in Bytes

        Returns:
            Formatierte Größe (z. B. '1.5 KB')
        """
        size = float(size_bytes)
        for unit in ('B', 'KB', 'MB'):
            if size < 1024.0:
                return f"{size:.0f} {unit}" if unit == 'B' else f"{size:.1f} {unit}"
            size /= 1024.0
        return f"{size:.1f} GB"

    def describe_outputs(self, files: List[Path]) -> List[str]:
        """Zeilen 'name (größe)' für eine Liste erzeugter Dateien."""
        lines = []
        for path in files:
            path = Path(path)
            if path.exists():
                lines.append(f"{path.name} ({self.format_file_size(path.stat().st_size)})")
            else:
                lines.append(f"{path.name} (fehlt)")
        return lines

#!/usr/bin/env python3
"""
Riesz-Toolkit Setup
===================

Erstellt die Projektstruktur, schreibt die Standard-Konfiguration und die
requirements.txt.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 2.0.0
"""

import sys
from pathlib import Path

from config.config_manager import ConfigManager
from utils.file_utils import FileUtils

# Projektwurzel
PROJECT_ROOT = Path(__file__).parent

REQUIREMENTS = [
    "numpy>=1.22.0",
    "scipy>=1.8.0",
    "pandas>=1.5.0",
    "pyyaml>=6.0",
    "openpyxl>=3.0.0",
    "pytest>=7.0",
]


def setup_project_structure(root: Path = PROJECT_ROOT):
    """Erstellt die Projektstruktur und die Standard-Konfiguration."""
    print("🏗️  Erstelle Projektstruktur...")

    directories = FileUtils().ensure_directory_structure({
        'output': root / "data" / "output",
        'config': root / "config",
        'modules': root / "modules",
    })

    for directory in directories.values():
        print(f"   📁 {directory}")

    config_file = root / "config" / "settings.yaml"
    if not config_file.exists():
        if not ConfigManager(root, config_file).save_config():
            raise RuntimeError(f"Standard-Konfiguration konnte nicht geschrieben werden: {config_file}")
        print(f"   ⚙️  Standard-Konfiguration: {config_file}")

    print("✅ Projektstruktur erstellt")


def create_requirements_file(root: Path = PROJECT_ROOT):
    """Erstellt eine requirements.txt Datei."""
    req_file = root / "requirements.txt"
    with open(req_file, 'w', encoding='utf-8') as f:
        f.write('\n'.join(REQUIREMENTS) + '\n')

    print(f"📦 requirements.txt erstellt: {req_file}")


def main():
    """Hauptfunktion für Setup."""
    print("🚀 Riesz-Toolkit Projekt-Setup")
    print("=" * 50)

    setup_project_structure()
    print()

    create_requirements_file()
    print()

    print("🎉 Setup abgeschlossen!")
    print("=" * 50)
    print("Nächste Schritte:")
    print("1. Installieren Sie die Abhängigkeiten: pip install -r requirements.txt")
    print("2. Koeffizienten ausgeben: python main.py coeffs --family kappa2 --alpha 1.5 --count 10")
    print("3. Tabelle reproduzieren: python main.py table --id 1")
    print("4. Tests: pytest")


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        print("\n⚠️  Setup durch Benutzer unterbrochen")
    except Exception as e:
        print(f"\n❌ Fehler beim Setup: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)

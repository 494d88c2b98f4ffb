#!/usr/bin/env python3
"""
Riesz-Toolkit - Hauptprogramm
=============================

Kommandozeile für Koeffizienten, Ableitungsformeln, die kompakten
Crank-Nicolson-Verfahren in 1D/2D und die Reproduktion der Konvergenztabellen.

Unterbefehle:
    coeffs   Koeffizienten einer Familie ausgeben
    deriv    Ableitungsformel an einem Punkt auswerten
    solve1d  1D-Verfahren für ein hergestelltes Beispiel
    solve2d  2D-Verfahren für ein hergestelltes Beispiel
    table    Konvergenztabelle 1..5 berechnen
    config   Konfiguration anzeigen, prüfen, ändern oder zurücksetzen

Exit-Codes: 0 Erfolg, 2 ungültige Argumente, 3 numerischer Fehlschlag.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 2.0.0
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

import pandas as pd
import yaml

from config.config_manager import ConfigManager
from modules.coefficients import coefficient_table, sign_pattern
from modules.exceptions import NumericalFailure
from modules.harness import pointwise_error, run_table, summarize_orders
from modules.results_processor import ResultsProcessor
from modules.solver1d import Problem1D, assemble1d, error_norms, exact_field, run1d
from modules.solver2d import Problem2D, assemble2d, exact_field_2d, max_error_2d, run2d
from utils.file_utils import FileUtils

PROJECT_ROOT = Path(__file__).resolve().parent

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

FAMILY_CHOICES = ['grunwald', 'kappa2', 'kappa2t', 'kappa2_tilde', 'mu']
METHOD_CHOICES = ['rec', 'conv', 'series']


class RieszToolkitApp:
    """Hauptklasse der Kommandozeile: Konfiguration, Logging und Schritte."""

    def __init__(self, config_manager: ConfigManager):
        """
        Initialisiert die Anwendung.

        Args:
            config_manager: geladene Konfiguration (settings, numerics, tables)
        """
        self.config_manager = config_manager
        self.settings = config_manager.get_settings()
        self.numerics = config_manager.get_numerics()
        self.tables = config_manager.get_table_settings()
        self.output_dir = Path(self.settings.get('output_dir', 'data/output'))

        # Logger konfigurieren
        self.setup_logging()

        self.file_utils = FileUtils()
        self.results_processor = ResultsProcessor(self.output_dir, self.config_manager.get_full_config())

    def setup_logging(self):
        """Konfiguriert das Logging-System (stderr, optional Logdatei)."""
        debug = bool(self.config_manager.get_setting('debug_mode', False))
        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if self.config_manager.get_setting('log_to_file', False):
            self.output_dir.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(self.output_dir / "riesz_toolkit.log", encoding='utf-8'))

        logging.basicConfig(
            level=logging.INFO,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers,
            force=True  # Bestehende Handler überschreiben
        )

        self.logger = logging.getLogger(__name__)
        # Debug-Modus: nur Projekt-Module auf DEBUG, Root-Logger bleibt auf INFO
        logging.getLogger('modules').setLevel(logging.DEBUG if debug else logging.INFO)
        self.logger.setLevel(logging.DEBUG if debug else logging.INFO)

    def _emit(self, text: str, out: Optional[str] = None) -> None:
        """Gibt Nutzdaten auf stdout aus oder schreibt sie in eine Datei."""
        if out:
            target = Path(out)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding='utf-8')
            self.logger.info(f"   💾 Ausgabe geschrieben: {target}")
        else:
            sys.stdout.write(text)
            if not text.endswith('\n'):
                sys.stdout.write('\n')

    def step_coeffs(self, args: argparse.Namespace) -> None:
        """Koeffizienten einer Familie ausgeben."""
        self.logger.info(f"🔢 Koeffizienten: {args.family}, alpha={args.alpha}, n={args.count}")
        start_time = time.time()
        table = coefficient_table(args.family, args.alpha, args.count,
                                  s=args.s, p=args.p, method=args.method)
        values = [float(v) for v in table.values]
        signs = None
        if args.signs:
            threshold = float(self.numerics.get('sign_threshold', 1e-13))
            signs = [int(v) for v in sign_pattern(table, threshold=threshold)]
        if args.format == 'json':
            data = {
                'family': table.family, 'alpha': table.alpha, 's': table.s, 'p': table.p,
                'method': table.method, 'values': values,
            }
            if signs is not None:
                data['signs'] = signs
            payload = json.dumps(data, indent=2)
        else:
            df = pd.DataFrame({'index': range(len(values)), 'value': values})
            if signs is not None:
                df['sign'] = signs
            payload = df.to_csv(index=False, float_format='%.16e', lineterminator='\n')
        self._emit(payload, args.out)
        self.logger.info(f"✅ {len(values)} Koeffizienten berechnet ({time.time() - start_time:.2f}s)")

    def step_deriv(self, args: argparse.Namespace) -> None:
        """Ableitungsformel an einem Punkt gegen die exakte Riesz-Ableitung prüfen."""
        metric = args.metric or self.numerics.get('default_metric', 'b')
        self.logger.info(f"📐 Ableitung {args.formula} bei x={args.at}, h={args.h}, alpha={args.alpha}")
        start_time = time.time()
        result = pointwise_error(args.alpha, args.formula, args.h, x0=args.at, metric=metric,
                                 s1=args.s1, s2=args.s2, p=args.p, s=args.s)
        row = {
            'formula': args.formula, 'alpha': args.alpha, 'h': args.h, 'x': args.at,
            'metric': metric if args.formula != 'gen' else '', **result,
        }
        self._emit(pd.DataFrame([row]).to_csv(index=False, float_format='%.16e', lineterminator='\n'))
        self.logger.info(f"✅ Fehler {result['error']:.6e} ({time.time() - start_time:.2f}s)")

    def step_solve1d(self, args: argparse.Namespace) -> None:
        """1D-Verfahren für ein Beispiel rechnen."""
        self.logger.info(f"⚡ 1D-Verfahren: {args.example}, alpha={args.alpha}, M={args.M}, N={args.N}")
        start_time = time.time()
        cap = int(self.numerics.get('dense_cap', 4096))
        problem = Problem1D.from_example(args.alpha, args.example)
        scheme = assemble1d(problem, args.M, args.N, tau=args.tau, cap=cap)
        numeric = run1d(scheme, problem)
        exact = exact_field(scheme, problem)
        norms = error_norms(numeric, exact)
        row = {'M': args.M, 'N': args.N, 'tau': scheme.tau, 't_final': scheme.final_time, **norms}
        self._emit(pd.DataFrame([row]).to_csv(index=False, float_format='%.6e', lineterminator='\n'))
        if args.dump:
            self.results_processor.save_field_1d(numeric, exact, args.dump)
        self.logger.info(f"✅ 1D-Lauf abgeschlossen, max. Fehler {norms['max_abs']:.6e} "
                         f"({time.time() - start_time:.2f}s)")

    def step_solve2d(self, args: argparse.Namespace) -> None:
        """2D-Verfahren für ein Beispiel rechnen."""
        self.logger.info(f"⚡ 2D-Verfahren: {args.example}, alpha={args.alpha}, beta={args.beta}, "
                         f"Ma={args.Ma}, Mb={args.Mb}, N={args.N}")
        start_time = time.time()
        cap = int(self.numerics.get('dense_cap', 4096))
        problem = Problem2D.from_example(args.alpha, args.beta, args.example)
        scheme = assemble2d(problem, args.Ma, args.Mb, args.N, tau=args.tau, cap=cap)
        numeric = run2d(scheme, problem)
        exact = exact_field_2d(scheme, problem)
        error = max_error_2d(numeric, exact)
        row = {'Ma': args.Ma, 'Mb': args.Mb, 'N': args.N, 'tau': scheme.tau,
               't_final': scheme.final_time, 'max_abs': error}
        self._emit(pd.DataFrame([row]).to_csv(index=False, float_format='%.6e', lineterminator='\n'))
        if args.dump:
            self.results_processor.save_field_2d(numeric, exact, args.dump)
        self.logger.info(f"✅ 2D-Lauf abgeschlossen, max. Fehler {error:.6e} ({time.time() - start_time:.2f}s)")

    def step_table(self, args: argparse.Namespace) -> None:
        """Konvergenztabelle berechnen und ausgeben."""
        self.logger.info(f"📊 Tabelle {args.id}")
        start_time = time.time()
        alphas = _parse_alphas(args.alphas, pairs=(args.id == 5)) if args.alphas else None
        report = run_table(args.id, alphas=alphas, max_level=args.max_level,
                           metric=args.metric,
                           settings={'numerics': self.numerics, 'tables': self.tables})
        fmt = args.format or self.config_manager.get_setting('output_format', 'csv')

        if fmt == 'xlsx':
            # Excel nur als Datei
            target = args.out or str(self.file_utils.create_output_directory(
                self.output_dir, f"table_{args.id}") / f"table_{args.id}.xlsx")
            self.results_processor.save_report(report, target, 'xlsx')
        elif args.out:
            self.results_processor.save_report(report, args.out, fmt)
        else:
            self._emit(self.results_processor.format_report(report, fmt))

        for line in self.file_utils.describe_outputs(self.results_processor.output_files):
            self.logger.info(f"      • {line}")
        self.logger.info(f"   📈 {summarize_orders(report)}")
        self.logger.info(f"✅ Tabelle {args.id} abgeschlossen ({time.time() - start_time:.2f}s)")

    def step_config(self, args: argparse.Namespace) -> None:
        """Konfiguration zurücksetzen, Einträge setzen, prüfen oder exportieren."""
        manager = self.config_manager
        if args.reset:
            manager.reset_to_defaults()
        for assignment in args.set or []:
            name, sep, raw = assignment.partition('=')
            section, dot, key = name.partition('.')
            if not sep or not dot or not key:
                raise ValueError(f"Erwartet abschnitt.schlüssel=wert, nicht {assignment!r}")
            manager.set_setting(key.strip(), yaml.safe_load(raw), section=section.strip())

        if args.reset or args.set:
            errors = manager.validate_config()
            if errors:
                raise ValueError(f"Konfiguration ungültig, nicht gespeichert: {'; '.join(errors)}")
            if not manager.save_config():
                raise RuntimeError(f"Konfiguration konnte nicht gespeichert werden: {manager.config_file}")

        if args.check:
            manager.show_config_summary()
            errors = manager.validate_config()
            if errors:
                raise ValueError(f"{len(errors)} Validierungsfehler")
        else:
            self._emit(manager.export_config(args.format))

    def run(self, args: argparse.Namespace) -> int:
        """Führt den gewählten Unterbefehl aus und bildet Fehler auf Exit-Codes ab."""
        steps = {
            'coeffs': self.step_coeffs,
            'deriv': self.step_deriv,
            'solve1d': self.step_solve1d,
            'solve2d': self.step_solve2d,
            'table': self.step_table,
            'config': self.step_config,
        }
        try:
            steps[args.command](args)
            return EXIT_OK
        except NumericalFailure as e:
            self.logger.error(f"❌ Numerischer Fehlschlag: {e}")
            code = EXIT_NUMERICAL
        except ValueError as e:
            self.logger.error(f"❌ Ungültige Eingabe: {e}")
            code = EXIT_INVALID
        except Exception as e:
            self.logger.error(f"❌ Unerwarteter Fehler: {e}")
            code = EXIT_FAILURE
        if self.config_manager.get_setting('debug_mode', False):
            import traceback
            traceback.print_exc()
        return code


def _parse_alphas(text: str, pairs: bool = False) -> List:
    """'1.1,1.5' oder für Paare '1.1:1.8,1.5:1.5'."""
    items = [item.strip() for item in text.split(',') if item.strip()]
    if not items:
        raise ValueError(f"Leere alpha-Liste: {text!r}")
    try:
        if pairs:
            parsed = []
            for item in items:
                alpha, beta = item.split(':')
                parsed.append((float(alpha), float(beta)))
            return parsed
        return [float(item) for item in items]
    except ValueError:
        raise ValueError(f"Ungültige alpha-Liste: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    """Argument-Parser mit allen Unterbefehlen."""
    parser = argparse.ArgumentParser(
        prog='riesz-toolkit',
        description='Fraktional-kompakte Approximationen der Riesz-Ableitung',
    )
    parser.add_argument('--config', type=Path, default=None, help='alternative YAML-Konfiguration')
    parser.add_argument('--debug', action='store_true', help='Debug-Ausgaben der Module aktivieren')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('coeffs', help='Koeffizienten einer Familie')
    p.add_argument('--family', choices=FAMILY_CHOICES, required=True)
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--s', type=float, default=0.0)
    p.add_argument('--p', type=int, default=2)
    p.add_argument('--count', type=int, required=True)
    p.add_argument('--method', choices=METHOD_CHOICES, default='rec')
    p.add_argument('--format', choices=['csv', 'json'], default='csv')
    p.add_argument('--signs', action='store_true', help='Vorzeichenmuster (numerics.sign_threshold) mit ausgeben')
    p.add_argument('--out', default=None)

    p = sub.add_parser('deriv', help='Ableitungsformel an einem Punkt')
    p.add_argument('--formula', choices=['f7', 'f8', 'f9', 'gen'], required=True)
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--s1', type=float, default=-1.0)
    p.add_argument('--s2', type=float, default=1.0)
    p.add_argument('--p', type=int, default=2)
    p.add_argument('--s', type=float, default=-1.0)
    p.add_argument('--h', type=float, required=True)
    p.add_argument('--at', type=float, required=True)
    p.add_argument('--metric', choices=['a', 'b'], default=None)

    p = sub.add_parser('solve1d', help='1D-Verfahren')
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--M', type=int, required=True)
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--tau', type=float, default=None)
    p.add_argument('--example', choices=['ex2'], default='ex2')
    p.add_argument('--dump', default=None)

    p = sub.add_parser('solve2d', help='2D-Verfahren')
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--beta', type=float, required=True)
    p.add_argument('--Ma', type=int, required=True)
    p.add_argument('--Mb', type=int, required=True)
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--tau', type=float, default=None)
    p.add_argument('--example', choices=['ex3'], default='ex3')
    p.add_argument('--dump', default=None)

    p = sub.add_parser('table', help='Konvergenztabelle')
    p.add_argument('--id', type=int, choices=[1, 2, 3, 4, 5], required=True)
    p.add_argument('--alphas', default=None)
    p.add_argument('--max-level', type=int, default=None)
    p.add_argument('--metric', choices=['a', 'b'], default=None)
    p.add_argument('--out', default=None)
    p.add_argument('--format', choices=['csv', 'json', 'xlsx'], default=None)

    p = sub.add_parser('config', help='Konfiguration')
    p.add_argument('--set', action='append', metavar='ABSCHNITT.SCHLÜSSEL=WERT')
    p.add_argument('--reset', action='store_true', help='auf Standardwerte zurücksetzen und speichern')
    p.add_argument('--check', action='store_true', help='Zusammenfassung und Validierung')
    p.add_argument('--format', choices=['yaml', 'json'], default='yaml')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Einstiegspunkt der Kommandozeile.

    Args:
        argv: Argumente ohne Programmname (Standard: sys.argv[1:])

    Returns:
        Exit-Code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    config_manager = ConfigManager(PROJECT_ROOT, args.config)
    if args.debug:
        config_manager.set_setting('debug_mode', True)

    app = RieszToolkitApp(config_manager)
    for error in config_manager.validate_config():
        app.logger.warning(f"⚠️ Konfiguration: {error}")

    try:
        return app.run(args)
    except KeyboardInterrupt:
        app.logger.warning("⚠️  Ausführung durch Benutzer unterbrochen")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

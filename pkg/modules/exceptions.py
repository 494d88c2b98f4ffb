#!/usr/bin/env python3
"""
Fehlertypen des Riesz-Toolkits
==============================

Ungültige Eingaben werden als ValueError gemeldet. Numerische Fehlschläge
(Faktorisierung, singuläre Systeme, Dichte-Grenze) haben eigene Typen, damit
die Kommandozeile sie auf Exit-Code 3 abbilden kann.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.0.0
"""


class NumericalFailure(RuntimeError):
    """Numerischer Fehlschlag (Faktorisierung, singuläres System, Reihenarithmetik)."""


class DenseCapExceeded(NumericalFailure):
    """Dichte Matrix würde die konfigurierte Unbekannten-Grenze überschreiten."""

    def __init__(self, unknowns: int, cap: int):
        super().__init__(
            f"Dichte-Grenze überschritten: {unknowns} Unbekannte > {cap} erlaubt"
        )
        self.unknowns = unknowns
        self.cap = cap


def check_dense_cap(unknowns: int, cap: int) -> None:
    """Wirft DenseCapExceeded, wenn ``unknowns`` die Grenze ``cap`` überschreitet."""
    if unknowns > cap:
        raise DenseCapExceeded(unknowns, cap)

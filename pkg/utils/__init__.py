"""Hilfsfunktionen"""

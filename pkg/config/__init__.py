"""Konfiguration des Riesz-Toolkits"""

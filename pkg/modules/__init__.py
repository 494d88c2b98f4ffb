"""Riesz-Toolkit: Koeffizienten, kompakte Ableitungsformeln und Crank-Nicolson-Verfahren"""

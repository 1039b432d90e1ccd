"""Formes de Chern-Simons, degré et monopôle"""

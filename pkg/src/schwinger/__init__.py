"""Termes de Schwinger des commutateurs de courant"""

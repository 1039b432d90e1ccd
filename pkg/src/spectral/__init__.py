"""Opérateurs de Dirac sur le cercle"""

"""Algèbres de Lie et groupes"""

"""Grilles, formes différentielles et applications de groupe"""

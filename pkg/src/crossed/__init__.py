"""Modules croisés"""

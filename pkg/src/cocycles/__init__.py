"""Cocycles de courant, cohomologie de groupe et de Čech"""

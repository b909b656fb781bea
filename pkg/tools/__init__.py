"""Herramientas de verificación de LexKit"""

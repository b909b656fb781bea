"""
LexKit - Banco de trabajo para el cálculo λex

Términos con sustituciones explícitas, reducción módulo equivalencias,
oráculo de normalización fuerte, cálculo etiquetado, tipos con
intersección y superdesarrollos.
"""

__version__ = '1.0.0'

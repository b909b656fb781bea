#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Errores del Sistema

Todas las operaciones de la biblioteca lanzan subclases de LexkitError;
la línea de comandos las traduce a códigos de salida.
"""


class LexkitError(Exception):
    """Error base de LexKit"""

    exit_code = 70


class IllFormedInput(LexkitError):
    """El término no cumple la precondición de la operación"""


class ConfigError(LexkitError):
    """Configuración inválida (archivo, variables de entorno o flags)"""

    exit_code = 64


class ParseError(LexkitError):
    """Error de sintaxis con posición y tokens esperados"""

    exit_code = 65

    def __init__(self, message, span, expected=()):
        super().__init__(message)
        self.span = span
        self.expected = frozenset(expected)

    def __str__(self):
        base = super().__str__()
        if self.expected:
            return f"{base} (bytes {self.span.start}-{self.span.end}; se esperaba: {', '.join(sorted(self.expected))})"
        return f"{base} (bytes {self.span.start}-{self.span.end})"


class FuelExhausted(LexkitError):
    """Se agotó el combustible; `partial` guarda el resultado parcial"""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotAReduct(LexkitError):
    """El término destino no es un reducto en un paso"""


class OracleUnknown(LexkitError):
    """El oráculo de SN no pudo decidir dentro del combustible"""


class NotSN(LexkitError):
    """El oráculo probó que el término no es fuertemente normalizante"""


class NotLiftable(LexkitError):
    """No existe un paso λuex que levante el paso λex dado"""


class UnificationFailure(LexkitError):
    """Fallo de unificación (choque de constructores u occurs-check)"""

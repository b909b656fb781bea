#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Configuración

Funcionalidades:
- Lectura de config.ini (combustibles, motor, salida, suites, logging)
- Escalado global de combustibles con LEXKIT_FUEL_SCALE
- Validación de la configuración efectiva de la línea de comandos
"""

import configparser
import logging
import os
from dataclasses import dataclass, field, replace

from lexkit.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config.ini')
FUEL_SCALE_VARIABLE = 'LEXKIT_FUEL_SCALE'

FUEL_KEYS = ('node_fuel', 'step_fuel', 'class_bound', 'join_depth', 'confluence_depth', 'z_fuel', 'depth_fuel')

SUITE_DEFAULTS = {
    'composition_size': 8,
    'composition_es_size': 6,
    'beta_size': 8,
    'strategy_size': 8,
    'isn_size': 8,
    'psn_samples': 1000,
    'psn_size': 12,
    'labelled_size': 6,
    'ie_samples': 500,
    'z_size': 7,
    'confluence_size': 7,
    'type_depth': 3,
    'typing_size': 7,
    'revb_size': 7,
    'max_cases': 0,
}


@dataclass(frozen=True)
class CliConfig:
    node_fuel: int = 20000
    step_fuel: int = 100000
    class_bound: int = 1024
    join_depth: int = 6
    confluence_depth: int = 3
    z_fuel: int = 64
    depth_fuel: int = 200
    ruleset: str = 'LambdaEx'
    policy: str = 'perpetual'
    output: str = 'text'
    seed: int = 1729

    def validate(self):
        for name in FUEL_KEYS:
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"El combustible {name} debe ser un entero positivo (recibido {value!r})")
        if self.output not in ('text', 'json'):
            raise ConfigError(f"Modo de salida desconocido: {self.output}")
        if self.policy not in ('leftmost', 'perpetual'):
            raise ConfigError(f"Política desconocida: {self.policy}")
        return self

    def override(self, **values):
        """Sustituye sólo los valores dados explícitamente (no None)"""
        given = {k: v for k, v in values.items() if v is not None}
        return replace(self, **given).validate()


@dataclass(frozen=True)
class LoggingConfig:
    level: str = 'WARNING'
    file: str = ''
    max_size_mb: int = 10
    backup_count: int = 5
    format: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


@dataclass(frozen=True)
class LexkitConfig:
    cli: CliConfig = field(default_factory=CliConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    suites: dict = field(default_factory=lambda: dict(SUITE_DEFAULTS))
    source: str = ''


def fuel_scale():
    raw = os.environ.get(FUEL_SCALE_VARIABLE)
    if raw is None or raw.strip() == '':
        return 1.0
    try:
        scale = float(raw)
    except ValueError as exc:
        raise ConfigError(f"{FUEL_SCALE_VARIABLE} no es un decimal: {raw!r}") from exc
    if scale <= 0:
        raise ConfigError(f"{FUEL_SCALE_VARIABLE} debe ser positivo: {raw!r}")
    return scale


def _read_int(parser, section, key, default):
    try:
        return parser.getint(section, key, fallback=default)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} debe ser un entero") from exc


def load_config(path=None):
    """Configuración efectiva: valores por defecto, luego el fichero, luego el escalado"""
    parser = configparser.ConfigParser(interpolation=None)
    source = path or DEFAULT_CONFIG_FILE
    if path and not os.path.exists(path):
        raise ConfigError(f"No existe el fichero de configuración {path}")
    read = parser.read(source, encoding='utf-8')
    if read:
        logger.debug(f"Configuración leída de {source}")

    defaults = CliConfig()
    values = {name: _read_int(parser, 'FUELS', name, getattr(defaults, name)) for name in FUEL_KEYS}
    scale = fuel_scale()
    if scale != 1.0:
        values = {name: max(1, int(round(value * scale))) for name, value in values.items()}
    cli = CliConfig(
        **values,
        ruleset=parser.get('ENGINE', 'ruleset', fallback=defaults.ruleset),
        policy=parser.get('ENGINE', 'policy', fallback=defaults.policy),
        output=parser.get('OUTPUT', 'mode', fallback=defaults.output),
        seed=_read_int(parser, 'OUTPUT', 'seed', defaults.seed),
    ).validate()

    log_defaults = LoggingConfig()
    log_config = LoggingConfig(
        level=parser.get('LOGGING', 'level', fallback=log_defaults.level).upper(),
        file=parser.get('LOGGING', 'file', fallback=log_defaults.file).strip(),
        max_size_mb=_read_int(parser, 'LOGGING', 'max_size_mb', log_defaults.max_size_mb),
        backup_count=_read_int(parser, 'LOGGING', 'backup_count', log_defaults.backup_count),
        format=parser.get('LOGGING', 'format', fallback=log_defaults.format),
    )

    suites = {name: _read_int(parser, 'SUITES', name, default) for name, default in SUITE_DEFAULTS.items()}
    negative = [name for name, value in suites.items() if value < 0]
    if negative:
        raise ConfigError(f"[SUITES] valores negativos: {', '.join(negative)}")
    return LexkitConfig(cli=cli, logging=log_config, suites=suites, source=source if read else '')

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Configuración de Logging

Funcionalidades:
- Salida coloreada por stderr con colorlog
- Fichero rotativo opcional según [LOGGING]
"""

import logging
import os
from logging.handlers import RotatingFileHandler

import colorlog

LOG_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'bold_red',
}


def setup_logging(config, verbose=False):
    """Instala los handlers del logger 'lexkit'; stdout queda libre para los resultados"""
    logger = logging.getLogger('lexkit')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    level = logging.DEBUG if verbose else getattr(logging, config.level, logging.WARNING)
    logger.setLevel(level)
    logger.propagate = False

    stream = colorlog.StreamHandler()  # stderr
    stream.setFormatter(colorlog.ColoredFormatter('%(log_color)s' + config.format, log_colors=LOG_COLORS))
    logger.addHandler(stream)

    if config.file:
        directory = os.path.dirname(config.file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(
            config.file,
            maxBytes=config.max_size_mb * 1024 * 1024,
            backupCount=config.backup_count,
            encoding='utf-8',
        )
        file_handler.setFormatter(logging.Formatter(config.format))
        logger.addHandler(file_handler)

    return logger

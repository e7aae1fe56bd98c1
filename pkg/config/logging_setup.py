#!/usr/bin/env python3
"""
config/logging_setup.py
Configuración del registro (logging) común a todos los paquetes
"""

import logging
import os
from typing import Optional, Union

FORMATO = '%(levelname)s: %(message)s'


def configurar_logging(nivel: Optional[Union[str, int]] = None) -> int:
    """
    Aplica logging.basicConfig con el formato común del proyecto.

    El nivel sale del argumento, de Z2LAB_LOG_LEVEL o, por defecto, INFO.
    Devuelve el nivel numérico aplicado.
    """
    if nivel is None:
        nivel = os.getenv("Z2LAB_LOG_LEVEL", "INFO")
    if isinstance(nivel, str):
        numerico = logging.getLevelName(nivel.upper())
        if not isinstance(numerico, int):
            raise ValueError(f"nivel de logging desconocido: {nivel}")
        nivel = numerico
    logging.basicConfig(level=nivel, format=FORMATO, force=True)
    return nivel

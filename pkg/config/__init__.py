#!/usr/bin/env python3
"""
config/__init__.py
Rutas y registro compartidos por todo el laboratorio
"""

from .logging_setup import configurar_logging

__all__ = ['configurar_logging']

#!/usr/bin/env python3
"""
cli_runner/cli.py
Línea de órdenes del laboratorio: run, decode-sweep, percolation, collapse, verify y repro

Prioridad de valores: flag > fichero de configuración > valor por defecto.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

import numpy as np

from config import configurar_logging
from config.paths import OUTPUTS_DIR
from scaling_analysis import EnsembleCurve, collapse_parameters, estimate_threshold

from .executor import TrialFailureError, execute
from .experiment import ConfigError, OutputPathError, load_config
from .recipes import RECIPES, recipe
from .verify import SUITES, run_suites

logger = logging.getLogger(__name__)


def _opciones_comunes(p: argparse.ArgumentParser) -> None:
    p.add_argument("--log-level", default=None,
                   help="Nivel de registro (flag > env:Z2LAB_LOG_LEVEL > INFO)")


def _opciones_ejecucion(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="Semilla maestra (sustituye a la del fichero)")
    p.add_argument("--workers", type=int, default=None,
                   help="Procesos (flag > fichero > env:Z2LAB_WORKERS > 1)")
    p.add_argument("--out", default=None, help="CSV de salida; el manifiesto va al lado con extensión .json")
    p.add_argument("--no-progress", action="store_true", help="Sin barra de progreso")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="z2lab", description="Laboratorio de circuitos monitorizados Z₂")
    sub = parser.add_subparsers(dest="command", required=True)

    for nombre, ayuda in (("run", "Observables de fase (χ_SG, χ_PM, información mutua)"),
                          ("decode-sweep", "Probabilidad de éxito de los decodificadores"),
                          ("percolation", "Banderas de percolación SG/PM")):
        p = sub.add_parser(nombre, help=ayuda)
        p.add_argument("--config", required=True, help="Fichero clave = valor")
        _opciones_ejecucion(p)
        _opciones_comunes(p)

    p = sub.add_parser("collapse", help="Colapso de escala y umbral desde un CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--model", default=None)
    p.add_argument("--observable", default=None)
    p.add_argument("--p-c0", type=float, default=None, help="Punto de partida de p_c (por defecto, el cruce)")
    p.add_argument("--nu0", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--fit-gamma", action="store_true")
    p.add_argument("--threshold", action="store_true", help="Estimación de umbral con bootstrap")
    p.add_argument("--bootstrap", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    _opciones_comunes(p)

    p = sub.add_parser("verify", help="Baterías contra los oráculos exhaustivos")
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", action="append", choices=list(SUITES), default=None)
    _opciones_comunes(p)

    p = sub.add_parser("repro", help="Receta canónica de una figura")
    p.add_argument("figure", choices=list(RECIPES))
    p.add_argument("--full", action="store_true", help="Escala completa (por defecto, escala de humo)")
    p.add_argument("--out-dir", default=str(OUTPUTS_DIR), help="Directorio de salida (env:Z2LAB_OUTPUTS_DIR)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-progress", action="store_true")
    _opciones_comunes(p)
    return parser


def _workers_por_defecto(args) -> Optional[int]:
    if args.workers is not None:
        return args.workers
    entorno = os.getenv("Z2LAB_WORKERS")
    return int(entorno) if entorno else None


def _cmd_experimento(args) -> int:
    config = load_config(args.config)
    if config.command != args.command:
        raise ConfigError(f"el fichero declara command = {config.command}, no {args.command}")
    config = config.with_overrides(seed=args.seed, workers=_workers_por_defecto(args), out=args.out)
    resultado = execute(config, progress=not args.no_progress)
    print(resultado.csv_path)
    return 0


def _cmd_repro(args) -> int:
    config = recipe(args.figure, full=args.full, out_dir=args.out_dir, seed=args.seed,
                    workers=_workers_por_defecto(args))
    resultado = execute(config, progress=not args.no_progress)
    print(resultado.csv_path)
    return 0


def _cmd_collapse(args) -> int:
    curva = EnsembleCurve.from_csv(args.csv, model=args.model, observable=args.observable)
    informe = {"model": curva.model, "observable": curva.observable, "sizes": curva.sizes}
    if args.threshold:
        estimacion = estimate_threshold(curva, nu0=args.nu0, n_bootstrap=args.bootstrap,
                                        rng=np.random.default_rng(args.seed))
        informe["threshold"] = {
            "p_cross": estimacion.p_cross, "p_cross_err": estimacion.p_cross_err,
            "p_c": estimacion.p_c, "p_c_err": estimacion.p_c_err,
            "nu": estimacion.nu, "nu_err": estimacion.nu_err,
        }
    p_c0 = args.p_c0
    if p_c0 is None:
        p_c0 = informe["threshold"]["p_cross"] if "threshold" in informe else float(np.median(curva.data["p"]))
    ajuste = collapse_parameters(curva, p_c0=p_c0, nu0=args.nu0, gamma=args.gamma, fit_gamma=args.fit_gamma)
    informe["collapse"] = {"p_c": ajuste.p_c, "nu": ajuste.nu, "gamma": ajuste.gamma, "cost": ajuste.cost}
    print(json.dumps(informe, indent=2, ensure_ascii=False, default=float))
    return 0


def _cmd_verify(args) -> int:
    resultados = run_suites(casos=args.cases, seed=args.seed, names=args.suite)
    for r in resultados:
        print(f"{'OK ' if r.ok else 'FALLO'} {r.name}: {r.passed}/{r.total}")
    return 0 if all(r.ok for r in resultados) else 1


_COMANDOS = {
    "run": _cmd_experimento,
    "decode-sweep": _cmd_experimento,
    "percolation": _cmd_experimento,
    "collapse": _cmd_collapse,
    "verify": _cmd_verify,
    "repro": _cmd_repro,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configurar_logging(args.log_level)
    try:
        return _COMANDOS[args.command](args)
    except (ValueError, FileNotFoundError) as e:
        logger.error(f"❌ {e}")
        return 2
    except OutputPathError as e:
        logger.error(f"❌ Salida no escribible: {e}")
        return 3
    except TrialFailureError as e:
        logger.error(f"❌ {e}")
        return 4


if __name__ == "__main__":
    sys.exit(main())

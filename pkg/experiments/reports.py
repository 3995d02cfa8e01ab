"""
Emisión de tablas de reporte: CSV de máquina y texto alineado (pandas).

Porcentajes con los decimales de STACKGA['REPORT_DECIMALS'] ("97.57");
métricas indefinidas como el literal `undefined`.
"""
import json
import logging
from pathlib import Path

import pandas as pd
from django.conf import settings

logger = logging.getLogger(__name__)

UNDEFINED = 'undefined'


def _decimals():
    return settings.STACKGA.get('REPORT_DECIMALS', 2)


def format_percent(value):
    """Fracción -> porcentaje con decimales fijos; None -> 'undefined'."""
    if value is None:
        return UNDEFINED
    return f"{100.0 * value:.{_decimals()}f}"


def format_number(value):
    """Número ya expresado en su unidad (referencias en %, milisegundos)."""
    if value is None:
        return ''
    if isinstance(value, float):
        return f"{value:.{_decimals()}f}"
    return str(value)


def table_frame(table, include_timings=True):
    columns = table.columns if include_timings else table.body_columns
    frame = pd.DataFrame(table.rows, columns=table.columns)
    return frame[columns].fillna('').astype(str)


def to_csv(table):
    """Cuerpo CSV determinista (sin columnas de tiempo)."""
    return table_frame(table, include_timings=False).to_csv(index=False, lineterminator='\n')


def to_text(table):
    """Tabla alineada para lectura humana, con notas y procedencia."""
    lines = [table.title, '=' * len(table.title)]
    if table.rows:
        lines.append(table_frame(table).to_string(index=False))
    else:
        lines.append('(sin filas)')
    for note in table.notes:
        lines.append(f"* {note}")
    if table.provenance:
        lines.append('')
        lines.append('Procedencia:')
        for key in sorted(table.provenance):
            lines.append(f"  {key}: {table.provenance[key]}")
    return '\n'.join(lines) + '\n'


def write_outputs(table, config, stem):
    """
    Escribe <stem>.csv, <stem>.txt, config.resolved.json y provenance.json
    en el directorio de salida de la configuración.

    Returns:
        Path: directorio de salida
    """
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f'{stem}.csv').write_text(to_csv(table), encoding='utf-8')
    (out / f'{stem}.txt').write_text(to_text(table), encoding='utf-8')
    (out / 'config.resolved.json').write_text(config.canonical_json() + '\n', encoding='utf-8')
    (out / 'provenance.json').write_text(
        json.dumps(table.provenance, indent=2, sort_keys=True, default=str) + '\n', encoding='utf-8',
    )
    logger.info(f"Reportes escritos en {out}")
    return out

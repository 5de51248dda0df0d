"""
Escritura de resultados de experimentos: CSV por corrida, resúmenes y manifiesto JSON.
"""
import csv
import io
import os
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np

from utils.serialization import write_json
import logging

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """Flotantes con repr (ida y vuelta exacta); None como celda vacía."""
    if value is None:
        return ""
    if isinstance(value, np.generic):
        return format_cell(value.item())
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


class ResultRepository:
    """Repositorio responsable de los archivos de salida en un directorio."""

    def __init__(self, out_dir: Union[str, Path]):
        self.out_dir = Path(out_dir)

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def write_csv(
        self,
        name: str,
        rows: Iterable[Mapping[str, Any]],
        columns: Optional[Sequence[str]] = None,
    ) -> Path:
        """
        Escribe filas como CSV de forma atómica.

        Si no se dan columnas se usan las claves de la primera fila.
        """
        rows = list(rows)
        if columns is None:
            columns = list(rows[0].keys()) if rows else []
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])

        target = self.path(name)
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp = target.with_name(target.name + ".tmp")
        tmp.write_text(buffer.getvalue(), encoding="utf-8")
        os.replace(tmp, target)
        logger.info(f"Resultados escritos en {target} ({len(rows)} filas)")
        return target

    def write_json(self, name: str, data: Any) -> Path:
        target = write_json(self.path(name), data)
        logger.info(f"JSON escrito en {target}")
        return target

    def read_csv(self, name: str) -> List[dict]:
        """Lee un CSV escrito por este repositorio (todas las celdas como texto)."""
        with open(self.path(name), newline="", encoding="utf-8") as handle:
            return list(csv.DictReader(handle))

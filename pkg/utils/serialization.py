import dataclasses
import os
from enum import Enum
from pathlib import Path
from typing import Any, Union

import numpy as np
import orjson
from pydantic import BaseModel


def process_data_for_json(value: Any) -> Any:
    """
    Procesa datos para serialización JSON, manejando tipos especiales:
      - BaseModel (Pydantic)
      - dataclasses (entidades del dominio)
      - escalares y arreglos de numpy
      - Enum y Path
      - colecciones anidadas (dict, list, tuple, set)

    Args:
        value (Any): Valor a procesar para serialización JSON

    Returns:
        Any: Valor procesado compatible con JSON
    """
    if isinstance(value, BaseModel):
        return process_data_for_json(value.model_dump(mode="json"))
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: process_data_for_json(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, np.ndarray):
        return process_data_for_json(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(k): process_data_for_json(v) for k, v in value.items()}
    if isinstance(value, set):
        return [process_data_for_json(item) for item in sorted(value, key=repr)]
    if isinstance(value, (list, tuple)):
        return [process_data_for_json(item) for item in value]
    return value


def dumps(data: Any) -> bytes:
    """JSON canónico: claves ordenadas e indentación fija."""
    return orjson.dumps(process_data_for_json(data), option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2)


def write_json(path: Union[str, Path], data: Any) -> Path:
    """Escribe JSON de forma atómica (temporal + os.replace)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(dumps(data) + b"\n")
    os.replace(tmp, path)
    return path

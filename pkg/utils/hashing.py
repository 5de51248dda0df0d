import hashlib
from typing import Any

import orjson

from utils.serialization import process_data_for_json


def config_hash(config: Any) -> str:
    """SHA-256 del JSON canónico (claves ordenadas, sin espacios) de una configuración."""
    canonical = orjson.dumps(process_data_for_json(config), option=orjson.OPT_SORT_KEYS)
    return hashlib.sha256(canonical).hexdigest()

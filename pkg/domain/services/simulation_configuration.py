import os
from dataclasses import dataclass
from dotenv import load_dotenv
import logging

logger = logging.getLogger(__name__)

load_dotenv(override=True, encoding='utf-8')

DEFAULT_MAX_QUBITS = 12
DEFAULT_LOG_DIR = "logs"
DEFAULT_DENOMINATOR_FLOOR = 1e-6
DEFAULT_LAMBDA_MAX = 10.0


def _read_number(name: str, default, cast):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        logger.error(f"Valor inválido para {name}: '{raw}'. Se usa el valor por defecto {default}.")
        return default


@dataclass(frozen=True)
class SimulationConfiguration:
    """Runtime settings read from the environment (or a .env file)."""

    max_qubits: int = DEFAULT_MAX_QUBITS
    log_dir: str = DEFAULT_LOG_DIR
    denominator_floor: float = DEFAULT_DENOMINATOR_FLOOR
    lambda_max: float = DEFAULT_LAMBDA_MAX

    @classmethod
    def from_environment(cls) -> 'SimulationConfiguration':
        """Create configuration from ZNEPQE_* environment variables."""
        config = cls(
            max_qubits=_read_number("ZNEPQE_MAX_QUBITS", DEFAULT_MAX_QUBITS, int),
            log_dir=os.getenv("ZNEPQE_LOG_DIR", DEFAULT_LOG_DIR),
            denominator_floor=_read_number("ZNEPQE_DENOMINATOR_FLOOR", DEFAULT_DENOMINATOR_FLOOR, float),
            lambda_max=_read_number("ZNEPQE_LAMBDA_MAX", DEFAULT_LAMBDA_MAX, float),
        )
        if not config.validate():
            raise ValueError(f"Configuración de simulación inválida: {config}")
        return config

    def validate(self) -> bool:
        return all([
            self.max_qubits >= 1,
            bool(self.log_dir),
            self.denominator_floor > 0,
            self.lambda_max > 1,
        ])

"""
Archivos de configuración de experimentos (INI plano con secciones).

    [experiment]  mode, hamiltonian, noise, mitigation, ensemble, seed, jobs, out,
                  baselines, theta, max_failure_fraction
    [solver]      shots, repeats, threshold, max_iterations, mitigated_terms
    [zne]         schedule, model, asymptote, max_adaptive_nodes, lambda_max,
                  fold_mode, richardson_order, demo_models
    [landscape]   param_index, grid_start, grid_stop, grid_points, evaluations
"""
import configparser
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from domain.schemas import ExperimentConfig
import logging

logger = logging.getLogger(__name__)

# clave del archivo -> campo de ExperimentConfig (o de ZNEConfig con prefijo "zne.")
SECTION_KEYS: Dict[str, Dict[str, str]] = {
    "experiment": {
        "mode": "mode",
        "hamiltonian": "hamiltonian_path",
        "noise": "noise",
        "mitigation": "mitigation",
        "ensemble": "ensemble",
        "seed": "seed",
        "jobs": "jobs",
        "out": "out_dir",
        "baselines": "baselines",
        "theta": "theta",
        "max_failure_fraction": "max_failure_fraction",
    },
    "solver": {
        "shots": "shots",
        "repeats": "repeats",
        "threshold": "threshold",
        "max_iterations": "max_iterations",
        "mitigated_terms": "mitigated_terms",
    },
    "zne": {
        "schedule": "zne.schedule",
        "model": "zne.model",
        "asymptote": "zne.asymptote",
        "max_adaptive_nodes": "zne.max_adaptive_nodes",
        "lambda_max": "zne.lambda_max",
        "fold_mode": "zne.fold_mode",
        "richardson_order": "zne.richardson_order",
        "demo_models": "demo_models",
    },
    "landscape": {
        "param_index": "param_index",
        "grid_start": "grid_start",
        "grid_stop": "grid_stop",
        "grid_points": "grid_points",
        "evaluations": "landscape_evaluations",
    },
}


class ExperimentConfigError(ValueError):
    """Raised for unknown sections or keys in an experiment configuration file."""
    pass


class ExperimentConfigRepository:
    """Repositorio responsable de leer configuraciones de experimento."""

    def parse(self, text: str, base_dir: Optional[Path] = None) -> Dict[str, Any]:
        """
        Convierte el texto INI en un diccionario plano de campos.

        Las rutas relativas se resuelven contra `base_dir` (el directorio del archivo).

        Raises:
            ExperimentConfigError: Si hay secciones o claves desconocidas
        """
        parser = configparser.ConfigParser()
        try:
            parser.read_string(text)
        except configparser.Error as e:
            raise ExperimentConfigError(f"Archivo de configuración mal formado: {str(e)}")

        raw: Dict[str, Any] = {}
        for section in parser.sections():
            if section not in SECTION_KEYS:
                raise ExperimentConfigError(f"Sección desconocida [{section}]; válidas: {sorted(SECTION_KEYS)}")
            mapping = SECTION_KEYS[section]
            for key, value in parser[section].items():
                if key not in mapping:
                    raise ExperimentConfigError(f"Clave desconocida '{key}' en [{section}]")
                raw[mapping[key]] = value.strip()

        if base_dir is not None:
            for field in ("hamiltonian_path", "out_dir"):
                if field in raw and not Path(raw[field]).is_absolute():
                    raw[field] = str(base_dir / raw[field])
            noise = raw.get("noise")
            if noise and (base_dir / noise).is_file():
                raw["noise"] = str(base_dir / noise)
        return raw

    def read(self, path: Union[str, Path]) -> Dict[str, Any]:
        path = Path(path)
        if not path.is_file():
            raise ExperimentConfigError(f"No existe el archivo de configuración: {path}")
        logger.info(f"Leyendo configuración de experimento desde {path}")
        return self.parse(path.read_text(encoding="utf-8"), path.parent)

    @staticmethod
    def build(raw: Mapping[str, Any], overrides: Optional[Mapping[str, Any]] = None) -> ExperimentConfig:
        """
        Combina los valores del archivo con los de la línea de comandos (que ganan)
        y valida el resultado.

        Raises:
            pydantic.ValidationError: Si algún invariante de la configuración no se cumple
        """
        merged = dict(raw)
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        fields: Dict[str, Any] = {}
        zne: Dict[str, Any] = {}
        for key, value in merged.items():
            if key.startswith("zne."):
                zne[key[len("zne."):]] = value
            else:
                fields[key] = value
        if zne:
            fields["zne"] = zne
        return ExperimentConfig(**fields)


def load_experiment_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    repository = ExperimentConfigRepository()
    raw = repository.read(path) if path is not None else {}
    return repository.build(raw, overrides)

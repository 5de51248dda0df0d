"""
Modelos de ruido predefinidos y archivos de ruido en formato INI (sección [noise]).
"""
import configparser
from pathlib import Path
from typing import Dict, Union

from domain.entities.circuit import GateKind
from domain.schemas import DEFAULT_GATE_DURATIONS_NS, NoiseModel
import logging

logger = logging.getLogger(__name__)

NOISE_SECTION = "noise"

PRESETS: Dict[str, NoiseModel] = {
    "none": NoiseModel(name="none"),
    "nisq-light": NoiseModel(
        name="nisq-light",
        p_depol_1q=0.001,
        p_depol_2q=0.01,
        t1=100.0,
        t2=80.0,
        readout=(((0.98, 0.02), (0.02, 0.98)),),
    ),
}


class NoiseModelNotFoundError(ValueError):
    """Raised when a noise reference is neither a preset nor an existing file."""
    pass


class NoiseModelFormatError(ValueError):
    """Raised when a noise file is not a valid [noise] INI."""
    pass


def _readout_matrices(p10: str, p01: str):
    # p10 = p(1|0), p01 = p(0|1); listas separadas por comas dan un valor por qubit
    flips_up = [float(v) for v in p10.split(",") if v.strip()]
    flips_down = [float(v) for v in p01.split(",") if v.strip()]
    if len(flips_up) != len(flips_down):
        if len(flips_up) == 1:
            flips_up = flips_up * len(flips_down)
        elif len(flips_down) == 1:
            flips_down = flips_down * len(flips_up)
        else:
            raise ValueError("readout_p1_given_0 y readout_p0_given_1 tienen longitudes distintas")
    return tuple(((1.0 - up, up), (down, 1.0 - down)) for up, down in zip(flips_up, flips_down))


class NoiseModelRepository:
    """Repositorio responsable de resolver modelos de ruido por nombre o archivo."""

    def parse(self, text: str, name: str = "custom") -> NoiseModel:
        """
        Claves de [noise]: p_depol_1q, p_depol_2q, t1, t2 (µs), readout_p1_given_0,
        readout_p0_given_1, duration_1q, duration_2q y duration_<tipo> (ns).

        Raises:
            NoiseModelFormatError: Si el INI es inválido, falta la sección o algún valor es inválido
        """
        parser = configparser.ConfigParser()
        try:
            parser.read_string(text)
        except configparser.Error as e:
            raise NoiseModelFormatError(f"El archivo de ruido '{name}' no es un INI válido: {str(e)}")
        if not parser.has_section(NOISE_SECTION):
            raise NoiseModelFormatError(f"El archivo de ruido '{name}' no tiene sección [{NOISE_SECTION}]")
        try:
            return self._build(parser[NOISE_SECTION], name)
        except NoiseModelFormatError:
            raise
        except ValueError as e:
            raise NoiseModelFormatError(f"El archivo de ruido '{name}' tiene valores inválidos: {str(e)}")

    def _build(self, section: configparser.SectionProxy, name: str) -> NoiseModel:
        durations = dict(DEFAULT_GATE_DURATIONS_NS)
        if "duration_1q" in section:
            for kind in GateKind:
                if kind.n_qubits == 1:
                    durations[kind.value] = section.getfloat("duration_1q")
        if "duration_2q" in section:
            durations[GateKind.CX.value] = section.getfloat("duration_2q")
        for key in section:
            if key.startswith("duration_") and key not in ("duration_1q", "duration_2q"):
                durations[GateKind(key[len("duration_"):].upper()).value] = section.getfloat(key)

        fields = {
            "name": section.get("name", name),
            "p_depol_1q": section.getfloat("p_depol_1q", 0.0),
            "p_depol_2q": section.getfloat("p_depol_2q", 0.0),
            "t1": section.get("t1", "inf"),
            "t2": section.get("t2", "inf"),
            "gate_durations": durations,
        }
        if "readout_p1_given_0" in section or "readout_p0_given_1" in section:
            fields["readout"] = _readout_matrices(
                section.get("readout_p1_given_0", "0"), section.get("readout_p0_given_1", "0")
            )
        known = {"name", "p_depol_1q", "p_depol_2q", "t1", "t2", "readout_p1_given_0", "readout_p0_given_1"}
        unknown = [k for k in section if k not in known and not k.startswith("duration_")]
        if unknown:
            raise NoiseModelFormatError(f"Claves desconocidas en [{NOISE_SECTION}]: {unknown}")
        return NoiseModel(**fields)

    def resolve(self, reference: Union[str, Path]) -> NoiseModel:
        """
        Devuelve un preset por nombre o lee un archivo INI.

        Raises:
            NoiseModelNotFoundError: Si no es un preset ni un archivo existente
            NoiseModelFormatError: Si el archivo no es un [noise] válido
        """
        key = str(reference)
        if key in PRESETS:
            return PRESETS[key]
        path = Path(key)
        if not path.is_file():
            raise NoiseModelNotFoundError(
                f"Modelo de ruido '{key}' desconocido: use {sorted(PRESETS)} o la ruta de un archivo"
            )
        model = self.parse(path.read_text(encoding="utf-8"), path.stem)
        logger.info(f"Modelo de ruido '{model.name}' cargado desde {path}")
        return model


def load_noise_model(reference: Union[str, Path]) -> NoiseModel:
    return NoiseModelRepository().resolve(reference)

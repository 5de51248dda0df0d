import sys

from endpoints.cli import build_parser, main
from utils.logger import setup_logger


def run() -> int:
    """Punto de entrada: configura el log según --log-level y delega en la CLI."""
    known, _ = build_parser().parse_known_args(sys.argv[1:])
    logger = setup_logger(known.log_level)
    logger.info("Starting ZNE-PQE experiment harness")
    return main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(run())

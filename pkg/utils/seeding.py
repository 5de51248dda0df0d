import numpy as np

# Stream tags keep measurement draws and fold selections independent for the same path.
MEASUREMENT_STREAM = 0
FOLD_STREAM = 1


def seed_sequence(base_seed: int, *path: int) -> np.random.SeedSequence:
    """
    Deterministic child seed for a structured path such as
    (run, iteration, term, mu, lambda_index, repeat).
    """
    return np.random.SeedSequence(entropy=int(base_seed), spawn_key=tuple(int(p) for p in path))


def derive_rng(base_seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(seed_sequence(base_seed, *path))


def derive_int_seed(base_seed: int, *path: int) -> int:
    """32-bit integer seed for consumers that take a plain int (e.g. FoldSpec)."""
    return int(seed_sequence(base_seed, *path).generate_state(1)[0])

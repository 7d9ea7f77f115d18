"""Application settings and configuration management."""

import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

CONFIG_DIR = Path(__file__).parent


class Settings:
    """Search caps, seeds and runtime knobs loaded from environment variables."""

    # Seeding
    SEED: int = int(os.getenv("BLOCKADE_LAB_SEED", "20240101"))

    # Logging
    LOG_LEVEL: str = os.getenv("BLOCKADE_LAB_LOG_LEVEL", "WARNING")

    # Exhaustive search caps
    COGRAPH_LIMIT: int = int(os.getenv("BLOCKADE_LAB_COGRAPH_LIMIT", "24"))
    TAU_LIMIT: int = int(os.getenv("BLOCKADE_LAB_TAU_LIMIT", "14"))
    K2_MAX_VERTICES: int = int(os.getenv("BLOCKADE_LAB_K2_MAX_VERTICES", "16"))
    K2_MAX_K: int = int(os.getenv("BLOCKADE_LAB_K2_MAX_K", "4"))
    WG_LIMIT: int = int(os.getenv("BLOCKADE_LAB_WG_LIMIT", "12"))

    # Main-lemma procedure
    WORK_LIMIT: int = int(os.getenv("BLOCKADE_LAB_WORK_LIMIT", "5000000"))

    # Suite execution
    MAX_WORKERS: int = int(os.getenv("BLOCKADE_LAB_MAX_WORKERS", "4"))
    DEFAULT_SUITE_FILE: Path = CONFIG_DIR / "suites.yaml"

    # Relative tolerance for real thresholds compared with integer sizes
    BOUNDARY_GUARD: float = float(os.getenv("BLOCKADE_LAB_BOUNDARY_GUARD", "1e-9"))


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Accepted keys for `--relax` and their canonical field names
RELAX_ALIASES = {
    "delta": "delta",
    "case": "delta",
    "width": "width",
    "len": "length",
    "length": "length",
}

# Generator kinds and their required parameters
GENERATOR_PARAMS = {
    "gnp": ["n", "p"],
    "cograph-random": ["leaves", "join_bias"],
    "planted-comb": ["t", "tooth_size", "noise"],
    "rainbow-free-rejection": ["k", "blocks", "block_size", "max_attempts"],
    "block-local": ["blocks", "block_size", "p"],
    "bipartite-covered": ["a_size", "b_size", "p"],
    "blockade-gnp": ["t", "width", "p"],
}

# Optional generator parameters and their defaults
GENERATOR_DEFAULTS = {
    "rainbow-free-rejection": {"p": 0.2, "require_comb": False},
    "block-local": {"join_pairs": 0},
    "blockade-gnp": {"max_degree": None},
}

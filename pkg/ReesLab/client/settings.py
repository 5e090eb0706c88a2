import os
from dataclasses import dataclass, field
from typing import Dict, Tuple

from dotenv import load_dotenv

from ReesLab.client.logger import LogLevel

# Pick up RLAB_* overrides from a local .env before reading the environment
load_dotenv()

"""The h-values at which FAVB fibres are sampled away from the origin"""
DEFAULT_FIBER_SAMPLES: Tuple[str, ...] = ("1", "2", "i")

"""The h-values for the rescaling intertwining check"""
DEFAULT_THETA_SAMPLES: Tuple[str, ...] = ("1", "2", "i", "1+i")

"""Seeded instances per randomized verify-all suite"""
DEFAULT_SUITE_SAMPLES: Dict[str, int] = {
    "subspace_modularity": 200,
    "splittable_n_le_2": 200,
    "bundle_conditions_n3": 100,
    "cokernel_exactness": 100,
    "strictness_codim": 100,
    "restriction": 100,
    "round_trip": 100,
    "spectral_invariants": 50,
    "base_change_random": 50,
    "flat_connections": 50,
    "perturbed_connections": 50,
}


@dataclass()
class _LabDefaults:
    """
    Default values used by the ReesLab job client and the verification suites

    """

    seed: int = int(os.environ.get("RLAB_SEED", "0"))
    log_level: LogLevel = LogLevel.parse(os.environ.get("RLAB_LOG_LEVEL", "WARNING"))
    suite_samples: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_SUITE_SAMPLES))
    random_dim_max: int = 5
    random_jump_range: Tuple[int, int] = (-2, 2)
    spectral_rmax: int = 6
    fiber_samples: Tuple[str, ...] = field(default_factory=lambda: DEFAULT_FIBER_SAMPLES)
    theta_samples: Tuple[str, ...] = field(default_factory=lambda: DEFAULT_THETA_SAMPLES)


"""The modifiable settings global for lab defaults"""
LabDefaults: _LabDefaults = _LabDefaults()

__all__ = [
    "DEFAULT_SUITE_SAMPLES",
    "LabDefaults"
]

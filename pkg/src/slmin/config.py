"""Effort bounds. Defaults can be overridden through ``SLMIN_<FIELD>`` env vars."""

import dataclasses
import os
from dataclasses import dataclass

ENV_PREFIX = "SLMIN_"


@dataclass(frozen=True)
class Bounds:
    fermat_max_k: int = 25
    pepin_max_k: int = 16
    lucas_lehmer_max_p: int = 20000
    trial_division_limit: int = 10**6
    pollard_rho_iterations: int = 10**6
    scan_max_limit: int = 10**7
    group_max_elements: int = 10**6
    subspace_max_elements: int = 10**6

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        overrides = {}
        for f in dataclasses.fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                overrides[f.name] = int(raw)
        return cls(**overrides)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


DEFAULT_BOUNDS = Bounds()


def default_bounds():
    return Bounds.from_env()

"""Relative entropy identities for finite-dimensional algebras and free-fermion lattice checks."""

import json

from ._core import (
    ConfigError,
    EntropyLabError,
    canonical_config,
    central_charge_fit,
    check_th515,
    config_hash,
    cross_ratio,
    default_config_text,
    deficit,
    engine_version,
    exact_entropy,
    extrapolate,
    ground_state_correlations,
    group_average_index,
    lattice_region,
    pimsner_popa,
    product_state_relative_entropy,
    region_entropy,
    relative_entropy_spatial,
    relative_entropy_umegaki,
    spatial_derivative,
    verify_cor_fun,
    verify_prop1,
    weyl_group,
)

__version__ = "0.3.0"

KINDS = ("findim-suite", "duality", "cross-ratio-sweep", "c-fit", "shrink", "collapse", "two-d")


def run_experiment(config_text=None, kind=None, use_cache=False, out_dir=None):
    """Run one experiment and return its report as a dict.

    Pass a config text, or a kind to use the built-in config.
    """
    if config_text is None:
        if kind is None:
            raise ValueError("give config_text or kind")
        config_text = default_config_text(kind)
    return json.loads(_core_run(config_text, use_cache, out_dir))


def _core_run(text, use_cache, out_dir):
    from ._core import run_experiment_json

    return run_experiment_json(text, use_cache, None if out_dir is None else str(out_dir))

"""Pseudo-orbit trapping and shadowing checks on finite dynamical systems."""

from .core import (
    Entourage,
    FiniteSystem,
    PointSet,
    SystemValidationError,
    load_system,
    metric_entourage,
    save_system,
    system_hash,
)
from .entourage import ball, ball_set, check_uniformity_base, compose, inverse, n_fold
from .kernel import DEFAULT_BACKEND as KERNEL_BACKEND
from .orbits import (
    all_omega_sets,
    hausdorff_distance,
    is_minimal,
    is_positively_invariant,
    omega_limit,
    orbit,
    orbit_trap_horizon,
    uniform_trap_horizon,
)
from .oracle import oracle_cover_check, oracle_trap_check
from .pseudo_orbit import (
    PseudoOrbitGraph,
    build_graph,
    delta_grid,
    enumerate_walks,
    eps_grid,
    metric_graph,
    sample_walk,
)
from .verifier import (
    certify_second_weak_shadowing,
    cover_check,
    cover_search,
    minimality_criterion,
    orbital_shadowing_check,
    pairwise_dh_check,
    strong_orbital_check_minimal,
    trap_check,
    trap_search,
)
from .zoo import cyclic_rotation, disjoint_attractors, interval_map_grid, random_map, zoo_systems

__version__ = "0.1.0"

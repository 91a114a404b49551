"""Numeric differential geometry on S^m and CP_n charts using Taylor jets."""

from .charts import ChartFrame, Geometry, complex_structure, fs_chart, sphere_chart
from .checks import (
    CheckResult,
    check_cpn_curvature,
    check_invariants,
    check_killing_connection_cpn,
    check_killing_connection_flat_on_sphere,
    check_ktractor_curvature,
    check_mu_identity,
    check_sphere_curvature,
    check_sphere_tractors,
    check_tractor_parallelism,
    run_battery,
)
from .jets import Jet, JetAlgebra, SecondOrderScalar, algebra

__all__ = [
    "ChartFrame",
    "CheckResult",
    "Geometry",
    "Jet",
    "JetAlgebra",
    "SecondOrderScalar",
    "algebra",
    "check_cpn_curvature",
    "check_invariants",
    "check_killing_connection_cpn",
    "check_killing_connection_flat_on_sphere",
    "check_ktractor_curvature",
    "check_mu_identity",
    "check_sphere_curvature",
    "check_sphere_tractors",
    "check_tractor_parallelism",
    "complex_structure",
    "fs_chart",
    "run_battery",
    "sphere_chart",
]

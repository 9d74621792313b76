"""Explicit sphere-to-unitary-group maps, their reductions, and numerical
certification of the mapping degrees behind them."""

from ._version import __version__
from .degree import (
    DegreeEstimate,
    GeneratorCertificate,
    PreimageCount,
    certify_generator,
    certify_sp_generator,
    column_estimates,
    degree_mc,
    degree_preimage,
)
from .maps import (
    CylinderMap,
    SphereValuedMap,
    UnitarySphereMap,
    bott,
    cartan_cp2,
    cartan_symmetrize,
    eta_cross,
    eta_n,
    get_map,
    lundell_reduce,
    phi,
    phi2,
    phi_hat,
    psi,
    registry,
    sp_candidate,
    zeta,
)
from .table import HomotopyTableEntry, table_entries
from .verify import CheckResult, Report, RunConfig, run_suite, suite_names

__all__ = [
    "CheckResult",
    "CylinderMap",
    "DegreeEstimate",
    "GeneratorCertificate",
    "HomotopyTableEntry",
    "PreimageCount",
    "Report",
    "RunConfig",
    "SphereValuedMap",
    "UnitarySphereMap",
    "__version__",
    "bott",
    "cartan_cp2",
    "cartan_symmetrize",
    "certify_generator",
    "certify_sp_generator",
    "column_estimates",
    "degree_mc",
    "degree_preimage",
    "eta_cross",
    "eta_n",
    "get_map",
    "lundell_reduce",
    "phi",
    "phi2",
    "phi_hat",
    "psi",
    "registry",
    "run_suite",
    "sp_candidate",
    "suite_names",
    "table_entries",
    "zeta",
]

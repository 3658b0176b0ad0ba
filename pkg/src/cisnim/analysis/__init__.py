"""Derived objects over a solved table: S, r, b, holes, U, S_n, h, g and scale series."""

from .lemmas import (
    DYADIC,
    WELL_BEHAVED,
    HalveReport,
    PhiStepReport,
    SuiteResult,
    WellBehavedReport,
    check_row_lemmas,
    check_table_theorems,
    halve_check,
    phi_step_check,
    row_periodicity_probe,
    well_behaved_scan,
)
from .pointsets import (
    GValue,
    PointSet,
    b_count,
    build_Sn,
    build_U,
    build_Ubar,
    f_weight,
    g_value,
    h_value,
    is_hole,
    r_count,
    rb_diag,
    s_contains,
)
from .scaling import (
    IdentityReport,
    ScaleReport,
    h_series,
    identity_check,
    pi_lower_bound,
    pi_nim_closed,
    region_count,
    region_series,
    zeta_from_table,
    zeta_series,
)

"""Executable checks, randomized suites and the command line."""

from .checks import (check_adjoint_theorem, check_discrepancy, check_duality,
                     check_product_cor, check_prop_3_3, check_pullout,
                     check_subadditivity, check_transform_commutes,
                     check_vanishing)
from .report import (FAIL, INCONCLUSIVE, PASS, SKIPPED, CheckReport,
                     exit_code, summary)
from .pure_powers import check_section4

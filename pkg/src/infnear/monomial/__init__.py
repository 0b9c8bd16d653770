"""Exact monomial-ideal algebra and chart-recursive principalization."""

from .ideal import (DimensionMismatch, MonomialIdeal, colength, colon, contains,
                    divide, equals, ideal_sum, intersect, is_m_primary,
                    is_subset, maximal_ideal, minimalize, monomial_factor,
                    order, parse_ideal, power, product, pure_powers,
                    unit_ideal, zero_locus_components)
from .newton import (NewtonPolyhedron, NotMPrimary, adjoint_howald,
                     integral_closure, is_integrally_closed, newton_polyhedron,
                     np_interior, np_member)
from .principalize import (DepthCapExceeded, NotFinitelySupported,
                           PrincipalizationTree, chart_transform,
                           is_finitely_supported, principalize)

"""Fans of point blowups, sections of divisorial sheaves and Čech cohomology."""

from .fan import Fan
from .cohomology import (CechComplex, CohomReport, InjectivityReport,
                         UnboundedSections, adjoint_via_sections,
                         canonical_rays, cech_dims, closure_via_sections,
                         divisor_rays, fiber_rays, injectivity_check,
                         sections_ideal)

from .bounds import identification_bounds
from .bounds import step_sum_bounds

from .manifold import classify_DE
from .manifold import detect_identification
from .manifold import local_curvature
from .manifold import local_objective
from .manifold import LocalCurvature
from .manifold import ManifoldReport

from .rate import detect_oscillations
from .rate import fit_local_rate
from .rate import RateReport

from .reference import compare_references
from .reference import dual_point
from .reference import duality_gap
from .reference import reference_solve
from .reference import ReferenceSolution


__all__ = ['ReferenceSolution',
           'dual_point',
           'duality_gap',
           'reference_solve',
           'compare_references',
           'ManifoldReport',
           'LocalCurvature',
           'classify_DE',
           'detect_identification',
           'local_objective',
           'local_curvature',
           'identification_bounds',
           'step_sum_bounds',
           'RateReport',
           'fit_local_rate',
           'detect_oscillations']

from .base import CompositeProblem
from .base import SmoothOracle
from .io import read_instance
from .io import read_instance_csv
from .io import write_instance
from .least_squares import generate_instance
from .least_squares import L1LSInstance
from .least_squares import LeastSquares
from .quadratic import Quadratic


__all__ = ['SmoothOracle',
           'CompositeProblem',
           'LeastSquares',
           'L1LSInstance',
           'Quadratic',
           'generate_instance',
           'write_instance',
           'read_instance',
           'read_instance_csv']

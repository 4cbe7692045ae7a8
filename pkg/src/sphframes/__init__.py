__version__ = "0.1.0"

from .frames import MultiresolutionLadder, decompose
from .grid import SpherePoint, build_grid
from .transform import CoeffVector, SampleVector, analyze, synthesize

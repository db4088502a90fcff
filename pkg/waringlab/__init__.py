from .version import __version__

from .algebra import Scalar, HomogeneousForm, power_of_linear
from .points import ProjectivePoint, PointSet, CurveSpec
from .binary import BinaryForm, complex_rank, real_rank
from .spans import h1_ideal, membership, unique_intersection_point, lemma_c2_check
from .factory import Instance, ConstraintViolation, generate
from .verifier import classify

"""Kloosterman sums over finite fields and the root-system checks around them."""

from ._backend import BACKEND
from .characters import AdditiveCharacter, MultiplicativeCharacter, eval_add, eval_mul
from .equidist import MomentReport, MonodromyTarget, angle_statistics, compare, empirical_moments
from .eulerchar import CensusReport, adjoint_census, g2_census, qm_census, swan_prediction
from .field import FieldElement, FieldSpec, make_field
from .repweights import WeightMultiset, adjoint, quasi_minuscule, tensor_decompose
from .rootsys import RootSystem, build
from .sums import KloostermanSpec, SumTable, kloosterman, make_spec, table_convolution, table_naive
from .wildmono import WildParameter, construct

__version__ = "0.1.0"

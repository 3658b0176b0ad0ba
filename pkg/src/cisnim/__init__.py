"""P-positions of three-heap Nim with a finite set of forbidden positions."""

from .engine import PairTable, PiCounts, classify, load_table, pi_counts, pi_curve, save_table, solve, third_of
from .errors import CisNimError, DomainError, FormatError, ParseError, RangeError, ResourceError
from .oracle import BoxSolution, Status, solve_box
from .rules import ForbiddenSet, Position, canonicalize, children, misere_forbidden, parse_forbidden

__version__ = "0.1.0"

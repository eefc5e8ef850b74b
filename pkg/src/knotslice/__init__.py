"""sl(n) link polynomials, partition combinatorics, nilpotent-slice geometry and numerical transport."""

from .braid import BraidParseError, BraidWord, parse_braid, trefoil, unlink, writhe
from .combinatorics import Partition, breakings, kostka, lis_count, spaltenstein_dim
from .homology import GradedGroup, Piece, euler_characteristic, kr_trefoil, kr_unknot, kr_unlink
from .laurent import LaurentPoly, quantum_integer
from .skein import check_markov, check_skein, kauffman_oracle, sl_n_polynomial

__version__ = "0.1.0"

__all__ = [
    "BraidParseError", "BraidWord", "parse_braid", "trefoil", "unlink", "writhe",
    "Partition", "breakings", "kostka", "lis_count", "spaltenstein_dim",
    "GradedGroup", "Piece", "euler_characteristic", "kr_trefoil", "kr_unknot", "kr_unlink",
    "LaurentPoly", "quantum_integer",
    "check_markov", "check_skein", "kauffman_oracle", "sl_n_polynomial",
]

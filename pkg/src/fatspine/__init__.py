"""Fatgraph spines with homology markings and an exact flip cocycle."""

from .ribbon import (Fatgraph, FatgraphError, FlipMove, Walk, boundary_word, flip, flip_move,
                     flippable_edges, genus, graphs_equal, incoming_cycle, is_flippable,
                     parse_fatgraph, random_walk, serialize_fatgraph, standard_spine,
                     theta_spine, to_dot, validate)
from .tensor import (Sym2W, Wedge2, cont12, cont13, eval_form, is_in_S2, outer_square, pair, sym,
                     wedge)
from .homology import (MarkedFatgraph, Marking, compute_marking, flip_marked, mark, omega_of,
                       transport, vertex_type)
from .cocycle import (VerificationReport, accumulate_s, eta, omega_vertices, s_flip,
                      verify_coboundary, verify_commutativity, verify_identities,
                      verify_pentagon, xi, xi_prime, xi_tilde)

__version__ = "0.1.0"

"""vmlab: vertex-minor and flip experiments on small graphs."""

from .core import (Graph, all_pairs_distances, canonical_form, complete_graph, cycle_graph,
                   distance, empty_graph, induced_subgraph, is_isomorphic, path_graph)
from .errors import (CapacityError, DomainError, EvaluationError, FormulaSyntaxError,
                     InvariantError, PreconditionError, ValidationError, VmlabError)
from .flips import Flip, apply_flip, clean_flip, is_homogeneous
from .vminor import VMinorWitness, apply_witness, local_complement, local_complement_set, pivot

__version__ = "0.1.0"

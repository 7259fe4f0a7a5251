"""Two-spin interaction Hamiltonians for multispin quantum logic gates."""

from .gates import (GateSpec, SignedPermutation, VerificationReport, basis_label, bits_of, canonical_xor_unitary,
                    index_of, induced_map, verify_gate, xor_gate_spec)
from .hamfile import HamFileDocument, ParseError, parse_expression, parse_file, write_file
from .linalg import EigenDecomposition, hermitian_eigen, unitary_exponential, unitarity_defect
from .pauli import (Hamiltonian, PauliLabel, PauliTerm, SpinSystem, assemble, embed_term, relabel,
                    single_pauli, xor_hamiltonian)
from .search import (InteractionTemplate, SearchConfig, SearchResult, loopless_template, nelder_mead,
                     objective, realize, search)

__version__ = "0.1.0"

"""Pauli operators, Pauli-string terms and Hamiltonian assembly.

Conventions: site 0 is the leftmost Kronecker factor, and each single-spin
basis lists the up state |1> before the down state |0>. With these, the
three-spin basis |111>, |110>, ..., |000> is indices 0..7. Energies are in
units with hbar = 1 and gate time = 1.
"""

from __future__ import annotations

import enum
import math
import string
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np


class PauliLabel(str, enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"


_MATRICES = {
    PauliLabel.I: np.array([[1, 0], [0, 1]], dtype=complex),
    PauliLabel.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliLabel.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliLabel.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in _MATRICES.values():
    _m.setflags(write=False)


def single_pauli(label: PauliLabel | str) -> np.ndarray:
    return _MATRICES[PauliLabel(label)].copy()


@dataclass(frozen=True)
class SpinSystem:
    site_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "site_names", tuple(self.site_names))
        if not self.site_names:
            raise ValueError("a spin system needs at least one site")
        if len(set(self.site_names)) != len(self.site_names):
            raise ValueError(f"duplicate site names in {self.site_names}")

    @classmethod
    def of_size(cls, n: int) -> "SpinSystem":
        if not 1 <= n <= 26:
            raise ValueError(f"default names cover 1..26 sites, got {n}")
        return cls(tuple(string.ascii_uppercase[:n]))

    @property
    def site_count(self) -> int:
        return len(self.site_names)

    @property
    def dim(self) -> int:
        return 2 ** self.site_count

    def index(self, name: str) -> int:
        try:
            return self.site_names.index(name)
        except ValueError:
            raise KeyError(f"unknown site {name!r}") from None


@dataclass(frozen=True)
class PauliTerm:
    """``coefficient`` times a product of non-identity Paulis on distinct sites.

    ``factors`` is stored as a tuple of ``(site, label)`` sorted by site, so
    equal terms compare and hash equal.
    """

    coefficient: float
    factors: tuple[tuple[int, PauliLabel], ...]

    def __init__(self, coefficient: float, factors: Mapping[int, PauliLabel | str] | Iterable[tuple[int, PauliLabel | str]]):
        items = list(factors.items()) if isinstance(factors, Mapping) else list(factors)
        sites = [int(s) for s, _ in items]
        if len(set(sites)) != len(sites):
            raise ValueError(f"duplicate site in term factors {items}")
        norm = tuple(sorted((int(s), PauliLabel(lab)) for s, lab in items))
        if not norm:
            raise ValueError("a term needs at least one factor")
        if any(lab is PauliLabel.I for _, lab in norm):
            raise ValueError("identity labels are implicit and not allowed in factors")
        if any(s < 0 for s, _ in norm):
            raise ValueError("site indices must be non-negative")
        coefficient = float(coefficient)
        if not math.isfinite(coefficient):
            raise ValueError("coefficient must be finite")
        object.__setattr__(self, "coefficient", coefficient)
        object.__setattr__(self, "factors", norm)

    @property
    def sites(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.factors)

    @property
    def order(self) -> int:
        return len(self.factors)

    def label_at(self, site: int) -> PauliLabel:
        return dict(self.factors).get(site, PauliLabel.I)


def embed_term(term: PauliTerm, system: SpinSystem) -> np.ndarray:
    n = system.site_count
    if term.sites[-1] >= n:
        raise IndexError(f"term acts on site {term.sites[-1]} but the system has {n} sites")
    ops = [_MATRICES[term.label_at(k)] for k in range(n)]
    return term.coefficient * reduce(np.kron, ops)


@dataclass(frozen=True)
class Hamiltonian:
    system: SpinSystem
    terms: tuple[PauliTerm, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if t.sites[-1] >= self.system.site_count:
                raise IndexError(f"term {t} does not fit a {self.system.site_count}-site system")

    @property
    def max_interaction_order(self) -> int:
        return max((t.order for t in self.terms), default=0)

    def interaction_pairs(self) -> set[frozenset[int]]:
        """Site pairs coupled directly by some two-site term."""
        return {frozenset(t.sites) for t in self.terms if t.order == 2}

    def is_loopless(self) -> bool:
        """True if the graph of directly coupled sites has no cycle."""
        parent = list(range(self.system.site_count))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        edges = set()
        for t in self.terms:
            s = t.sites
            edges.update(frozenset((s[i], s[j])) for i in range(len(s)) for j in range(i + 1, len(s)))
        for e in edges:
            a, b = (find(x) for x in e)
            if a == b:
                return False
            parent[a] = b
        return True

    def same_terms(self, other: "Hamiltonian", atol: float = 0.0) -> bool:
        """Equal system and equal term multisets, coefficients within ``atol``."""
        if self.system != other.system or len(self.terms) != len(other.terms):
            return False
        key = lambda t: (t.factors, t.coefficient)
        for a, b in zip(sorted(self.terms, key=key), sorted(other.terms, key=key)):
            if a.factors != b.factors or abs(a.coefficient - b.coefficient) > atol:
                return False
        return True


def assemble(h: Hamiltonian) -> np.ndarray:
    m = np.zeros((h.system.dim, h.system.dim), dtype=complex)
    for t in h.terms:
        m += embed_term(t, h.system)
    return m


def term(coefficient: float, spec: str, system: SpinSystem) -> PauliTerm:
    """Shorthand: ``term(1.0, "zA yB", abc)``."""
    factors = []
    for tok in spec.split():
        factors.append((system.index(tok[1:]), PauliLabel(tok[0].upper())))
    return PauliTerm(coefficient, factors)


def xor_hamiltonian() -> Hamiltonian:
    """The three-spin, two-spin-interaction XOR Hamiltonian.

    ``(pi/4) * (sqrt2 zA yB + sqrt2 zB yC - yB xC)`` with hbar = 1 and gate
    time 1. A and C couple only through B.
    """
    abc = SpinSystem.of_size(3)
    c = math.pi * math.sqrt(2.0) / 4.0
    return Hamiltonian(abc, (
        term(c, "zA yB", abc),
        term(c, "zB yC", abc),
        term(-math.pi / 4.0, "yB xC", abc),
    ))


def relabel(h: Hamiltonian, permutation: Sequence[int]) -> Hamiltonian:
    """Move every factor on site ``k`` to site ``permutation[k]``."""
    n = h.system.site_count
    perm = [int(p) for p in permutation]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{permutation!r} is not a permutation of 0..{n - 1}")
    return Hamiltonian(h.system, tuple(
        PauliTerm(t.coefficient, [(perm[s], lab) for s, lab in t.factors]) for t in h.terms
    ))

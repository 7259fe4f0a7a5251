"""Basis ordering, Boolean gate specs, and the leakage-based gate check.

A unitary realizes a gate if every computational basis state ends up
entirely in the subspace where the output spin carries ``f(inputs)``.
Phases and the final state of the other spins are ignored, so the check
only looks at ``|u[i, j]|**2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

from .linalg import as_matrix, unitarity_defect

UNITARY_TOL = 1e-10
VERIFY_TOL = 1e-10


class GateError(ValueError):
    pass


def index_of(bits: Sequence[int]) -> int:
    """Basis index of a bit tuple; all ones is index 0, all zeros is last."""
    n = len(bits)
    if n == 0 or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected a non-empty tuple of bits, got {tuple(bits)!r}")
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return (2 ** n - 1) - value


def bits_of(index: int, n: int) -> tuple[int, ...]:
    if n < 1 or not 0 <= index < 2 ** n:
        raise ValueError(f"index {index} out of range for {n} sites")
    value = (2 ** n - 1) - index
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


def basis_label(index: int, n: int) -> str:
    return "|" + "".join(map(str, bits_of(index, n))) + ">"


@dataclass(frozen=True)
class GateSpec:
    truth_table: Mapping[tuple[int, ...], int]
    input_sites: tuple[int, ...]
    output_site: int

    def __post_init__(self):
        object.__setattr__(self, "input_sites", tuple(self.input_sites))
        object.__setattr__(self, "truth_table", dict(self.truth_table))
        sites = self.input_sites + (self.output_site,)
        if not self.input_sites:
            raise GateError("a gate needs at least one input site")
        if len(set(sites)) != len(sites) or min(sites) < 0:
            raise GateError(f"input/output sites must be distinct and non-negative: {sites}")
        expected = set(product((0, 1), repeat=len(self.input_sites)))
        if set(self.truth_table) != expected:
            raise GateError("truth table must cover every input combination exactly")
        if any(v not in (0, 1) for v in self.truth_table.values()):
            raise GateError("truth table outputs must be bits")

    @classmethod
    def from_function(cls, f: Callable[..., int], input_sites: Sequence[int], output_site: int) -> "GateSpec":
        table = {bits: int(f(*bits)) for bits in product((0, 1), repeat=len(input_sites))}
        return cls(table, tuple(input_sites), output_site)

    def __call__(self, *bits: int) -> int:
        return self.truth_table[tuple(bits)]

    def wrong_output_mask(self, n: int) -> np.ndarray:
        """``mask[i, j]`` is 1 when row state ``i`` has the wrong output for column ``j``."""
        if max(self.input_sites + (self.output_site,)) >= n:
            raise GateError(f"gate sites do not fit a {n}-site system")
        dim = 2 ** n
        all_bits = [bits_of(k, n) for k in range(dim)]
        want = np.array([self.truth_table[tuple(b[s] for s in self.input_sites)] for b in all_bits])
        have = np.array([b[self.output_site] for b in all_bits])
        return (have[:, None] != want[None, :]).astype(float)


def xor_gate_spec() -> GateSpec:
    return GateSpec.from_function(lambda a, b: a ^ b, (0, 1), 2)


GATES: dict[str, Callable[[int, int], int]] = {
    "xor": lambda a, b: a ^ b,
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "nand": lambda a, b: 1 - (a & b),
}


@dataclass(frozen=True)
class SignedPermutation:
    image: tuple[int, ...]
    phase: tuple[complex, ...]

    def as_matrix(self) -> np.ndarray:
        dim = len(self.image)
        m = np.zeros((dim, dim), dtype=complex)
        m[list(self.image), list(range(dim))] = self.phase
        return m


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    tolerance: float
    column_leakage: tuple[float, ...]
    max_leakage: float
    induced_map: SignedPermutation | None = None

    @property
    def total_leakage(self) -> float:
        return float(sum(self.column_leakage))


def _check_unitary(u, n_sites: int | None = None) -> tuple[np.ndarray, int]:
    u = as_matrix(u)
    dim = u.shape[0]
    n = dim.bit_length() - 1
    if 2 ** n != dim:
        raise GateError(f"dimension {dim} is not a power of two")
    defect = unitarity_defect(u)
    if defect > UNITARY_TOL:
        raise GateError(f"matrix is not unitary (defect {defect:.3e})")
    return u, n


def column_leakage(u: np.ndarray, spec: GateSpec) -> np.ndarray:
    """Per-column leakage, no unitarity check. Used on the search hot path."""
    n = u.shape[0].bit_length() - 1
    return (np.abs(u) ** 2 * spec.wrong_output_mask(n)).sum(axis=0)


def verify_gate(u, spec: GateSpec, tolerance: float = VERIFY_TOL) -> VerificationReport:
    u, n = _check_unitary(u)
    leak = column_leakage(u, spec)
    worst = float(leak.max())
    return VerificationReport(
        passed=worst <= tolerance,
        tolerance=tolerance,
        column_leakage=tuple(float(x) for x in leak),
        max_leakage=worst,
        induced_map=induced_map(u, tolerance),
    )


def induced_map(u, tolerance: float = 1e-8) -> SignedPermutation | None:
    """Read ``u`` as a signed permutation, or ``None`` if it is not one."""
    u = as_matrix(u)
    mags = np.abs(u)
    image, phase = [], []
    for j in range(u.shape[0]):
        i = int(np.argmax(mags[:, j]))
        others = np.delete(mags[:, j], i)
        if abs(mags[i, j] - 1.0) > tolerance or (others.size and others.max() > tolerance):
            return None
        image.append(i)
        phase.append(complex(u[i, j] / mags[i, j]))
    if len(set(image)) != len(image):
        return None
    return SignedPermutation(tuple(image), tuple(phase))


def canonical_xor_unitary() -> np.ndarray:
    """The 8x8 signed permutation produced by the XOR Hamiltonian at t = 1."""
    u = np.zeros((8, 8), dtype=complex)
    for row, col, sign in [
        (0, 2, -1), (1, 0, 1), (2, 3, 1), (3, 1, 1),
        (4, 5, -1), (5, 7, 1), (6, 4, -1), (7, 6, -1),
    ]:
        u[row, col] = sign
    return u

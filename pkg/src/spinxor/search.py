"""Coefficient search over two-spin interaction templates.

A template fixes which Pauli products may appear; a parameter vector gives
their coefficients. The objective is the total leakage of the resulting
evolution against a gate spec, minimized by Nelder-Mead from seeded random
starts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .gates import GateSpec, column_leakage
from .linalg import unitary_exponential
from .pauli import Hamiltonian, PauliLabel, PauliTerm, SpinSystem, embed_term, relabel

__all__ = [
    "InteractionTemplate", "SearchConfig", "SearchResult", "SearchError",
    "realize", "objective", "nelder_mead", "search", "relabel", "loopless_template",
]

XYZ = (PauliLabel.X, PauliLabel.Y, PauliLabel.Z)
ALL_COMPONENTS = tuple(itertools.product(XYZ, XYZ))


class SearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class InteractionTemplate:
    """Allowed interaction terms, in canonical parameter order.

    Pairs keep their listed order; within a pair, components run over
    ``(x, y, z) x (x, y, z)`` row-major; optional single-site x, y, z terms
    follow, site by site.
    """

    system: SpinSystem
    allowed_pairs: tuple[tuple[int, int], ...]
    pair_components: tuple[tuple[tuple[PauliLabel, PauliLabel], ...], ...] | None = None
    include_single_site: bool = False
    duration: float = 1.0

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.allowed_pairs)
        n = self.system.site_count
        seen = set()
        for a, b in pairs:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"invalid site pair {(a, b)} for {n} sites")
            if frozenset((a, b)) in seen:
                raise ValueError(f"duplicate pair {(a, b)}")
            seen.add(frozenset((a, b)))
        comps = self.pair_components
        if comps is None:
            comps = tuple(ALL_COMPONENTS for _ in pairs)
        comps = tuple(tuple((PauliLabel(x), PauliLabel(y)) for x, y in c) for c in comps)
        if len(comps) != len(pairs):
            raise ValueError("need one component list per pair")
        object.__setattr__(self, "allowed_pairs", pairs)
        object.__setattr__(self, "pair_components", comps)

    @property
    def parameter_count(self) -> int:
        single = 3 * self.system.site_count if self.include_single_site else 0
        return sum(len(c) for c in self.pair_components) + single

    def operator_terms(self) -> list[PauliTerm]:
        """Unit-coefficient terms in parameter order."""
        terms = []
        for (a, b), comps in zip(self.allowed_pairs, self.pair_components):
            terms += [PauliTerm(1.0, [(a, la), (b, lb)]) for la, lb in comps]
        if self.include_single_site:
            terms += [PauliTerm(1.0, [(s, lab)]) for s in range(self.system.site_count) for lab in XYZ]
        return terms

    def index_of(self, site_a: int, label_a: str, site_b: int, label_b: str) -> int:
        """Parameter slot of the ``label_a@site_a * label_b@site_b`` term."""
        want = PauliTerm(1.0, [(site_a, label_a), (site_b, label_b)])
        for k, t in enumerate(self.operator_terms()):
            if t.factors == want.factors:
                return k
        raise KeyError(f"{want.factors} is not in the template")


def loopless_template(duration: float = 1.0) -> InteractionTemplate:
    """Three spins, all nine couplings on A-B and B-C, none on A-C."""
    return InteractionTemplate(SpinSystem.of_size(3), ((0, 1), (1, 2)), duration=duration)


def _check_length(template: InteractionTemplate, params) -> np.ndarray:
    x = np.asarray(params, dtype=float)
    if x.shape != (template.parameter_count,):
        raise ValueError(f"expected {template.parameter_count} parameters, got shape {x.shape}")
    return x


def realize(template: InteractionTemplate, params: Sequence[float]) -> Hamiltonian:
    x = _check_length(template, params)
    terms = [PauliTerm(c, t.factors) for c, t in zip(x, template.operator_terms()) if c != 0.0]
    return Hamiltonian(template.system, tuple(terms))


class _Objective:
    """Total leakage as a function of the coefficient vector, with cached term matrices."""

    def __init__(self, template: InteractionTemplate, spec: GateSpec, solver: str = "lapack"):
        self.template = template
        self.spec = spec
        self.solver = solver
        dim = template.system.dim
        ops = [embed_term(t, template.system) for t in template.operator_terms()]
        self.ops = np.array(ops) if ops else np.zeros((0, dim, dim), dtype=complex)
        self.mask = spec.wrong_output_mask(template.system.site_count)

    def __call__(self, params) -> float:
        x = _check_length(self.template, params)
        h = np.tensordot(x, self.ops, axes=1)
        u = unitary_exponential(h, self.template.duration, solver=self.solver)
        return float((np.abs(u) ** 2 * self.mask).sum())


def objective(template: InteractionTemplate, params: Sequence[float], spec: GateSpec,
              solver: str = "jacobi") -> float:
    """Total leakage of the realized Hamiltonian's evolution; zero on exact gates."""
    return _Objective(template, spec, solver)(params)


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 200
    rng_seed: int = 42
    init_scale: float = 2.0
    success_tol: float = 1e-6
    max_iterations: int = 2000
    initial_step: float = 0.5
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    spread_tol: float = 1e-12
    stop_on_success: bool = True

    def __post_init__(self):
        for name in ("restarts", "init_scale", "success_tol", "max_iterations", "initial_step",
                     "reflection", "expansion", "contraction", "shrink", "spread_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SearchResult:
    best_parameters: tuple[float, ...]
    best_objective: float
    restart_index: int
    iterations_used: int
    succeeded: bool
    restarts_run: int = field(default=0, compare=True)


def nelder_mead(f: Callable[[np.ndarray], float], x0: Sequence[float],
                config: SearchConfig = SearchConfig()) -> tuple[np.ndarray, float, int]:
    """Minimize ``f`` with the standard Nelder-Mead simplex.

    The initial simplex is ``x0`` plus ``initial_step`` along each axis.
    Stops when the spread of simplex values drops below ``spread_tol`` or after
    ``max_iterations``. Returns ``(best_x, best_value, iterations)``.
    """

    def call(x):
        v = f(x)
        if not np.isfinite(v):
            raise SearchError(f"objective returned {v} at {x}")
        return float(v)

    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    if n == 0:
        return x0.copy(), call(x0), 0
    simplex = np.vstack([x0, x0 + config.initial_step * np.eye(n)])
    values = np.array([call(x) for x in simplex])
    it = 0
    for it in range(1, config.max_iterations + 1):
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        if values[-1] - values[0] < config.spread_tol:
            it -= 1
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + config.reflection * (centroid - worst)
        fr = call(xr)
        if fr < values[0]:
            xe = centroid + config.expansion * (xr - centroid)
            fe = call(xe)
            simplex[-1], values[-1] = (xe, fe) if fe < fr else (xr, fr)
        elif fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        else:
            if fr < values[-1]:
                xc = centroid + config.contraction * (xr - centroid)
            else:
                xc = centroid + config.contraction * (worst - centroid)
            fc = call(xc)
            if fc < min(fr, values[-1]):
                simplex[-1], values[-1] = xc, fc
            else:
                simplex[1:] = simplex[0] + config.shrink * (simplex[1:] - simplex[0])
                values[1:] = [call(x) for x in simplex[1:]]
    best = int(np.argmin(values))
    return simplex[best].copy(), float(values[best]), it


def search(template: InteractionTemplate, spec: GateSpec, config: SearchConfig = SearchConfig(),
           progress: Callable[[int, float], None] | None = None) -> SearchResult:
    """Seeded multi-start Nelder-Mead over the template's coefficients.

    Start points for every restart are drawn up front from one generator, so
    restart ``k`` always begins from the same point regardless of how many
    restarts run. The winner is the lowest ``(objective, restart_index)``.
    With ``stop_on_success`` the loop ends at the first restart that reaches
    ``success_tol``.
    """
    f = _Objective(template, spec)
    rng = np.random.default_rng(config.rng_seed)
    starts = rng.uniform(-config.init_scale, config.init_scale,
                         size=(config.restarts, template.parameter_count))
    best = None
    ran = 0
    for k, x0 in enumerate(starts):
        x, value, iters = nelder_mead(f, x0, config)
        ran += 1
        if progress is not None:
            progress(k, value)
        if best is None or (value, k) < (best[1], best[2]):
            best = (x, value, k, iters)
        if config.stop_on_success and value <= config.success_tol:
            break
    x, value, k, iters = best
    return SearchResult(
        best_parameters=tuple(float(c) for c in x),
        best_objective=value,
        restart_index=k,
        iterations_used=iters,
        succeeded=value <= config.success_tol,
        restarts_run=ran,
    )

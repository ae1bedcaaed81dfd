"""Numerical oracle: count fixed-point configurations by multi-start Newton.

For a spectrum of degree d >= 3 with shift vector mu, the configurations
(zeta_1, ..., zeta_d) of fixed points realizing it, under the
normalization that pins down the residual scaling symmetry, solve the
square polynomial system

    sum_i zeta_i              = 0
    sum_i mu_i * zeta_i^k     = 0    for 1 <= k <= d-2
    sum_i mu_i * zeta_i^(d-1) = -1

with pairwise-distinct coordinates.  The number of such tuples equals
(d-1) times the multiplicity count, and grouping them by class-preserving
coordinate permutations (a free action) recovers the monic-centered
count; this module checks exactly that against the exact formulas, from
the outside, in floating point.

The solver runs damped Newton from batches of random starts (uniform in a
disc per coordinate, then projected onto the zero-sum hyperplane, which
removes one unstable direction), filters converged tuples by residual and
coordinate separation, and deduplicates.  Zero-fiber spectra are verified
by exhausting the full start budget with nothing accepted, a weaker
"consistent" outcome, since absence cannot be certified by sampling.
Newton runs are independent and the final merge is deterministic, so the
whole pass is reproducible under a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .counting import fiber_size_closed_form, monic_centered_count
from .errors import (
    BudgetExhaustedError,
    CoincidentRootsError,
    DegreeTooSmallError,
    DimensionCapError,
    NonFreeActionError,
    SpuriousSolutionError,
)
from .lattice import enumerate_lattice
from .spectrum import Spectrum, ValueClasses, value_classes


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and budgets; every field is CLI-overridable.

    Defaults suit desk-scale systems (d <= 6), where distinct solutions are
    separated by many orders of magnitude more than solver noise.
    """

    eps_res: float = 1e-10      # accept a tuple only below this residual
    eps_dup: float = 1e-6       # tuples closer than this are one solution
    eps_sep: float = 1e-7       # coordinates closer than this are a collision
    eps_mult: float = 1e-8      # multiplier reconstruction tolerance
    max_iter: int = 200
    budget_factor: int = 5000   # starts = factor * (d-1) * max(count, 1)
    batch_size: int = 512
    seed: int = 0
    max_degree: int = 6
    blowup: float = 1e8         # kill a start once coordinates exceed this


@dataclass(frozen=True)
class RootTuple:
    """One accepted fixed-point configuration."""

    zeta: tuple[complex, ...]
    residual: float


@dataclass(frozen=True)
class SolveResult:
    tuples: tuple[RootTuple, ...]
    starts: int
    converged: int
    deduplicated: int


@dataclass(frozen=True)
class VerificationReport:
    d: int
    found_tuples: int
    expected_tuples: int
    mc_orbits: int
    expected_orbits: int
    max_multiplier_error: float
    starts: int
    converged: int
    deduplicated: int
    status: str  # "verified" | "consistent" | "incomplete"
    near_collisions: tuple[tuple[int, int], ...] = ()
    tuples: tuple[RootTuple, ...] = field(default=(), repr=False)


class SigmaSystem:
    """The d equations in d unknowns, with closed-form Jacobian, batched."""

    def __init__(self, spec: Spectrum):
        if spec.d < 3:
            raise DegreeTooSmallError(
                "degree 2 is handled analytically, not by the solver"
            )
        self.d = spec.d
        self.mu = np.array([complex(m) for m in spec.mu])

    def residual(self, Z: np.ndarray) -> np.ndarray:
        """Equation values at each row of Z (shape (B, d))."""
        d = self.d
        F = np.empty_like(Z)
        F[:, 0] = Z.sum(axis=1)
        P = Z.copy()
        for k in range(1, d):
            value = P @ self.mu
            F[:, k] = value + 1 if k == d - 1 else value
            if k < d - 1:
                P = P * Z
        return F

    def jacobian(self, Z: np.ndarray) -> np.ndarray:
        """d/dzeta_j of equation k is k * mu_j * zeta_j^(k-1)."""
        B, d = Z.shape
        J = np.empty((B, d, d), dtype=complex)
        J[:, 0, :] = 1.0
        P = np.ones_like(Z)
        for k in range(1, d):
            J[:, k, :] = k * self.mu * P
            if k < d - 1:
                P = P * Z
        return J


def build_system(spec: Spectrum) -> SigmaSystem:
    return SigmaSystem(spec)


def _newton_batch(system: SigmaSystem, Z: np.ndarray, cfg: SolverConfig) -> np.ndarray:
    """Run damped Newton on every row of Z in place; returns final residuals."""
    target = min(cfg.eps_res, 1e-13)
    B = Z.shape[0]
    active = np.ones(B, dtype=bool)
    for _ in range(cfg.max_iter):
        F = system.residual(Z)
        norms = np.abs(F).max(axis=1)
        bad = ~np.isfinite(norms) | (np.abs(Z).max(axis=1) > cfg.blowup)
        active &= ~bad & (norms >= target)
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        J = system.jacobian(Z[idx])
        rhs = -F[idx][:, :, None]
        try:
            step = np.linalg.solve(J, rhs)[:, :, 0]
        except np.linalg.LinAlgError:
            step = (np.linalg.pinv(J) @ rhs)[:, :, 0]
        base = norms[idx]
        scale = np.ones(idx.size)
        trial = Z[idx] + step
        accepted = np.zeros(idx.size, dtype=bool)
        best = trial.copy()
        for _ in range(10):
            trial_norm = np.abs(system.residual(trial)).max(axis=1)
            ok = np.isfinite(trial_norm) & ((trial_norm < base) | (trial_norm < target))
            newly = ok & ~accepted
            best[newly] = trial[newly]
            accepted |= ok
            if accepted.all():
                break
            scale = np.where(accepted, scale, scale * 0.5)
            trial = Z[idx] + scale[:, None] * step
        Z[idx[accepted]] = best[accepted]
        # rows that never improved are stalled; drop them
        active[idx[~accepted]] = False
    return np.abs(system.residual(Z)).max(axis=1)


def _min_separation(zeta: np.ndarray) -> float:
    diff = np.abs(zeta[:, None] - zeta[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def _disc_starts(rng: np.random.Generator, count: int, d: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, (count, d)))
    theta = rng.uniform(0.0, 2.0 * np.pi, (count, d))
    Z = r * np.exp(1j * theta)
    return Z - Z.mean(axis=1, keepdims=True)  # project onto the zero-sum plane


def solve_system(
    spec: Spectrum,
    cfg: SolverConfig | None = None,
    expected: int | None = None,
) -> SolveResult:
    """Multi-start Newton search for all distinct solution tuples.

    Stops issuing new starts once ``expected`` tuples are found (candidates
    already in flight are still checked, so an excess solution raises
    ``SpuriousSolutionError``).  With ``expected == 0`` the full budget runs.
    Raises ``BudgetExhaustedError`` (carrying the partial result) if the
    budget runs out short of ``expected``.
    """
    cfg = cfg or SolverConfig()
    d = spec.d
    if d < 3:
        raise DegreeTooSmallError("solver needs degree >= 3")
    if d > cfg.max_degree:
        raise DimensionCapError(f"degree {d} above solver cap {cfg.max_degree}")
    if expected is None:
        expected = (d - 1) * fiber_size_closed_form(spec)
    system = SigmaSystem(spec)
    rng = np.random.default_rng(cfg.seed)
    radius = 2.0 * (1.0 + spec.max_multiplier_modulus())
    budget = cfg.budget_factor * (d - 1) * max(expected // max(d - 1, 1), 1)

    accepted: list[np.ndarray] = []
    starts = converged = duplicates = 0
    while starts < budget:
        if expected > 0 and len(accepted) >= expected:
            break
        batch = min(cfg.batch_size, budget - starts)
        Z = _disc_starts(rng, batch, d, radius)
        norms = _newton_batch(system, Z, cfg)
        starts += batch
        for row in np.flatnonzero(norms < cfg.eps_res):
            zeta = Z[row]
            converged += 1
            if _min_separation(zeta) <= cfg.eps_sep:
                continue  # coordinate collision, not a valid configuration
            if any(np.abs(zeta - seen).max() < cfg.eps_dup for seen in accepted):
                duplicates += 1
                continue
            if len(accepted) >= expected:
                raise SpuriousSolutionError(
                    f"found a {len(accepted) + 1}-th distinct tuple, "
                    f"expected {expected}"
                )
            accepted.append(zeta.copy())

    accepted.sort(key=lambda z: tuple((v.real, v.imag) for v in z))
    final = tuple(
        RootTuple(
            zeta=tuple(complex(v) for v in z),
            residual=float(np.abs(system.residual(z[None, :])).max()),
        )
        for z in accepted
    )
    result = SolveResult(
        tuples=final, starts=starts, converged=converged, deduplicated=duplicates
    )
    if len(final) < expected:
        raise BudgetExhaustedError(
            f"found {len(final)} of {expected} tuples in {starts} starts",
            result=result,
        )
    return result


def forward_multipliers(zeta) -> list[complex]:
    """Multipliers of z + prod(z - zeta_j) at its fixed points zeta_i.

    The derivative at zeta_i is 1 + prod over j != i of (zeta_i - zeta_j).
    """
    z = np.asarray([complex(v) for v in zeta])
    diff = z[:, None] - z[None, :]
    off = ~np.eye(len(z), dtype=bool)
    if np.abs(diff[off]).min() == 0.0:
        raise CoincidentRootsError("fixed-point coordinates must be distinct")
    np.fill_diagonal(diff, 1.0)
    return [complex(1 + p) for p in diff.prod(axis=1)]


def _class_profile(zeta: tuple[complex, ...], classes: ValueClasses):
    """Per-class sorted coordinate multisets; orbit signature up to noise."""
    return [
        sorted((zeta[i] for i in k), key=lambda v: (v.real, v.imag))
        for k in classes.classes
    ]


def orbit_count(
    tuples, classes: ValueClasses, eps_dup: float = SolverConfig.eps_dup
) -> int:
    """Group tuples under class-preserving coordinate permutations.

    Two tuples lie in one orbit iff each value class carries the same
    coordinate multiset.  Every orbit must have exactly group-order many
    members; a wrong-sized orbit means duplicates, missing tuples or a
    tolerance failure.
    """
    tuples = list(tuples)
    if not tuples:
        return 0
    profiles = [_class_profile(t.zeta, classes) for t in tuples]

    def same_orbit(a, b) -> bool:
        return all(
            abs(x - y) < eps_dup
            for ka, kb in zip(a, b)
            for x, y in zip(ka, kb)
        )

    labels = list(range(len(tuples)))
    for i in range(len(tuples)):
        for j in range(i + 1, len(tuples)):
            if labels[j] != labels[i] and same_orbit(profiles[i], profiles[j]):
                old = labels[j]
                labels = [labels[i] if v == old else v for v in labels]
    orbit_sizes: dict[int, int] = {}
    for v in labels:
        orbit_sizes[v] = orbit_sizes.get(v, 0) + 1
    order = classes.group_order()
    for size in orbit_sizes.values():
        if size != order:
            raise NonFreeActionError(
                f"orbit of size {size} where the group order is {order}"
            )
    return len(orbit_sizes)


def _near_collisions(tuples, eps_dup: float) -> tuple[tuple[int, int], ...]:
    """Pairs of accepted tuples within 10x the dedup threshold: warnings."""
    out = []
    for i in range(len(tuples)):
        zi = np.asarray(tuples[i].zeta)
        for j in range(i + 1, len(tuples)):
            if np.abs(zi - np.asarray(tuples[j].zeta)).max() < 10 * eps_dup:
                out.append((i, j))
    return tuple(out)


def verify_spectrum(spec: Spectrum, cfg: SolverConfig | None = None) -> VerificationReport:
    """Close the loop: solve, re-derive multipliers, count orbits, compare."""
    cfg = cfg or SolverConfig()
    d = spec.d
    lat = enumerate_lattice(spec)
    size = fiber_size_closed_form(spec, lat)
    classes = value_classes(spec)
    expected_tuples = (d - 1) * size
    expected_orbits = monic_centered_count(spec, lat, size, classes)

    if d == 2:
        # Analytic: the unique configuration is (c, -c) with c = -1/(2 mu_1).
        c = -1.0 / (2.0 * complex(spec.mu[0]))
        result = SolveResult(
            tuples=(RootTuple(zeta=(c, -c), residual=0.0),),
            starts=0,
            converged=1,
            deduplicated=0,
        )
        incomplete = False
    else:
        try:
            result = solve_system(spec, cfg, expected_tuples)
            incomplete = False
        except BudgetExhaustedError as exc:
            result = exc.result
            incomplete = True

    lam = [complex(v) for v in spec.lam]
    max_err = 0.0
    for t in result.tuples:
        mults = forward_multipliers(t.zeta)
        max_err = max(max_err, max(abs(m - l) for m, l in zip(mults, lam)))

    found = len(result.tuples)
    orbits = orbit_count(result.tuples, classes, cfg.eps_dup) if found else 0
    if incomplete or found < expected_tuples:
        status = "incomplete"
    elif expected_tuples == 0:
        status = "consistent"
    else:
        status = "verified"
    return VerificationReport(
        d=d,
        found_tuples=found,
        expected_tuples=expected_tuples,
        mc_orbits=orbits,
        expected_orbits=expected_orbits,
        max_multiplier_error=max_err,
        starts=result.starts,
        converged=result.converged,
        deduplicated=result.deduplicated,
        status=status,
        near_collisions=_near_collisions(result.tuples, cfg.eps_dup),
        tuples=result.tuples,
    )

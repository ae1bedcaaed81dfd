"""Validated multiplier spectra, their shift vectors and value classes.

A spectrum of degree d is an ordered tuple of d multipliers, none equal
to 1, whose reciprocal shifts mu_i = 1/(1-lambda_i) sum to zero exactly.
The shift vector is the canonical internal representation: every lattice
membership test downstream is a zero sum of shifts.  Instances are
immutable and freely shareable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    BlockSumError,
    DegreeTooSmallError,
    ExactShapeError,
    OffHyperplaneError,
    SpectrumFormatError,
    UnitMultiplierError,
    ZeroShiftTargetError,
)
from .exactnum import (
    GaussianRational,
    ONE,
    ZERO,
    as_gaussian,
    multiplier_from_shift,
    reciprocal_shift,
)


@dataclass(frozen=True)
class Spectrum:
    """An ordered multiplier tuple together with its derived shift vector."""

    lam: tuple[GaussianRational, ...]
    mu: tuple[GaussianRational, ...]

    @property
    def d(self) -> int:
        return len(self.lam)

    def restrict(self, mask: int) -> "Spectrum":
        """Sub-spectrum over the indices in a bitmask (bit i = index i)."""
        mus = tuple(m for i, m in enumerate(self.mu) if mask >> i & 1)
        return from_shifts(mus)

    def permuted(self, order: tuple[int, ...]) -> "Spectrum":
        return Spectrum(
            tuple(self.lam[i] for i in order),
            tuple(self.mu[i] for i in order),
        )

    def shift_key(self) -> tuple:
        """Multiset of shift values; cache key for sub-spectrum counts."""
        return tuple(sorted(m.sort_key() for m in self.mu))

    def max_multiplier_modulus(self) -> float:
        return max(abs(complex(v)) for v in self.lam)


@dataclass(frozen=True)
class ValueClasses:
    """Partition of spectrum indices by exact multiplier equality."""

    classes: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(k) for k in self.classes)

    def group_order(self) -> int:
        """Order of the class-preserving permutation group, prod (#K)!."""
        order = 1
        for k in self.classes:
            order *= factorial(len(k))
        return order


def validate(raw) -> Spectrum:
    """Build a Spectrum from multiplier values, rejecting invalid input."""
    lam = tuple(as_gaussian(v) for v in raw)
    if len(lam) < 2:
        raise DegreeTooSmallError(f"need degree >= 2, got {len(lam)}")
    for i, v in enumerate(lam):
        if v == ONE:
            raise UnitMultiplierError(f"multiplier at index {i} equals 1")
    mu = tuple(reciprocal_shift(v) for v in lam)
    total = ZERO
    for m in mu:
        total = total + m
    if total != ZERO:
        raise OffHyperplaneError(f"reciprocal shifts sum to {total}, not 0")
    return Spectrum(lam, mu)


def from_shifts(shifts) -> Spectrum:
    """Build a Spectrum from its shift vector (each mu_i = 1/(1-lambda_i))."""
    mu = tuple(as_gaussian(v) for v in shifts)
    if len(mu) < 2:
        raise DegreeTooSmallError(f"need degree >= 2, got {len(mu)}")
    for i, m in enumerate(mu):
        if not m:
            raise ZeroShiftTargetError(f"shift at index {i} is 0")
    total = ZERO
    for m in mu:
        total = total + m
    if total != ZERO:
        raise OffHyperplaneError(f"shifts sum to {total}, not 0")
    lam = tuple(multiplier_from_shift(m) for m in mu)
    return Spectrum(lam, mu)


def value_classes(spec: Spectrum) -> ValueClasses:
    """Group indices by exact multiplier equality, ordered by first index."""
    seen: dict[tuple, list[int]] = {}
    for i, v in enumerate(spec.lam):
        seen.setdefault(v.sort_key(), []).append(i)
    classes = sorted(seen.values(), key=lambda k: k[0])
    return ValueClasses(tuple(tuple(k) for k in classes))


# --- test-spectrum generation -------------------------------------------------

def _random_nonzero_fraction(rng: random.Random, bound: int) -> Fraction:
    num = rng.randint(-bound, bound)
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def _draw_block(rng: random.Random, size: int, bound: int) -> list[GaussianRational]:
    """Random zero-sum block of nonzero rational shift targets."""
    while True:
        head = [_random_nonzero_fraction(rng, bound) for _ in range(size - 1)]
        last = -sum(head)
        if last != 0:
            return [GaussianRational(v) for v in head] + [GaussianRational(last)]


def _expected_masks(block_masks: list[int]) -> set[int]:
    """Proper nonempty unions of whole plan blocks."""
    masks = set()
    for r in range(1, len(block_masks)):
        for combo in itertools.combinations(block_masks, r):
            m = 0
            for b in combo:
                m |= b
            masks.add(m)
    return masks


def generate(
    plan,
    *,
    seed: int = 0,
    exact: bool = False,
    bound: int = 20,
    max_tries: int = 500,
) -> Spectrum:
    """Build a spectrum whose lattice contains the block structure of ``plan``.

    Each plan item is either an explicit list of nonzero shift targets that
    sum to zero within the block, or an integer block size >= 2 meaning
    "draw random targets" (nonzero rationals with numerator and denominator
    bounded by ``bound``); drawing is deterministic under a fixed seed.
    Accidental zero sums may add extra lattice elements; with
    ``exact=True`` candidates are redrawn until the zero-sum subsets are
    precisely the unions of whole plan blocks.
    """
    rng = random.Random(seed)
    fixed: list[list[GaussianRational] | None] = []
    sizes: list[int] = []
    for block in plan:
        if isinstance(block, int):
            if block < 2:
                raise ZeroShiftTargetError(
                    f"random block size must be >= 2, got {block}"
                )
            fixed.append(None)
            sizes.append(block)
        else:
            targets = [as_gaussian(v) for v in block]
            for t in targets:
                if not t:
                    raise ZeroShiftTargetError("plan contains a zero shift target")
            total = ZERO
            for t in targets:
                total = total + t
            if total != ZERO:
                raise BlockSumError(f"plan block sums to {total}, not 0")
            fixed.append(targets)
            sizes.append(len(targets))
    if not sizes:
        raise DegreeTooSmallError("empty plan")

    block_masks = []
    offset = 0
    for size in sizes:
        block_masks.append(((1 << size) - 1) << offset)
        offset += size
    expected = _expected_masks(block_masks)
    has_random = any(b is None for b in fixed)

    for _ in range(max_tries):
        targets: list[GaussianRational] = []
        for block, size in zip(fixed, sizes):
            targets.extend(block if block is not None else _draw_block(rng, size, bound))
        spec = from_shifts(targets)
        if not exact:
            return spec
        from .lattice import zero_sum_subsets

        if set(zero_sum_subsets(spec)) == expected:
            return spec
        if not has_random:
            raise ExactShapeError(
                "explicit targets produce zero sums beyond the plan blocks"
            )
    raise ExactShapeError(f"no exact-lattice spectrum found in {max_tries} tries")


# --- JSON document form -------------------------------------------------------

def spectrum_to_obj(spec: Spectrum) -> dict:
    """JSON-ready document: {"d": n, "lambda": ["p/q+r/si", ...]}."""
    return {"d": spec.d, "lambda": [str(v) for v in spec.lam]}


def spectrum_from_obj(obj) -> Spectrum:
    """Parse a spectrum document carrying exactly one of "lambda" / "mu"."""
    if not isinstance(obj, dict):
        raise SpectrumFormatError("spectrum document must be a JSON object")
    keys = [k for k in ("lambda", "mu") if k in obj]
    if len(keys) != 1:
        raise SpectrumFormatError('exactly one of "lambda" or "mu" is required')
    values = obj[keys[0]]
    if not isinstance(values, list):
        raise SpectrumFormatError(f'"{keys[0]}" must be a list of scalars')
    try:
        parsed = [as_gaussian(v) for v in values]
    except ValueError as exc:
        raise SpectrumFormatError(str(exc)) from None
    if "d" in obj and obj["d"] != len(parsed):
        raise SpectrumFormatError(
            f'"d" is {obj["d"]} but {len(parsed)} values were given'
        )
    return validate(parsed) if keys[0] == "lambda" else from_shifts(parsed)

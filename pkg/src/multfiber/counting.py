"""Fiber counts over a multiplier spectrum.

The central quantity is the fiber cardinality *counted with multiplicity*
of the map sending a conjugacy class of degree-d polynomials to its
unordered multiplier collection.  Three independent routes compute it:

* ``subspectra``: per-partition weights as products over blocks of
  (size-1) times the count of the restricted sub-spectrum, recursing into
  sub-spectra (memoized on the multiset of shift values);
* ``refinement``: per-partition weights by downward recursion over strict
  refinements inside one lattice, with falling-factorial span factors;
* the closed form: a single signed sum over the full lattice,
  (d-1) * count = sum over partitions of {-(d-1)}^{#blocks - 1} times the
  product of (block size - 1)!.

All three must agree exactly; disagreement or a failed exact division is
an internal error, never bad input.  From the multiplicity count the two
discrete counts follow: the monic-centered count always, the
conjugacy-class count only when every class gcd is 1 (the remaining case
needs machinery that is out of scope, so it is reported as absent).

Everything here is a pure function of (Spectrum, Lattice) on
arbitrary-precision integers; memo dictionaries are per call unless the
caller shares one, so concurrent evaluation is safe with per-thread memos.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import factorial, gcd

from .errors import (
    DivisibilityError,
    EngineDisagreementError,
    InvariantViolationError,
    PartitionNotInLatticeError,
)
from .lattice import (
    BlockPartition,
    Lattice,
    enumerate_lattice,
    inner_block_count,
    refines,
)
from .spectrum import Spectrum, ValueClasses, value_classes

ENGINES = ("subspectra", "refinement")


def rising_span(d: int, block_count: int) -> int:
    """prod_{k=d-block_count+1}^{d-2} k, empty product (=1) for 2 blocks."""
    return factorial(d - 2) // factorial(d - block_count)


def falling_span(size: int, inner: int) -> int:
    """prod_{k=size-inner+1}^{size-1} k, empty product (=1) for inner=1."""
    return factorial(size - 1) // factorial(size - inner)


def factorial_weight(part: BlockPartition) -> int:
    """prod over blocks of (size - 1)!; the leading term of a weight."""
    w = 1
    for n in part.sizes:
        w *= factorial(n - 1)
    return w


# --- the two recursive weight routes -----------------------------------------

def weight_from_subspectra(
    spec: Spectrum,
    part: BlockPartition,
    lat: Lattice | None = None,
    memo: dict | None = None,
) -> int:
    """Partition weight as prod over blocks of (size-1) * subcount(block)."""
    lat = lat if lat is not None else enumerate_lattice(spec)
    if part not in lat.proper:
        raise PartitionNotInLatticeError(f"{part} not a proper lattice element")
    if memo is None:
        memo = {}
    w = 1
    for block in part.blocks:
        n = block.bit_count()
        w *= (n - 1) * _fiber_size(spec.restrict(block), None, "subspectra", memo)
    return w


def refinement_weights(lat: Lattice) -> dict[BlockPartition, int]:
    """All partition weights by downward recursion over strict refinements.

    Finer partitions have strictly more blocks, so processing in order of
    decreasing block count resolves every dependency.
    """
    ordered = sorted(lat.proper, key=lambda p: -p.block_count)
    weights: dict[BlockPartition, int] = {}
    for part in ordered:
        acc = factorial_weight(part)
        for finer, w_finer in weights.items():
            if finer.block_count > part.block_count and refines(part, finer):
                span = 1
                for block in part.blocks:
                    span *= falling_span(
                        block.bit_count(), inner_block_count(block, finer)
                    )
                acc -= w_finer * span
        weights[part] = acc
    return weights


def weight_from_refinements(
    part: BlockPartition, lat: Lattice
) -> int:
    """Single partition weight via the refinement recursion."""
    if part not in lat.proper:
        raise PartitionNotInLatticeError(f"{part} not a proper lattice element")
    return refinement_weights(lat)[part]


# --- fiber size, three routes --------------------------------------------------

def fiber_size(
    spec: Spectrum,
    lat: Lattice | None = None,
    engine: str = "subspectra",
    memo: dict | None = None,
) -> int:
    """Fiber cardinality with multiplicity: (d-2)! minus weighted lattice terms.

    ``memo`` may be shared across calls to amortize sub-spectrum counts; keys
    include the engine so sharing one dict across engines cannot leak results
    between routes.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    return _fiber_size(spec, lat, engine, {} if memo is None else memo)


def _fiber_size(spec: Spectrum, lat: Lattice | None, engine: str, memo: dict) -> int:
    key = (engine, spec.shift_key())
    cached = memo.get(key)
    if cached is not None:
        return cached
    d = spec.d
    if lat is None:
        lat = enumerate_lattice(spec)
    total = factorial(d - 2)
    if engine == "refinement":
        weights = refinement_weights(lat)
        for part in lat.proper:
            total -= weights[part] * rising_span(d, part.block_count)
    else:
        for part in lat.proper:
            w = 1
            for block in part.blocks:
                n = block.bit_count()
                w *= (n - 1) * _fiber_size(spec.restrict(block), None, engine, memo)
            total -= w * rising_span(d, part.block_count)
    memo[key] = total
    return total


def fiber_size_closed_form(spec: Spectrum, lat: Lattice | None = None) -> int:
    """Fiber cardinality with multiplicity via the signed single sum.

    The sum equals (d-1) times the count; a nonzero remainder in the final
    division signals an enumeration bug, not bad input.
    """
    d = spec.d
    if lat is None:
        lat = enumerate_lattice(spec)
    total = 0
    for part in lat.partitions:
        total += (-(d - 1)) ** (part.block_count - 1) * factorial_weight(part)
    if total % (d - 1):
        raise DivisibilityError(
            f"signed lattice sum {total} not divisible by {d - 1}"
        )
    return total // (d - 1)


# --- discrete counts ------------------------------------------------------------

def class_gcds(sizes) -> tuple[int, ...]:
    """For each class, the gcd of all class sizes with that one reduced by 1."""
    sizes = tuple(sizes)
    out = []
    for w in range(len(sizes)):
        adjusted = sizes[:w] + (sizes[w] - 1,) + sizes[w + 1 :]
        out.append(reduce(gcd, adjusted, 0))
    return tuple(out)


def monic_centered_count(
    spec: Spectrum,
    lat: Lattice | None = None,
    size: int | None = None,
    classes: ValueClasses | None = None,
) -> int:
    """Number of distinct monic centered polynomials realizing the spectrum.

    Equals (d-1) * fiber size divided by the value-class group order; the
    division is always exact, so a remainder signals a bug.
    """
    if size is None:
        size = fiber_size_closed_form(spec, lat)
    if classes is None:
        classes = value_classes(spec)
    order = classes.group_order()
    total = (spec.d - 1) * size
    if total % order:
        raise DivisibilityError(
            f"(d-1)*count = {total} not divisible by class order {order}"
        )
    return total // order


def conjugacy_count(
    spec: Spectrum,
    lat: Lattice | None = None,
    size: int | None = None,
    classes: ValueClasses | None = None,
) -> int | None:
    """Number of distinct conjugacy classes realizing the spectrum, if defined.

    Defined exactly when every class gcd is 1; otherwise ``None`` (absence
    is a value, not an error).
    """
    if classes is None:
        classes = value_classes(spec)
    if any(g != 1 for g in class_gcds(classes.sizes)):
        return None
    if size is None:
        size = fiber_size_closed_form(spec, lat)
    order = classes.group_order()
    if size % order:
        raise DivisibilityError(
            f"count {size} not divisible by class order {order}"
        )
    return size // order


# --- symbolic expansion in factorial weights (test instrumentation) -------------

def expansion_in_factorial_weights(lat: Lattice) -> dict[BlockPartition, int]:
    """Coefficients of the fiber size in the factorial-weight basis.

    Expanding every partition weight through the refinement recursion and
    substituting into the fiber-size formula writes the count as
    (d-2)! + sum over proper partitions of coeff * factorial_weight; this
    returns the coefficient map.  Used by regression tests only.
    """
    d = lat.d
    ordered = sorted(lat.proper, key=lambda p: -p.block_count)
    expansions: dict[BlockPartition, dict[BlockPartition, int]] = {}
    for part in ordered:
        combo = {part: 1}
        for finer, finer_combo in expansions.items():
            if finer.block_count > part.block_count and refines(part, finer):
                span = 1
                for block in part.blocks:
                    span *= falling_span(
                        block.bit_count(), inner_block_count(block, finer)
                    )
                for basis, coeff in finer_combo.items():
                    combo[basis] = combo.get(basis, 0) - span * coeff
        expansions[part] = combo
    coeffs: dict[BlockPartition, int] = {}
    for part in lat.proper:
        span = rising_span(d, part.block_count)
        for basis, coeff in expansions[part].items():
            coeffs[basis] = coeffs.get(basis, 0) - span * coeff
    return coeffs


# --- aggregate report -------------------------------------------------------------

@dataclass(frozen=True)
class FiberReport:
    """All computed counts for one spectrum."""

    d: int
    s_d: int
    e_I0: int
    mc_count: int
    mp_count: int | None
    kappa_sizes: tuple[int, ...]
    gw_flags: tuple[int, ...]
    engines: dict[str, int]
    lattice_partitions: int
    zero_sum_subsets: int


def fiber_report(spec: Spectrum, cap: int | None = None) -> FiberReport:
    """Run all three routes, check agreement and bounds, collect the counts."""
    lat = enumerate_lattice(spec) if cap is None else enumerate_lattice(spec, cap)
    d = spec.d
    by_engine = {
        "subspectra": fiber_size(spec, lat, "subspectra"),
        "refinement": fiber_size(spec, lat, "refinement"),
        "closed_form": fiber_size_closed_form(spec, lat),
    }
    values = set(by_engine.values())
    if len(values) != 1:
        raise EngineDisagreementError(f"count routes disagree: {by_engine}")
    size = values.pop()
    if not 0 <= size <= factorial(d - 2):
        raise InvariantViolationError(
            f"count {size} outside [0, (d-2)!] for d={d}"
        )
    classes = value_classes(spec)
    return FiberReport(
        d=d,
        s_d=size,
        e_I0=(d - 1) * size,
        mc_count=monic_centered_count(spec, lat, size, classes),
        mp_count=conjugacy_count(spec, lat, size, classes),
        kappa_sizes=classes.sizes,
        gw_flags=class_gcds(classes.sizes),
        engines=by_engine,
        lattice_partitions=len(lat.partitions),
        zero_sum_subsets=lat.zero_sum_count,
    )

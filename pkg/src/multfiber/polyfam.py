"""Coarsening-sum polynomials over abstract set partitions.

For a partition with l blocks, summing a signed product over all its
k-block coarsenings yields a quantity that depends only on l, k and the
total degree d.  This module carries that machinery in three equivalent
layers: direct enumeration over partitions of {1,...,l} (``coarsening_sum``
on explicit block sizes), the one-variable integer polynomial in d obtained
by collapsing (``collapsed_poly``, built from a two-term recurrence), and
the evaluated value (``coarsening_value``).  On top of it sits the signed
vanishing sum over all coarsenings, which must be identically zero for
every size vector; this identity is the engine behind the
closed-form count.

Everything here is exact integer arithmetic over abstract partitions; no
spectrum is needed.  Outputs are immutable; the polynomial cache is a
plain per-interpreter ``lru_cache`` (use one interpreter per thread or
treat it as shared read-mostly state).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate integer polynomial, ascending coefficients, trimmed."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for i, c in enumerate(b):
            summed[i] += c
        return IntPolynomial(tuple(summed))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coefficients))
        out = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def text(self, var: str = "d") -> str:
        """Human-readable form like ``3d^2-9d+7``."""
        if self.is_zero:
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" if power == 1 else f"{head}{var}^{power}"
            terms.append(f"{sign}{body}")
        return "".join(terms)


# --- abstract set partitions ----------------------------------------------------

@lru_cache(maxsize=None)
def _set_partitions(l: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All partitions of {0,...,l-1}, blocks ordered by first element."""
    results: list[tuple[tuple[int, ...], ...]] = []
    blocks: list[list[int]] = []

    def place(i: int):
        if i == l:
            results.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            place(i + 1)
            b.pop()
        blocks.append([i])
        place(i + 1)
        blocks.pop()

    place(0)
    return tuple(results)


def shape_partitions(l: int, k: int) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of {0,...,l-1} into exactly k nonempty blocks.

    Empty for k <= 0 or k >= l+1.
    """
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if k <= 0 or k >= l + 1:
        return []
    return [p for p in _set_partitions(l) if len(p) == k]


def coarsening_sum(l: int, k: int, xs) -> int:
    """Signed sum over k-block partitions of {1..l} evaluated at sizes ``xs``.

    Each partition contributes the product over its blocks J of
    {-(sum of xs over J - 1)}^(#J - 1).  Symmetric in the entries of xs.
    """
    xs = tuple(xs)
    if len(xs) != l:
        raise ValueError(f"expected {l} values, got {len(xs)}")
    total = 0
    for partition in shape_partitions(l, k):
        term = 1
        for block in partition:
            base = -(sum(xs[u] for u in block) - 1)
            term *= base ** (len(block) - 1)
        total += term
    return total


@lru_cache(maxsize=None)
def collapsed_poly(l: int, k: int) -> IntPolynomial:
    """One-variable collapse of the coarsening sum, as a polynomial in d.

    Built from the recurrence  p(l+1, k) = p(l, k-1) - (Y - k) * p(l, k)
    with base row p(2, 1) = -(Y-1), p(2, 2) = 1, zero otherwise; the
    polynomial has degree l-k with leading sign (-1)^(l-k) for
    1 <= k <= l, and is zero outside that range.
    """
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if k <= 0 or k >= l + 1:
        return IntPolynomial()
    if l == 2:
        return IntPolynomial((1, -1)) if k == 1 else IntPolynomial((1,))
    y_minus_k = IntPolynomial((-k, 1))
    return collapsed_poly(l - 1, k - 1) - y_minus_k * collapsed_poly(l - 1, k)


def coarsening_value(l: int, k: int, d: int) -> int:
    """The coarsening sum as a function of l, k and the total degree d."""
    return collapsed_poly(l, k)(d)


# --- identities -------------------------------------------------------------------

def vanishing_sum(block_sizes) -> int:
    """Full signed sum over all coarsenings of an l-block partition.

    For blocks of the given sizes (each >= 2, total d), every coarsening
    with k blocks contributes prod_{j=d-k+1}^{d-1} j times the product
    over its merged blocks of {-(merged size - 1)}^(#merged - 1).  The
    result is always 0; returning the computed integer lets callers assert
    that.
    """
    sizes = tuple(block_sizes)
    l = len(sizes)
    if l < 2:
        raise ValueError(f"need at least 2 blocks, got {l}")
    d = sum(sizes)
    total = 0
    fact_d1 = factorial(d - 1)
    for partition in _set_partitions(l):
        k = len(partition)
        span = fact_d1 // factorial(d - k)
        term = 1
        for block in partition:
            merged = sum(sizes[u] for u in block)
            term *= (-(merged - 1)) ** (len(block) - 1)
        total += span * term
    return total


def restriction_identity_holds(l: int, k: int, xs) -> bool:
    """Check the one-variable restriction of the coarsening sum.

    Appending a zero entry must satisfy
    sum(l+1, k, xs||0) = sum(l, k-1, xs) - (sum(xs) - k) * sum(l, k, xs).
    """
    xs = tuple(xs)
    if len(xs) != l:
        raise ValueError(f"expected {l} values, got {len(xs)}")
    left = coarsening_sum(l + 1, k, xs + (0,))
    right = coarsening_sum(l, k - 1, xs) - (sum(xs) - k) * coarsening_sum(l, k, xs)
    return left == right

"""Vector bundles on the projective line.

Splitting types, cohomology of twists, and two routes back to the splitting
type: from an h^0 profile (greedy peel of the top summand) and from an
explicit Laurent transition matrix (truncated section solving plus the
determinant order for the degree).

Chart convention, fixed here once and inherited everywhere: U+ carries
polynomials in z, U- polynomials in 1/z, a section is a pair (s-, s+) with
s- = gamma * s+, and O(n) has transition z**(-n).  The canonical basis of
H^1(O(n)) is the monomials z^1, ..., z^(-n-1).
"""

from __future__ import annotations

from math import gcd
from typing import Callable, Iterable, Optional

from . import kernels
from .errors import DimensionError, NotABundleError, ProfileError, TruncationError
from .exactalg import LaurentMatrix, det_unit_order


class SplittingType:
    """Multiset of integers n1 >= n2 >= ... encoding O(n1) + O(n2) + ...

    The universal answer format for bundles on the line: rank is the length,
    degree the sum.
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[int] = ()):
        comps = tuple(sorted((int(n) for n in components), reverse=True))
        self.components = comps

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return sum(self.components)

    @property
    def chi(self) -> int:
        """Euler characteristic: sum of (n_i + 1)."""
        return self.degree + self.rank

    def dual(self) -> "SplittingType":
        return SplittingType(-n for n in self.components)

    def twist(self, m: int) -> "SplittingType":
        return SplittingType(n + m for n in self.components)

    def merge(self, other: "SplittingType") -> "SplittingType":
        return SplittingType(self.components + other.components)

    def repeat(self, k: int) -> "SplittingType":
        """k copies of every summand (still sorted non-increasing)."""
        out = []
        for n in self.components:
            out.extend([n] * k)
        return SplittingType(out)

    def h(self, m: int = 0) -> tuple[int, int]:
        return h_split(self, m)

    def to_list(self) -> list[int]:
        return list(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if isinstance(other, SplittingType):
            return self.components == other.components
        if isinstance(other, (list, tuple)):
            return self.components == SplittingType(other).components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"SplittingType({list(self.components)})"


def h_line(n: int) -> tuple[int, int]:
    """(h^0, h^1) of O(n) on the line; h0 - h1 = n + 1."""
    return (max(n + 1, 0), max(-n - 1, 0))


def h_split(s: SplittingType, m: int) -> tuple[int, int]:
    """(h^0, h^1) of the twist by O(m), summed over summands."""
    h0 = 0
    h1 = 0
    for n in s.components:
        a, b = h_line(n + m)
        h0 += a
        h1 += b
    return (h0, h1)


def natural_type(r: int, d: int) -> SplittingType:
    """The unique natural-cohomology splitting type of rank r and degree d.

    Components take the two adjacent values q+1 and q where d = r*q + rem,
    0 <= rem < r.
    """
    if r == 0:
        if d != 0:
            raise ValueError("rank 0 with nonzero degree")
        return SplittingType(())
    if r < 0:
        raise ValueError("negative rank")
    q, rem = divmod(d, r)
    return SplittingType([q + 1] * rem + [q] * (r - rem))


class H0Profile:
    """Memoized evaluator m -> h^0 of the twist by O(m), defined on all integers."""

    __slots__ = ("_eval", "_memo")

    def __init__(self, evaluator: Callable[[int], int]):
        self._eval = evaluator
        self._memo: dict[int, int] = {}

    def __call__(self, m: int) -> int:
        v = self._memo.get(m)
        if v is None:
            v = self._eval(m)
            self._memo[m] = v
        return v

    @classmethod
    def of_type(cls, s: SplittingType) -> "H0Profile":
        return cls(lambda m: h_split(s, m)[0])


def _first_positive(f: Callable[[int], int], lo: int, hi: int) -> int:
    """Smallest m in (lo, hi] with f(m) > 0, assuming f(lo) == 0 < f(hi)."""
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def splitting_from_h0_profile(
    profile: Callable[[int], int],
    rank: int,
    degree: int,
    *,
    top_bound: Optional[int] = None,
) -> SplittingType:
    """Recover the splitting type from its h^0 profile by greedy peeling.

    The top component is max{-m : profile(m) != 0} with multiplicity
    profile(-n_top); its contribution is subtracted and the peel recurses
    until the rank is exhausted.  Inconsistent profiles (negative residual,
    multiplicity overflow, degree mismatch) raise ProfileError.
    """
    if rank < 0:
        raise ProfileError("negative rank")
    prof = profile if isinstance(profile, H0Profile) else H0Profile(profile)
    peeled: list[tuple[int, int]] = []  # (component, multiplicity)

    def resid(m: int) -> int:
        v = prof(m)
        for comp, mult in peeled:
            v -= mult * max(comp + m + 1, 0)
        if v < 0:
            raise ProfileError(f"negative residual {v} at twist {m}")
        return v

    hi = abs(degree) + rank + 2
    if rank == 0:
        if degree != 0:
            raise ProfileError("rank 0 with nonzero degree")
        if prof(hi) != 0 or prof(0) != 0:
            raise ProfileError("nonzero profile for the rank 0 bundle")
        return SplittingType(())

    remaining = rank
    if top_bound is not None:
        lo = -top_bound - 1
        if resid(lo) != 0:
            raise ProfileError("profile nonzero below the stated top bound")
    else:
        # exponential descent to a vanishing point of the residual
        lo = hi
        step = 1
        for _ in range(70):
            lo -= step
            step *= 2
            if resid(lo) == 0:
                break
        else:
            raise ProfileError("no vanishing point found; profile never vanishes")

    while remaining > 0:
        # the residual of an honest profile becomes positive eventually;
        # grow the probe point until it does (components can sit far below
        # the degree-based starting guess)
        step = 1
        for _ in range(70):
            if hi > lo and resid(hi) > 0:
                break
            hi += step
            step *= 2
        else:
            raise ProfileError("profile vanishes where remaining rank forces sections")
        m_first = _first_positive(resid, lo, hi)
        n_top = -m_first
        mult = resid(m_first)
        if mult > remaining:
            raise ProfileError(
                f"multiplicity {mult} at component {n_top} exceeds remaining rank {remaining}"
            )
        peeled.append((n_top, mult))
        remaining -= mult
        lo = m_first  # residual now vanishes at m_first again

    comps = []
    for comp, mult in peeled:
        comps.extend([comp] * mult)
    result = SplittingType(comps)
    if result.degree != degree:
        raise ProfileError(
            f"recovered degree {result.degree} does not match the stated degree {degree}"
        )
    if resid(max(hi, lo + 1)) != 0:
        raise ProfileError("profile exceeds the recovered splitting type at large twist")
    return result


def _triangular_top_component(gamma: LaurentMatrix) -> Optional[int]:
    """Largest splitting component bound for triangular monomial-diagonal input.

    An upper or lower triangular transition matrix filters the bundle by line
    bundles O(c_i) with c_i = -(diagonal exponent); every splitting component
    then lies in [min c_i, max c_i].
    """
    diag = gamma.monomial_diagonal()
    if diag is None:
        return None
    return max(-e for e, _ in diag)


def _section_dim_truncated(gamma: LaurentMatrix, m: int, deg_cap: int) -> int:
    """Dimension of {s+ in Q[z]^r, deg <= cap : gamma * z^-m * s+ has exponents <= 0}."""
    r = gamma.rows
    ncols = r * (deg_cap + 1)
    rows: dict[tuple[int, int], dict[int, object]] = {}
    for i in range(r):
        for j in range(r):
            entry = gamma.entry(i, j)
            if entry.is_zero:
                continue
            for e0, c in entry.terms():
                base = e0 - m
                for k in range(deg_cap + 1):
                    e = base + k
                    if e >= 1:
                        rows.setdefault((i, e), {})[k * r + j] = c
    int_rows = []
    for constraint in rows.values():
        cols = sorted(constraint)
        fracs = [constraint[c] for c in cols]
        denom = 1
        for f in fracs:
            d = f.denominator
            if d != 1:
                denom = denom * d // gcd(denom, d)
        vals = [int(f * denom) for f in fracs]
        int_rows.append((cols, vals))
    return ncols - kernels.rank_rows(int_rows, ncols)


def _h0_sections(gamma: LaurentMatrix, m: int) -> int:
    """Stabilized truncated section count; assumes the determinant is a unit."""
    r = gamma.rows
    if r == 0:
        return 0
    top = _triangular_top_component(gamma)
    if top is not None:
        # rigorous: section degrees are bounded by top component + m
        deg_cap = max(top + m, 0) + 1
    else:
        deg_cap = r * gamma.max_abs_exp() + abs(m) + 1
    prev = _section_dim_truncated(gamma, m, deg_cap)
    for _ in range(24):
        deg_cap *= 2
        cur = _section_dim_truncated(gamma, m, deg_cap)
        if cur == prev:
            return cur
        prev = cur
    raise TruncationError(f"section dimension did not stabilize (twist {m})")


def h0_from_transition(gamma: LaurentMatrix, m: int) -> int:
    """h^0 of the twist by O(m) of the bundle glued by gamma."""
    if gamma.rows != gamma.cols:
        raise DimensionError("transition matrix must be square")
    if gamma.rows and det_unit_order(gamma) is None:
        raise NotABundleError("determinant is not a unit of the Laurent ring")
    return _h0_sections(gamma, m)


def splitting_from_transition(gamma: LaurentMatrix) -> SplittingType:
    """Splitting type of the bundle glued by gamma.

    Rank is the matrix size, degree is minus the determinant order, and the
    components come from peeling the h^0 profile.
    """
    if gamma.rows != gamma.cols:
        raise DimensionError("transition matrix must be square")
    if gamma.rows == 0:
        return SplittingType(())
    unit = det_unit_order(gamma)
    if unit is None:
        raise NotABundleError("determinant is not a unit of the Laurent ring")
    degree = -unit[0]
    top = _triangular_top_component(gamma)
    profile = H0Profile(lambda m: _h0_sections(gamma, m))
    return splitting_from_h0_profile(
        profile, gamma.rows, degree, top_bound=top
    )

"""Closed-form minimum-distance and file-size bounds.

Every bound is a total integer function; feasibility (for example, a bound
value below the local distance delta) is left to the separate predicate so
that parameter sweeps never raise.  All arithmetic is exact integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import CodingError


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class QOutOfRange(CodingError, ValueError):
    pass


@dataclass(frozen=True)
class ProfileCalculator:
    """Leading/trailing sums of a periodically extended rank profile.

    The base profile a_1..a_nL is extended with period n_L; P(s) is the sum
    of the first s entries of the extension, Q(s) the sum of the last s
    entries of the base profile, and p_inverse(v) the least s with P(s) >= v.
    """

    profile: tuple
    _prefix: tuple = dc_field(init=False, repr=False)

    def __post_init__(self):
        prof = tuple(int(x) for x in self.profile)
        if not prof:
            raise ValueError("profile must be nonempty")
        if any(x < 0 for x in prof):
            raise ValueError(f"profile entries must be nonnegative: {prof}")
        if any(prof[i] < prof[i + 1] for i in range(len(prof) - 1)):
            raise ValueError(f"profile must be nonincreasing: {prof}")
        if prof[0] == 0:
            raise ValueError("leading profile entry must be positive")
        object.__setattr__(self, "profile", prof)
        prefix = [0]
        for x in prof:
            prefix.append(prefix[-1] + x)
        object.__setattr__(self, "_prefix", tuple(prefix))

    @property
    def n_L(self) -> int:
        return len(self.profile)

    @property
    def K_L(self) -> int:
        return self._prefix[-1]

    def leading_sum(self, s: int) -> int:
        if s < 0:
            raise ValueError(f"s must be >= 0, got {s}")
        if s == 0:
            return 0
        u1, u0 = divmod(s, self.n_L)
        if u0 == 0:
            u1, u0 = u1 - 1, self.n_L
        return u1 * self.K_L + self._prefix[u0]

    def trailing_sum(self, s: int) -> int:
        if s < 0 or s > self.n_L:
            raise QOutOfRange(f"trailing sum needs 0 <= s <= {self.n_L}, got {s}")
        return self.K_L - self._prefix[self.n_L - s]

    def p_inverse(self, v: int) -> int:
        if v < 1:
            raise ValueError(f"p_inverse needs v >= 1, got {v}")
        if self.K_L == 0:
            raise ValueError("profile sums to zero; P never reaches v")
        v1, v0 = divmod(v, self.K_L)
        if v0 == 0:
            v1, v0 = v1 - 1, self.K_L
        s0 = next(s for s in range(1, self.n_L + 1) if self._prefix[s] >= v0)
        return v1 * self.n_L + s0

    def strictly_subadditive(self) -> bool:
        """P(s+s') < P(s) + P(s') on [n_L]; holds iff a_1 > a_2."""
        if self.n_L == 1:
            return True
        return self.profile[0] > self.profile[1]


def msr_profile(r: int, delta: int, alpha: int) -> tuple:
    """Flat local profile of an MSR code: alpha for r steps, then zeros."""
    return (alpha,) * r + (0,) * (delta - 1)


def mbr_profile(r: int, delta: int) -> tuple:
    """Local profile of a repair-by-transfer MBR code with alpha = r+delta-2."""
    alpha = r + delta - 2
    n_l = r + delta - 1
    prof = [max(alpha - i, 0) for i in range(r)]
    return tuple(prof) + (0,) * (n_l - r)


# -- minimum-distance bounds --------------------------------------------------

def scalar_locality_bound(n: int, k: int, r: int, delta: int) -> int:
    return n - k + 1 - (ceil_div(k, r) - 1) * (delta - 1)


def ura_bound(n: int, K: int, calc: ProfileCalculator) -> int:
    return n - calc.p_inverse(K) + 1


def msr_k_bound(n: int, K: int, alpha: int, r: int, delta: int) -> int:
    return (n - ceil_div(K, alpha) + 1) - (ceil_div(K, r * alpha) - 1) * (delta - 1)


def mbr_bound(n: int, K: int, r: int, delta: int) -> int:
    """URA bound specialized to repair-by-transfer MBR local codes."""
    return ura_bound(n, K, ProfileCalculator(mbr_profile(r, delta)))


def rate_bound(n: int, d_min: int, calc: ProfileCalculator) -> int:
    """Largest scalar dimension compatible with (n, d_min): P(n - d_min + 1)."""
    return calc.leading_sum(n - d_min + 1)


def structural_bounds(n: int, r: int, delta: int, *, K=None, alpha=None,
                      kappa=None, i0=None) -> dict:
    """The nested bound family driven by information-set sizes.

    Returns whichever of {"i0", "kappa", "k"} is computable from the inputs;
    each is n - X + 1 - (ceil(X/r) - 1)(delta - 1) with X the corresponding
    set size.  Values satisfy i0 <= kappa <= k whenever all are present.
    """
    def value(x):
        return n - x + 1 - (ceil_div(x, r) - 1) * (delta - 1)

    out = {}
    if i0 is not None:
        out["i0"] = value(i0)
    if kappa is not None:
        out["kappa"] = value(kappa)
    if K is not None and alpha is not None:
        out["k"] = value(ceil_div(K, alpha))
    return out


def kappa_bound(n: int, kappa: int, r: int, delta: int) -> int:
    return n - kappa + 1 - (ceil_div(kappa, r) - 1) * (delta - 1)


def cutset_bound(k: int, d: int, alpha: int, beta: int) -> int:
    """Network-flow ceiling on the file size of an (n, k, d), (alpha, beta) code."""
    return sum(min(alpha, (d - i) * beta) for i in range(k))


def concatenated_bound(n1: int, k1: int, d1: int, n2: int, k2: int, d2: int) -> int:
    """Distance bound for a serial concatenation with inner [n1,k1,d1]."""
    n = n1 * n2
    k = k1 * k2
    r = n1 - d1 + 1
    return n - k + 1 - (ceil_div(k, r) - 1) * (d1 - 1)


def erasure_and_singleton(n: int, K: int, alpha: int, kappa: int) -> tuple:
    """(singleton, erasure) distance bounds; erasure is the tighter one."""
    return (n - ceil_div(K, alpha) + 1, n - kappa + 1)


def strict_subadditivity(calc: ProfileCalculator) -> bool:
    return calc.strictly_subadditive()


def is_feasible(bound_value: int, delta: int) -> bool:
    """A code with (r, delta) locality needs d_min >= delta."""
    return bound_value >= delta

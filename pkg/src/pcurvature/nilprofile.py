"""Jordan profile of the nilpotent part and a factorization feasibility test.

The T-adic valuations of the invariant factors are the Jordan block sizes
at the eigenvalue 0; the rank sequence of the powers of the nilpotent part
follows.  A hypothesized factorization with a symmetric-power block forces
that rank sequence to shadow one of a small combinatorial family, which is
checked exhaustively.
"""

from dataclasses import dataclass, field
from math import comb


@dataclass(frozen=True)
class RankProfile:
    """Ranks of successive powers, nonincreasing and convex, tail trimmed."""

    ranks: tuple

    def __post_init__(self):
        r = tuple(self.ranks)
        while len(r) >= 2 and r[-1] == r[-2]:
            r = r[:-1]
        object.__setattr__(self, "ranks", r)
        diffs = [a - b for a, b in zip(r, r[1:])]
        if any(d < 0 for d in diffs) or r and r[-1] < 0:
            raise ValueError("rank profile must be nonincreasing and >= 0")
        if any(a < b for a, b in zip(diffs, diffs[1:])):
            raise ValueError("rank profile differences must be nonincreasing")

    def __len__(self):
        return len(self.ranks)


def _t_valuation(factor, zero):
    v = 0
    for c in factor:
        if (not c) if zero is None else (c == zero):
            v += 1
        else:
            break
    return v


def profile_from_invariant_factors(factors, zero=None):
    """Rank profile of the nilpotent part of a matrix with these factors.

    The valuation v_j of I_j at T is the size of the j-th Jordan block at
    the eigenvalue 0, so the m-th power of the nilpotent part has rank
    sum_j v_j - sum_j min(m, v_j).  A coefficient counts as zero when it
    equals `zero`, or is falsy when `zero` is None (covering prime-field
    elements and trimmed polynomial coefficients alike).
    """
    vals = [_t_valuation(f, zero) for f in factors]
    size = sum(vals)
    ranks = []
    m = 0
    while True:
        ranks.append(size - sum(min(m, v) for v in vals))
        if ranks[-1] == 0:
            break
        m += 1
    return RankProfile(tuple(ranks))


def sym_power_rank(n, base_rank):
    """Rank of the n-th symmetric power, binom(n - 1 + base_rank, n)."""
    if n < 2 or base_rank < 0:
        raise ValueError("need n >= 2 and base_rank >= 0")
    return comb(n - 1 + base_rank, n)


@dataclass(frozen=True)
class FactorizationHypothesis:
    """Block shape to test: a top block above an n-th symmetric power."""

    total_size: int
    top_block_size: int
    sym_power_candidates: tuple = ()
    base_size_candidates: tuple = ()

    def __post_init__(self):
        sym = self.total_size - self.top_block_size
        if not self.sym_power_candidates:
            # binom(n-1+b, n) >= n for b >= 1, so n beyond the block is dead
            object.__setattr__(self, "sym_power_candidates",
                               tuple(range(2, sym + 1)))
        if not self.base_size_candidates:
            object.__setattr__(self, "base_size_candidates",
                               tuple(range(0, sym + 1)))


@dataclass(frozen=True)
class CandidateTrace:
    """Why one (n, base_size) candidate fails, with the forced base ranks."""

    n: int
    base_size: int
    forced_profile: tuple | None
    reason: str


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple | None = None
    trace: tuple = ()


def _admissible(R, n, top):
    """Per power m, the base ranks b with 0 <= R_m - sym_rank(n, b) <= top."""
    out = []
    for Rm in R:
        opts = [b for b in range(Rm + 1)
                if 0 <= Rm - sym_power_rank(n, b) <= top]
        out.append(opts)
    return out


def _search(opts, prefix):
    """Exhaustive scan for a nonincreasing, convex completion of prefix."""
    m = len(prefix)
    if m == len(opts):
        return prefix
    for b in sorted(opts[m], reverse=True):
        if m >= 1 and b > prefix[-1]:
            continue
        if m >= 2 and prefix[-1] - b > prefix[-2] - prefix[-1]:
            continue
        hit = _search(opts, prefix + [b])
        if hit is not None:
            return hit
    return None


def feasibility_check(profile, hyp):
    """Decide whether any candidate symmetric-power shape fits the profile.

    For each (n, base size) with the dimensions matching, the window
    constraint 0 <= R_m - rank(Sym block ^ m) <= top pins the base ranks
    to a short list per m; an exhaustive search then looks for a valid
    Jordan profile among them.  Returns the first witness, or per-candidate
    traces showing the forced base ranks and the condition they break.
    """
    R = profile.ranks
    sym = hyp.total_size - hyp.top_block_size
    trace = []
    for n in hyp.sym_power_candidates:
        for d in hyp.base_size_candidates:
            if sym_power_rank(n, d) != sym:
                continue
            opts = _admissible(R, n, hyp.top_block_size)
            if any(not o for o in opts):
                m = next(i for i, o in enumerate(opts) if not o)
                trace.append(CandidateTrace(
                    n, d, None,
                    f"no admissible base rank at power {m}"))
                continue
            if d not in opts[0]:
                trace.append(CandidateTrace(
                    n, d, None,
                    f"base size {d} is not admissible at power 0"))
                continue
            hit = _search(opts, [d])
            if hit is None:
                forced = tuple(max(o) for o in opts)
                diffs = [a - b for a, b in zip(forced, forced[1:])]
                where = next((i for i in range(1, len(diffs))
                              if diffs[i] > diffs[i - 1]), None)
                trace.append(CandidateTrace(
                    n, d, forced,
                    "forced base ranks have increasing differences"
                    + (f" at power {where + 1}" if where is not None else "")))
                continue
            return FeasibilityResult(True, witness=(n, tuple(hit)))
    if not trace:
        trace.append(CandidateTrace(
            0, 0, None,
            f"no (n, base size) gives a symmetric power of dimension {sym}"))
    return FeasibilityResult(False, trace=tuple(trace))

"""Congruence sieve on the exponent m and final elimination of candidates.

A solution with exponent m >= 3 forces the s^2-coefficient of (t - s)^m to be
+-1.  Reducing that coefficient modulo 3, t^3 - 1, t^3 and t^6 gives the
filters in :func:`admissible`; every (t, m) that passes them is then ruled
out by computing the coefficient modulo a few large primes.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from . import logbounds, ring
from .errors import BadModulus, EmptyPrimeSet, InvalidRange
from .intervals import DEFAULT_PREC
from .ring import RingContext

# The 16 largest primes below 2**62, in decreasing order.
DEFAULT_PRIMES: tuple[int, ...] = (
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
)

# Pairs that survive every prime are recomputed exactly up to this exponent.
EXACT_RECHECK_LIMIT = 5000


@dataclass(frozen=True)
class AdmissibilityReport:
    t: int
    m: int
    passes_mod3: bool
    passes_smallhammer: bool
    k: int | None
    passes_hammer: bool
    passes_growth: bool

    @property
    def admissible(self) -> bool:
        return self.passes_mod3 and self.passes_smallhammer and self.passes_hammer and self.passes_growth

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "m": self.m,
            "passes_mod3": self.passes_mod3,
            "passes_smallhammer": self.passes_smallhammer,
            "k": self.k,
            "passes_hammer": self.passes_hammer,
            "passes_growth": self.passes_growth,
            "admissible": self.admissible,
        }


@dataclass(frozen=True)
class CandidateTable:
    pairs: tuple[tuple[int, int], ...]

    @property
    def rows(self) -> list[tuple[int, int]]:
        counts: dict[int, int] = {}
        for t, _ in self.pairs:
            counts[t] = counts.get(t, 0) + 1
        return sorted(counts.items())

    def __len__(self) -> int:
        return len(self.pairs)

    def to_csv(self) -> str:
        lines = ["t,count"]
        lines += [f"{t},{n}" for t, n in self.rows]
        return "\n".join(lines) + "\n"

    @staticmethod
    def rows_from_csv(text: str) -> list[tuple[int, int]]:
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or lines[0] != "t,count":
            raise ValueError("CSV must start with the header 't,count'")
        out = []
        for ln in lines[1:]:
            t, n = ln.split(",")
            out.append((int(t), int(n)))
        return out


@dataclass(frozen=True)
class EliminationResult:
    t: int
    m: int
    witness_prime: int | None
    primes_tested: tuple[int, ...] = field(default=())
    exact_solution: bool = False

    @property
    def eliminated(self) -> bool:
        return self.witness_prime is not None

    @property
    def status(self) -> str:
        if self.eliminated:
            return "eliminated"
        return "solution" if self.exact_solution else "survives"


def _check_pair(t: int, m: int) -> None:
    if t < 2 or m < 3:
        raise InvalidRange(f"need t >= 2 and m >= 3, got t={t}, m={m}")


def growth_threshold(t: int) -> int:
    """Smallest m with m^3 > 6 t^6."""
    return int(gmpy2.iroot(gmpy2.mpz(6 * t**6), 3)[0]) + 1


def admissible(t: int, m: int) -> AdmissibilityReport:
    _check_pair(t, m)
    d = t**3 - 1
    mod3 = m % 3 == 2
    c2 = m * (m - 1) // 2
    small = c2 % d == 1 % d
    k = (c2 - 1) // d if small else None
    hammer = False
    if mod3 and small:
        hammer = (k * ((m - 2) // 3)) % t**3 == 0
    growth = m**3 > 6 * t**6
    return AdmissibilityReport(t, m, mod3, small, k, hammer, growth)


def _hammer_filter(t: int, ms: Iterable[int]) -> list[int]:
    d, t3 = t**3 - 1, t**3
    out = []
    for m in ms:
        k = (m * (m - 1) // 2 - 1) // d
        if (k * ((m - 2) // 3)) % t3 == 0:
            out.append(m)
    return out


def _scan_t(t: int, m_max: int, growth: bool = True) -> list[int]:
    """All admissible m for one t, in increasing order.

    The mod 3, growth and (smallhammer) filters are vectorised; the exact
    (hammer) test runs on the few survivors.
    """
    m_lo = max(3, growth_threshold(t)) if growth else 3
    start = m_lo + (2 - m_lo) % 3
    if start > m_max:
        return []
    d = t**3 - 1
    if m_max * m_max < 2**62:
        ms = np.arange(start, m_max + 1, 3, dtype=np.int64)
        ms = ms[(ms * (ms - 1) // 2) % d == 1]
        ms = ms.tolist()
    else:
        ms = [m for m in range(start, m_max + 1, 3) if (m * (m - 1) // 2) % d == 1]
    return _hammer_filter(t, ms)


def _scan_chunk(args: tuple[Sequence[int], int, bool]) -> list[tuple[int, int]]:
    ts, m_max, growth = args
    return [(t, m) for t in ts for m in _scan_t(t, m_max, growth)]


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("CUBICNORM_THREADS")
    return max(1, int(env)) if env else 1


def enumerate_candidates(
    t_min: int, t_max: int, m_max: int, *, workers: int | None = None, growth: bool = True
) -> CandidateTable:
    """All admissible (t, m) with t_min <= t <= t_max and 3 <= m <= m_max.

    ``growth=False`` drops the m^3 > 6 t^6 filter, which is implied by the
    congruences; it exists so that implication can be tested.
    """
    if t_min < 2 or t_max < t_min or m_max < 3:
        raise InvalidRange(f"invalid range t in [{t_min}, {t_max}], m_max={m_max}")
    ts = list(range(t_min, t_max + 1))
    n = worker_count(workers)
    if n == 1:
        pairs = _scan_chunk((ts, m_max, growth))
    else:
        # interleave t values: small t carry most of the work
        chunks = [(ts[i::n], m_max, growth) for i in range(n)]
        with ProcessPoolExecutor(max_workers=n) as pool:
            pairs = [p for part in pool.map(_scan_chunk, chunks) for p in part]
    return CandidateTable(tuple(sorted(pairs)))


def binomial_mod_prime(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via Lucas' theorem on the base-p digits."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * comb(ni, ki) % p
        n //= p
        k //= p
    return result


def s2_coefficient_series(t: int, m: int) -> int:
    """s^2-coefficient of (t - s)^m from the binomial expansion.

    sum_{i=0}^{(m-2)//3} C(m, 3i+2) t^(m-2-3i) (1 - t^3)^i
    """
    if m < 2:
        raise InvalidRange("series form needs m >= 2")
    return sum(comb(m, 3 * i + 2) * t ** (m - 2 - 3 * i) * (1 - t**3) ** i for i in range((m - 2) // 3 + 1))


def loki_holds(t: int, m: int) -> bool:
    """The mod t^6 congruence 1 == C(m,3) t^3 (1-t^3)^((m-5)/3) + (1-t^3)^((m-2)/3)."""
    if m % 3 != 2 or m < 5:
        raise InvalidRange("needs m = 2 (mod 3) and m >= 5")
    q = t**6
    w = 1 - t**3
    rhs = comb(m, 3) * t**3 * pow(w, (m - 5) // 3, q) + pow(w, (m - 2) // 3, q)
    return rhs % q == 1


def _check_primes(primes: Sequence[int], ctx: RingContext) -> None:
    if not primes:
        raise EmptyPrimeSet("at least one prime is required")
    if len(set(primes)) != len(primes):
        raise BadModulus("primes must be pairwise distinct")
    for p in primes:
        if not gmpy2.is_prime(p):
            raise BadModulus(f"{p} is not prime")


def final_coefficient_check(
    t: int, m: int, primes: Sequence[int] = DEFAULT_PRIMES, *, strict: bool = False
) -> EliminationResult:
    """Rule out (t, m) by the s^2-coefficient of (t - s)^m modulo primes.

    The target is c == 1; ``strict=True`` also accepts c == -1, so an
    elimination then re-proves that the minus sign cannot occur either.
    """
    ctx = RingContext(t)
    _check_primes(primes, ctx)
    targets = (1, -1) if strict else (1,)
    unit = ctx.unit()
    for p in primes:
        c = ring.pow_mod_prime(unit, m, ctx, p).r2
        if all(c != target % p for target in targets):
            return EliminationResult(t, m, p, tuple(primes))
    return EliminationResult(t, m, None, tuple(primes))


def _extra_primes(below: int, count: int) -> list[int]:
    """The ``count`` largest primes strictly below the odd number ``below``."""
    out = []
    p = below
    while len(out) < count:
        p -= 2
        if gmpy2.is_prime(p):
            out.append(p)
    return out


def eliminate(
    t: int, m: int, primes: Sequence[int] = DEFAULT_PRIMES, *, strict: bool = False
) -> EliminationResult:
    """``final_coefficient_check`` with escalation for survivors.

    A survivor is retried with 16 further primes; if it still survives and
    m is small, the coefficient is computed exactly to settle it.
    """
    result = final_coefficient_check(t, m, primes, strict=strict)
    if result.eliminated:
        return result
    extra = _extra_primes(min(primes), 16)
    more = final_coefficient_check(t, m, extra, strict=strict)
    tested = tuple(primes) + tuple(extra)
    if more.eliminated:
        return EliminationResult(t, m, more.witness_prime, tested)
    if m <= EXACT_RECHECK_LIMIT:
        c = ring.pow(RingContext(t).unit(), m, RingContext(t)).a2
        targets = (1, -1) if strict else (1,)
        return EliminationResult(t, m, None, tested, exact_solution=c in targets)
    return EliminationResult(t, m, None, tested)


@dataclass
class VerifyConfig:
    m_max: int | None = None
    t_max: int | None = None
    t_min: int = 2
    primes: Sequence[int] | None = None
    strict: bool = False
    precision: int = DEFAULT_PREC
    workers: int | None = None
    assume_paper_bounds: bool = False


PAPER_M_MAX = 225676


@dataclass(frozen=True)
class VerificationReport:
    m_max: int
    t_max_coarse: int
    t_max: int
    table: CandidateTable
    results: tuple[EliminationResult, ...]

    @property
    def survivors(self) -> list[EliminationResult]:
        return [r for r in self.results if not r.eliminated]

    @property
    def verdict(self) -> str:
        return "verified" if not self.survivors else "unverified"

    def as_dict(self) -> dict:
        return {
            "schema_version": 1,
            "m_max": self.m_max,
            "t_max_coarse": self.t_max_coarse,
            "t_max": self.t_max,
            "candidates": len(self.table),
            "survivors": len(self.survivors),
            "table": [{"t": t, "count": n} for t, n in self.table.rows],
            "pairs": [
                {"t": r.t, "m": r.m, "status": r.status, "witness_prime": r.witness_prime}
                for r in self.results
            ],
            "verdict": self.verdict,
        }


def verify_theorem(config: VerifyConfig | None = None) -> VerificationReport:
    """Derive the bounds, enumerate candidates and eliminate each one."""
    config = config or VerifyConfig()
    primes = DEFAULT_PRIMES if config.primes is None else tuple(config.primes)
    if not primes:
        raise EmptyPrimeSet("at least one prime is required")
    if config.m_max is not None:
        m_max = config.m_max
    elif config.assume_paper_bounds:
        m_max = PAPER_M_MAX
    else:
        m_max = logbounds.derive_m_max(config.precision)
    bounds = logbounds.derive_t_bounds(m_max)
    t_max = bounds.t_max if config.t_max is None else config.t_max
    if t_max < config.t_min:
        table = CandidateTable(())
    else:
        table = enumerate_candidates(config.t_min, t_max, m_max, workers=config.workers)
    results = tuple(eliminate(t, m, primes, strict=config.strict) for t, m in table.pairs)
    return VerificationReport(m_max, bounds.t_max_coarse, t_max, table, results)

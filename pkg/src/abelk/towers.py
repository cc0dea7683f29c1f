"""Finite-rank torsion-free groups as eventually-periodic inductive limits.

A Tower is a system Z^r -> Z^r -> ... whose connecting matrices are a finite
prefix followed by a repeating period (an empty period means the group is
free beyond the prefix).  Elements are (stage, coords) threads; two elements
are equal iff they agree after pushing to a common stage.

Divisibility, membership and p-heights are decided exactly:

* for a fixed modulus p^k the residues of an element under the connecting
  maps form an eventually-periodic orbit on a finite state space, so
  reachability of 0 mod p^k is settled by cycle detection;
* infinite p-height is detected by a minimal-polynomial criterion: the
  p-valuation of the element's coordinates grows without bound iff every
  root of the minimal polynomial of the period product on the element's
  cyclic subspace has positive p-adic valuation, i.e. the polynomial is
  congruent to a power of x mod p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .matrices import IntMatrix

INF = float("inf")


class ZeroElementError(ValueError):
    """Heights and characteristics are undefined for the zero element."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; n is small at desk scale."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Tower:
    """Eventually-periodic inductive system of full-rank integer matrices."""

    rank: int
    prefix: tuple[IntMatrix, ...] = ()
    period: tuple[IntMatrix, ...] = ()

    @staticmethod
    def free(rank: int) -> "Tower":
        return Tower(rank)

    def stage_matrix(self, s: int) -> IntMatrix:
        """Connecting map from stage s to stage s + 1."""
        a = len(self.prefix)
        if s < a:
            return self.prefix[s]
        if not self.period:
            return IntMatrix.identity(self.rank)
        return self.period[(s - a) % len(self.period)]

    def transition(self, s0: int, s1: int) -> IntMatrix:
        """Product of connecting maps carrying stage s0 coords to stage s1."""
        if s1 < s0:
            raise ValueError("cannot transition backwards")
        m = IntMatrix.identity(self.rank)
        for s in range(s0, s1):
            m = self.stage_matrix(s) @ m
        return m

    def period_product(self) -> IntMatrix:
        """Composite of one full period (identity when the period is empty)."""
        m = IntMatrix.identity(self.rank)
        for q in self.period:
            m = q @ m
        return m

    def determinant_primes(self) -> frozenset[int]:
        """Primes dividing any connecting-matrix determinant."""
        primes: set[int] = set()
        for m in self.prefix + self.period:
            primes.update(factorize(m.det()))
        return frozenset(primes)


@dataclass(frozen=True)
class GroupElement:
    """A thread representative: integer coordinates at a given stage."""

    stage: int
    coords: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def validate_tower(t: Tower) -> list[str]:
    """Empty list when well-formed; otherwise human-readable defects."""
    defects = []
    if t.rank < 1:
        defects.append(f"rank must be >= 1, got {t.rank}")
        return defects
    for kind, mats in (("prefix", t.prefix), ("period", t.period)):
        for i, m in enumerate(mats):
            if m.rows != t.rank or m.cols != t.rank:
                defects.append(f"{kind}[{i}] is {m.rows}x{m.cols}, "
                               f"expected {t.rank}x{t.rank}")
            elif m.det() == 0:
                defects.append(f"{kind}[{i}] is singular")
    return defects


def push_to_stage(t: Tower, e: GroupElement, s: int) -> GroupElement:
    if s < e.stage:
        raise ValueError(f"cannot push element from stage {e.stage} "
                         f"back to stage {s}")
    return GroupElement(s, t.transition(e.stage, s).apply(e.coords))


def elements_equal(t: Tower, e1: GroupElement, e2: GroupElement) -> bool:
    s = max(e1.stage, e2.stage)
    return push_to_stage(t, e1, s).coords == push_to_stage(t, e2, s).coords


def _vec_mod(vec, mod):
    return tuple(x % mod for x in vec)


def _apply_mod(m: IntMatrix, vec, mod):
    return tuple(sum(a * b for a, b in zip(row, vec)) % mod
                 for row in m.entries)


def _first_stage_reaching_zero(t: Tower, stage: int, vec, p: int,
                               k: int) -> int | None:
    """Least s >= stage with (transition to s)(vec) == 0 mod p^k, or None.

    Exact: past the prefix the residue orbit lives on a finite state space
    keyed by (period phase, residue vector), so a repeated state proves
    unreachability.
    """
    mod = p ** k
    a, b = len(t.prefix), len(t.period)
    cur = _vec_mod(vec, mod)
    s = stage
    seen: set = set()
    # quick exit: if p divides no determinant at or after the current stage,
    # residues evolve invertibly and can never newly reach zero
    while True:
        if all(x == 0 for x in cur):
            return s
        if s >= a:
            if b == 0:
                return None
            if (s - a) % b == 0 and t.period_product().det() % p != 0:
                return None
            state = ((s - a) % b, cur)
            if state in seen:
                return None
            seen.add(state)
        cur = _apply_mod(t.stage_matrix(s), cur, mod)
        s += 1


def membership(t: Tower, v) -> GroupElement | None:
    """Element with the given stage-0 rational coordinates, or None.

    v belongs to the limit group iff some stage's transition matrix clears
    all denominators.  Returns a representative at the least such stage.
    """
    v = tuple(Fraction(x) for x in v)
    if len(v) != t.rank:
        raise ValueError("coordinate length does not match tower rank")
    d = math.lcm(*(x.denominator for x in v)) if v else 1
    if d == 1:
        return GroupElement(0, tuple(int(x) for x in v))
    w = tuple(int(x * d) for x in v)
    best = 0
    for p, k in factorize(d).items():
        s = _first_stage_reaching_zero(t, 0, w, p, k)
        if s is None:
            return None
        best = max(best, s)
    coords = t.transition(0, best).to_rational().apply(v)
    assert all(c.denominator == 1 for c in coords)
    return GroupElement(best, tuple(int(c) for c in coords))


def is_divisible(t: Tower, e: GroupElement, m: int) -> bool:
    """Whether e is divisible by m within the limit group."""
    if m < 1:
        raise ValueError("divisor must be >= 1")
    if m == 1 or e.is_zero:
        return True
    return all(
        _first_stage_reaching_zero(t, e.stage, e.coords, p, k) is not None
        for p, k in factorize(m).items())


def _min_valuation(vec, p: int):
    """min_i v_p(vec_i); INF for the zero vector."""
    best = INF
    for x in vec:
        if x == 0:
            continue
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        best = min(best, v)
        if best == 0:
            return 0
    return best


def _cyclic_min_poly(q: IntMatrix, vec) -> list[Fraction]:
    """Monic minimal polynomial of q on the cyclic subspace generated by vec.

    Returned as coefficient list [c0, c1, ..., 1] (low to high degree).
    """
    n = q.rows
    krylov: list[tuple[int, ...]] = []
    cur = tuple(vec)
    # row-echelon basis over Q with column pivots, to find first dependence
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    raw: list[list[Fraction]] = []
    while True:
        residual = [Fraction(x) for x in cur]
        coeffs = [Fraction(0)] * len(raw)
        for bi, (brow, piv) in enumerate(zip(basis, pivots)):
            f = residual[piv] / brow[piv]
            if f:
                coeffs[bi] = f
                residual = [x - f * y for x, y in zip(residual, brow)]
        piv = next((i for i, x in enumerate(residual) if x != 0), None)
        if piv is None:
            # cur = sum coeffs[i] * raw-combination; unwind to krylov coords
            # basis rows are linear combos of krylov vectors: track alongside
            combo = [Fraction(0)] * len(krylov)
            for bi, f in enumerate(coeffs):
                for j, g in enumerate(raw[bi]):
                    combo[j] += f * g
            poly = [-c for c in combo] + [Fraction(1)]
            return poly
        krylov.append(cur)
        basis.append(residual)
        pivots.append(piv)
        # raw[bi][j]: coefficient of krylov[j] in basis[bi]
        newraw = [Fraction(0)] * len(krylov)
        newraw[-1] = Fraction(1)
        for bi, f in enumerate(coeffs):
            for j, g in enumerate(raw[bi]):
                newraw[j] -= f * g
        raw.append(newraw)
        cur = q.apply(cur)


def height(t: Tower, e: GroupElement, p: int):
    """p-height of e in the limit group: an integer >= 0 or INF."""
    if e.is_zero:
        raise ZeroElementError("p-height of the zero element is undefined")
    a, b = len(t.prefix), len(t.period)
    # push past the prefix and align to a period boundary; coordinate
    # valuations are nondecreasing along pushes, so nothing is lost
    s = max(e.stage, a)
    if b:
        s = a + b * math.ceil((s - a) / b)
    e = push_to_stage(t, e, s)
    if not b:
        return _min_valuation(e.coords, p)
    q = t.period_product()
    minpoly = _cyclic_min_poly(q, e.coords)
    # every non-leading coefficient divisible by p <=> all roots have
    # positive valuation <=> the valuation grows without bound
    if all(c.numerator % p == 0 for c in minpoly[:-1]):
        return INF
    k = _min_valuation(e.coords, p)
    while _first_stage_reaching_zero(t, s, e.coords, p, int(k) + 1) is not None:
        k = int(k) + 1
    return int(k)


@dataclass(frozen=True)
class Supernatural:
    """Formal product of p^e with e in N union {inf}, finitely supported."""

    items: tuple[tuple[int, int | float], ...] = ()

    @staticmethod
    def of(assignments: dict) -> "Supernatural":
        items = tuple(sorted((int(p), e) for p, e in assignments.items()
                             if e not in (0, None)))
        for p, e in items:
            if e != INF and (not isinstance(e, int) or e < 0):
                raise ValueError(f"exponent of {p} must be a natural or inf")
        return Supernatural(items)

    def exponent(self, p: int):
        for q, e in self.items:
            if q == p:
                return e
        return 0

    def infinite_support(self) -> frozenset[int]:
        return frozenset(p for p, e in self.items if e == INF)

    def primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.items)

    def __str__(self):
        if not self.items:
            return "1"
        return " * ".join(f"{p}^{'inf' if e == INF else e}"
                          for p, e in self.items)


ZERO_CHARACTERISTIC = Supernatural()


def characteristic(t: Tower, e: GroupElement) -> Supernatural:
    """Height sequence of e over all primes, finitely supported and exact.

    Only primes dividing a connecting determinant or the content of the
    element's coordinates can have nonzero height; all other connecting maps
    are invertible over the p-adics.
    """
    if e.is_zero:
        raise ZeroElementError("characteristic of the zero element undefined")
    primes = set(t.determinant_primes())
    content = math.gcd(*e.coords)
    primes.update(factorize(content))
    return Supernatural.of({p: height(t, e, p) for p in sorted(primes)})


def types_equivalent(s1: Supernatural, s2: Supernatural) -> bool:
    """Equality of types: characteristics may differ in finitely many finite
    entries, so finitely-supported characteristics are equivalent exactly
    when their infinite supports coincide."""
    return s1.infinite_support() == s2.infinite_support()


@dataclass(frozen=True)
class TypeClass:
    """Equivalence class of characteristics (a rank-1 isomorphism type)."""

    representative: Supernatural

    def __eq__(self, other):
        if not isinstance(other, TypeClass):
            return NotImplemented
        return types_equivalent(self.representative, other.representative)

    def __hash__(self):
        return hash(self.representative.infinite_support())

    def __lt__(self, other):
        return (sorted(self.representative.infinite_support())
                < sorted(other.representative.infinite_support()))

    def __str__(self):
        sup = sorted(self.representative.infinite_support())
        return "type[" + ", ".join(f"{p}^inf" for p in sup) + "]" if sup \
            else "type[integers]"


ZERO_TYPE = TypeClass(ZERO_CHARACTERISTIC)


def unit_element(t: Tower) -> GroupElement:
    return GroupElement(0, (1,) + (0,) * (t.rank - 1))


def tower_type(t: Tower) -> TypeClass:
    """Type of a rank-1 tower (the type of any nonzero element)."""
    if t.rank != 1:
        raise ValueError("types classify rank-1 towers only")
    return TypeClass(characteristic(t, unit_element(t)))


def rank1_isomorphic(t1: Tower, t2: Tower) -> bool:
    """Rank-1 groups are isomorphic iff their types coincide."""
    if t1.rank != 1 or t2.rank != 1:
        raise ValueError("rank1_isomorphic requires rank-1 towers")
    return tower_type(t1) == tower_type(t2)


def rank1_tower_from_supernatural(s: Supernatural) -> Tower:
    """Canonical rank-1 tower whose unit element has the given characteristic."""
    finite = math.prod(p ** e for p, e in s.items if e != INF)
    infinite = math.prod(p for p, e in s.items if e == INF)
    prefix = (IntMatrix.from_rows([[finite]]),) if finite > 1 else ()
    period = (IntMatrix.from_rows([[infinite]]),) if infinite > 1 else ()
    return Tower(1, prefix, period)


def reshape(t: Tower, prefix_len: int, period_len: int) -> Tower:
    """Equivalent tower with the given shape (same stage maps everywhere).

    prefix_len must be >= the current prefix length and period_len a positive
    multiple of the current period length (any positive value when the period
    is empty, filled with identities).
    """
    if prefix_len < len(t.prefix):
        raise ValueError("cannot shorten the prefix")
    b = len(t.period)
    if b and period_len % b:
        raise ValueError("new period length must be a multiple of the old")
    if period_len < 1:
        raise ValueError("period length must be >= 1")
    prefix = tuple(t.stage_matrix(s) for s in range(prefix_len))
    period = tuple(t.stage_matrix(prefix_len + j) for j in range(period_len))
    # reshaping is only valid if the new period really repeats, which holds
    # when prefix_len - len(t.prefix) is a multiple of the old period length
    if b and (prefix_len - len(t.prefix)) % b:
        raise ValueError("prefix extension must be a whole number of periods")
    return Tower(t.rank, prefix, period)


def _common_shape(towers) -> tuple[int, int]:
    prefix_len = max((len(t.prefix) for t in towers), default=0)
    period_len = math.lcm(*(len(t.period) or 1 for t in towers)) if towers else 1
    # round each prefix extension up to a whole number of that tower's periods
    for t in towers:
        b = len(t.period) or 1
        extra = prefix_len - len(t.prefix)
        if extra % b:
            prefix_len += b - extra % b
    # second pass in case rounding for one tower broke another
    changed = True
    while changed:
        changed = False
        for t in towers:
            b = len(t.period) or 1
            extra = prefix_len - len(t.prefix)
            if extra % b:
                prefix_len += b - extra % b
                changed = True
    return prefix_len, period_len


def direct_sum_towers(towers) -> Tower:
    """Block-diagonal tower presenting the direct sum of the summands."""
    towers = list(towers)
    if not towers:
        raise ValueError("direct sum of no towers")
    if len(towers) == 1:
        return towers[0]
    pl, bl = _common_shape(towers)
    parts = [reshape(t, pl, bl) for t in towers]
    rank = sum(t.rank for t in towers)
    prefix = []
    for s in range(pl):
        m = parts[0].prefix[s]
        for t in parts[1:]:
            m = m.block_diag(t.prefix[s])
        prefix.append(m)
    period = []
    for j in range(bl):
        m = parts[0].period[j]
        for t in parts[1:]:
            m = m.block_diag(t.period[j])
        period.append(m)
    if all(p.det() in (1, -1) and p == IntMatrix.identity(rank) for p in period):
        period = []
    return Tower(rank, tuple(prefix), tuple(period))


def tensor_towers(towers) -> Tower:
    """Tower of the tensor product: Kronecker products stage by stage."""
    towers = [t for t in towers]
    if not towers:
        raise ValueError("tensor of no towers")
    # drop trivial rank-1 factors that are identity at every stage
    nontrivial = [t for t in towers
                  if not (t.rank == 1 and all(m == IntMatrix.identity(1)
                                              for m in t.prefix + t.period))]
    if not nontrivial:
        return Tower.free(1)
    if len(nontrivial) == 1:
        return nontrivial[0]
    towers = nontrivial
    pl, bl = _common_shape(towers)
    parts = [reshape(t, pl, bl) for t in towers]
    rank = math.prod(t.rank for t in towers)
    prefix = []
    for s in range(pl):
        m = parts[0].prefix[s]
        for t in parts[1:]:
            m = m.kron(t.prefix[s])
        prefix.append(m)
    period = []
    for j in range(bl):
        m = parts[0].period[j]
        for t in parts[1:]:
            m = m.kron(t.period[j])
        period.append(m)
    return Tower(rank, tuple(prefix), tuple(period))


def mod_p_rank(t: Tower, p: int) -> int:
    """Dimension of (limit group)/p over F_p.

    Equals the stable rank mod p of iterated period products; the prefix is
    cofinal-irrelevant.
    """
    q = t.period_product()
    m = q
    for _ in range(t.rank - 1):
        m = m @ q
    # rank of m mod p by elimination
    rows = [[x % p for x in row] for row in m.entries]
    rank = 0
    col = 0
    n = len(rows)
    while rank < n and col < n:
        piv = next((r for r in range(rank, n) if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def stage_matrix_residues(t: Tower, p: int, k: int) -> list[IntMatrix]:
    """All distinct transition matrices from stage 0, reduced mod p^k.

    The sequence M_0, M_1, ... of cumulative products is eventually periodic
    mod p^k; the list covers one full tail cycle, so the union of kernels of
    the listed matrices equals the union over all stages.
    """
    mod = p ** k
    a, b = len(t.prefix), len(t.period)
    out = []
    cur = IntMatrix.identity(t.rank)
    curmod = IntMatrix.from_rows([[x % mod for x in row] for row in cur.entries])
    s = 0
    seen = set()
    unit_period = b == 0 or t.period_product().det() % p != 0
    while True:
        out.append(curmod)
        if s >= a:
            if unit_period:
                # kernels stop changing once maps are invertible mod p
                break
            state = ((s - a) % b, curmod.entries)
            if state in seen:
                break
            seen.add(state)
        nxt = t.stage_matrix(s) @ curmod
        curmod = IntMatrix.from_rows([[x % mod for x in row]
                                      for row in nxt.entries])
        s += 1
    # deduplicate while preserving determinism
    uniq = []
    seen_m = set()
    for m in out:
        if m.entries not in seen_m:
            seen_m.add(m.entries)
            uniq.append(m)
    return uniq

"""Symbolic descriptions of countable abelian groups.

A group is a torsion descriptor plus a torsion-free ("free part")
descriptor.  Free parts are built from free groups, rank-1 groups, finite
towers, completely decomposable multisets of types and direct sums; the
OmegaCopies marker appears only in omega-amplified forms produced by the
comparison engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .fg import TorsionDesc
from .towers import (Tower, TypeClass, rank1_tower_from_supernatural,
                     tower_type, validate_tower)

OMEGA_COPIES = "omega"  # multiplicity marker in CompletelyDecomposable parts


@dataclass(frozen=True)
class FreeOfRank:
    """Z^rank; rank 0 is the trivial group."""

    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")


@dataclass(frozen=True)
class Rank1:
    """A rank-1 torsion-free group presented by a rank-1 tower."""

    tower: Tower

    def __post_init__(self):
        if self.tower.rank != 1:
            raise ValueError("Rank1 requires a rank-1 tower")

    @property
    def type(self) -> TypeClass:
        return tower_type(self.tower)


@dataclass(frozen=True)
class CompletelyDecomposable:
    """Multiset of rank-1 types; multiplicities are positive ints or omega."""

    parts: tuple[tuple[TypeClass, Union[int, str]], ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty completely decomposable descriptor")
        for _, mult in self.parts:
            if mult != OMEGA_COPIES and (not isinstance(mult, int) or mult < 1):
                raise ValueError("multiplicities must be >= 1 or omega")


@dataclass(frozen=True)
class TowerForm:
    """A finite-rank torsion-free group presented by a tower."""

    tower: Tower

    def __post_init__(self):
        defects = validate_tower(self.tower)
        if defects:
            raise ValueError("invalid tower: " + "; ".join(defects))


@dataclass(frozen=True)
class DirectSum:
    parts: tuple["FreePart", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty direct sum")


@dataclass(frozen=True)
class OmegaCopies:
    """Countably many copies of a tower summand (amplified form marker)."""

    tower: Tower


FreePart = Union[FreeOfRank, Rank1, CompletelyDecomposable, TowerForm,
                 DirectSum, OmegaCopies]

# K-group results are the same symbolic shapes
KGroupDesc = FreePart


@dataclass(frozen=True)
class AbGroupDesc:
    """A countable abelian group: torsion descriptor + free part."""

    torsion: TorsionDesc
    free: FreePart

    @staticmethod
    def torsion_free(free: FreePart) -> "AbGroupDesc":
        return AbGroupDesc(TorsionDesc.trivial(), free)

    @staticmethod
    def free_abelian(rank: int) -> "AbGroupDesc":
        return AbGroupDesc.torsion_free(FreeOfRank(rank))


def direct_sum_of(parts) -> FreePart:
    """Flattened direct sum; merges free ranks, drops trivial summands."""
    flat: list[FreePart] = []

    def walk(p: FreePart):
        if isinstance(p, DirectSum):
            for q in p.parts:
                walk(q)
        else:
            flat.append(p)

    for p in parts:
        walk(p)
    free_rank = sum(p.rank for p in flat if isinstance(p, FreeOfRank))
    rest = [p for p in flat if not isinstance(p, FreeOfRank)]
    out: list[FreePart] = []
    if free_rank or not rest:
        out.append(FreeOfRank(free_rank))
    out.extend(rest)
    if len(out) == 1:
        return out[0]
    return DirectSum(tuple(out))


@dataclass(frozen=True)
class Summands:
    """Flattened free part used by the comparison engine."""

    free_rank: int
    types: tuple[TypeClass, ...]          # finite-multiplicity rank-1 summands
    towers: tuple[Tower, ...]             # rank >= 2 summands
    omega_types: frozenset[TypeClass]     # types with multiplicity omega
    omega_towers: tuple[Tower, ...]       # omega-amplified tower summands

    @property
    def has_omega(self) -> bool:
        return bool(self.omega_types) or bool(self.omega_towers)

    def finite_rank(self) -> int:
        return (self.free_rank + len(self.types)
                + sum(t.rank for t in self.towers))


def flatten(f: FreePart) -> Summands:
    free_rank = 0
    types: list[TypeClass] = []
    towers: list[Tower] = []
    omega_types: set[TypeClass] = set()
    omega_towers: list[Tower] = []

    def walk(p: FreePart):
        nonlocal free_rank
        if isinstance(p, FreeOfRank):
            free_rank += p.rank
        elif isinstance(p, Rank1):
            types.append(p.type)
        elif isinstance(p, CompletelyDecomposable):
            for tc, mult in p.parts:
                if mult == OMEGA_COPIES:
                    omega_types.add(tc)
                else:
                    types.extend([tc] * mult)
        elif isinstance(p, TowerForm):
            if p.tower.rank == 1:
                types.append(tower_type(p.tower))
            else:
                towers.append(p.tower)
        elif isinstance(p, DirectSum):
            for q in p.parts:
                walk(q)
        elif isinstance(p, OmegaCopies):
            if p.tower.rank == 1:
                omega_types.add(tower_type(p.tower))
            else:
                omega_towers.append(p.tower)
        else:
            raise TypeError(f"not a free part: {p!r}")

    walk(f)
    return Summands(free_rank, tuple(types), tuple(towers),
                    frozenset(omega_types), tuple(omega_towers))


def summand_towers(f: FreePart) -> list[Tower]:
    """Every summand as a concrete tower (finite-rank descriptors only)."""
    s = flatten(f)
    if s.has_omega:
        raise ValueError("omega-amplified parts have no finite tower form")
    out: list[Tower] = []
    if s.free_rank:
        out.append(Tower.free(s.free_rank))
    out.extend(rank1_tower_from_supernatural(tc.representative)
               for tc in s.types)
    out.extend(s.towers)
    return out


def describe(f: FreePart) -> str:
    """Compact human-readable rendering of a free part / K-group value."""
    if isinstance(f, FreeOfRank):
        return f"free rank {f.rank}" if f.rank else "trivial"
    if isinstance(f, Rank1):
        return f"rank-1 group of {f.type}"
    if isinstance(f, CompletelyDecomposable):
        bits = [f"{tc} x {mult}" for tc, mult in f.parts]
        return "completely decomposable(" + ", ".join(bits) + ")"
    if isinstance(f, TowerForm):
        return f"tower group of rank {f.tower.rank}"
    if isinstance(f, DirectSum):
        return " + ".join(describe(p) for p in f.parts)
    if isinstance(f, OmegaCopies):
        return f"omega copies of rank-{f.tower.rank} tower group"
    raise TypeError(f"not a free part: {f!r}")

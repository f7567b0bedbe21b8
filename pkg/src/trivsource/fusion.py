"""Fusion systems of finite groups and fused Burnside rings.

The fusion system is used only through its conjugacy data: the
partition of the subgroup classes of a Sylow p-subgroup S into
G-conjugacy blocks, with witnessing conjugators.  The fused Burnside
ring is the sublattice of B(S) whose ghost vectors are constant on
blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .burnside import (
    DEFAULT_UNIT_ENUM_CAP,
    BurnsideElement,
    MarkMatrix,
    burnside_units,
    table_of_marks,
)
from .errors import IntegralityViolation
from .permgroup import (
    AbelianStructure,
    FiniteGroup,
    Subgroup,
    SubgroupClasses,
    all_subgroup_classes,
)
from .zlinalg import IntMatrix, hermite_normal_form, kernel_basis


@dataclass(frozen=True)
class FusionSystem:
    """G-conjugacy fusion on the subgroup classes of a Sylow p-subgroup.

    ``blocks`` partitions the S-class indices; two S-classes share a
    block exactly when their representatives are G-conjugate.
    ``block_of[i]`` is the block id of S-class i, and ``g_class_of[i]``
    the index of its G-conjugacy class in the full lattice of G.
    """

    group: FiniteGroup = field(compare=False)
    prime: int
    sylow: Subgroup = field(compare=False)
    s_classes: SubgroupClasses = field(compare=False)
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]
    g_class_of: tuple[int, ...]

    @property
    def s_group(self) -> FiniteGroup:
        return self.sylow.as_group()


def fusion_system(G: FiniteGroup, p: int) -> FusionSystem:
    """The fusion system on the canonical Sylow p-subgroup of G."""
    g_lattice = all_subgroup_classes(G)
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    sylow_class = next(c for c in g_lattice.classes
                       if c.representative.order == target
                       and c.representative.is_p_group(p))
    S = sylow_class.representative
    s_classes = all_subgroup_classes(S.as_group())
    g_class_of = tuple(g_lattice.class_of[c.representative.key()]
                       for c in s_classes.classes)
    block_ids: dict[int, int] = {}
    block_of = []
    for g_index in g_class_of:
        block_of.append(block_ids.setdefault(g_index, len(block_ids)))
    blocks: list[list[int]] = [[] for _ in range(len(block_ids))]
    for i, b in enumerate(block_of):
        blocks[b].append(i)
    return FusionSystem(G, p, S, s_classes,
                        tuple(tuple(b) for b in blocks), tuple(block_of),
                        g_class_of)


@dataclass(frozen=True)
class FusedBurnsideLattice:
    """A lattice basis of the fused subring of B(S)."""

    fusion: FusionSystem = field(compare=False)
    marks: MarkMatrix = field(compare=False)
    basis: tuple[BurnsideElement, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, a: BurnsideElement) -> bool:
        ghost = self.marks.mark(a)
        return all(len({ghost.marks[i] for i in block}) == 1
                   for block in self.fusion.blocks)


def fused_lattice(F: FusionSystem) -> FusedBurnsideLattice:
    """Basis of {a in B(S) : marks of a constant on fused blocks}.

    Computed as the integer kernel of the pairwise mark differences,
    canonicalized by Hermite normal form; the rank always equals the
    number of fused blocks.
    """
    marks = table_of_marks(F.s_group)
    rows = []
    for block in F.blocks:
        base = block[0]
        for other in block[1:]:
            rows.append(tuple(marks.entries[h, other] - marks.entries[h, base]
                              for h in range(marks.size)))
    if rows:
        vectors = kernel_basis(IntMatrix(rows))
    else:
        vectors = [tuple(1 if i == j else 0 for i in range(marks.size))
                   for j in range(marks.size)]
    hnf = hermite_normal_form(IntMatrix(vectors))
    basis = tuple(BurnsideElement(row) for row in hnf.H.rows if any(row))
    if len(basis) != len(F.blocks):  # pragma: no cover - rank is forced
        raise IntegralityViolation("fused lattice rank does not match blocks")
    return FusedBurnsideLattice(F, marks, basis)


@dataclass(frozen=True)
class FusedUnits:
    """The unit group of the fused Burnside ring.

    An elementary abelian 2-group: ``units`` lists every member,
    ``structure.generators`` a minimal generating set.
    """

    lattice: FusedBurnsideLattice = field(compare=False)
    units: tuple[BurnsideElement, ...]
    structure: AbelianStructure


def fused_units(L: FusedBurnsideLattice,
                max_enum: int = DEFAULT_UNIT_ENUM_CAP) -> FusedUnits:
    """Units of B(S) whose ghost vectors are constant on fused blocks."""
    marks = L.marks
    units = [u for u in burnside_units(marks, max_enum) if L.contains(u)]
    # sign vectors form an F2-vector space; extract a basis greedily
    basis_signs: list[tuple[int, ...]] = []
    generators: list[BurnsideElement] = []
    span = {(0,) * marks.size}
    for u in units:
        bits = tuple(0 if m == 1 else 1 for m in marks.mark(u).marks)
        if bits in span:
            continue
        generators.append(u)
        basis_signs.append(bits)
        span |= {tuple(a ^ b for a, b in zip(bits, s)) for s in span}
    structure = AbelianStructure((2,) * len(generators), tuple(generators))
    assert len(units) == 2 ** len(generators)
    return FusedUnits(L, tuple(units), structure)

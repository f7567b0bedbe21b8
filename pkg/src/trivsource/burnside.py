"""The Burnside ring of a finite group.

Virtual G-sets are coefficient vectors over the conjugacy classes of
subgroups; the table of marks embeds them into the ghost ring where
multiplication is componentwise.  Includes unit-group enumeration and
the transfer section of restriction-to-a-Sylow-subgroup that lands in
fusion-stable elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    EnumerationCapExceeded,
    IntegralityViolation,
    NotFusionStable,
)
from .permgroup import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Subgroup,
    SubgroupClasses,
    all_subgroup_classes,
    sylow_subgroup,
)
from .zlinalg import IntMatrix

DEFAULT_UNIT_ENUM_CAP = 22


@dataclass(frozen=True)
class BurnsideElement:
    """Coefficients over the transitive G-sets [G/H], one per class."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        return BurnsideElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        return BurnsideElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement(tuple(-a for a in self.coeffs))

    def scale(self, n: int) -> BurnsideElement:
        return BurnsideElement(tuple(n * a for a in self.coeffs))

    @classmethod
    def basis_vector(cls, size: int, index: int, coefficient: int = 1) -> BurnsideElement:
        return cls(tuple(coefficient if i == index else 0 for i in range(size)))

    def __repr__(self) -> str:
        return f"BurnsideElement({self.coeffs})"


@dataclass(frozen=True)
class GhostVector:
    """Mark values, one per subgroup class."""

    marks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(int(m) for m in self.marks))

    def __mul__(self, other: GhostVector) -> GhostVector:
        return GhostVector(tuple(a * b for a, b in zip(self.marks, other.marks)))


def _cosets(G: FiniteGroup, H: Subgroup) -> list[frozenset]:
    seen: set = set()
    cosets = []
    for g in G.elements:
        if g in seen:
            continue
        coset = frozenset(g * h for h in H.members)
        seen.update(coset)
        cosets.append(coset)
    return cosets


@dataclass(frozen=True)
class MarkMatrix:
    """Table of marks: entry (H, K) counts K-fixed points of G/H.

    Classes are ordered by (subgroup order, canonical key), which makes
    the matrix lower triangular with positive diagonal.
    """

    group: FiniteGroup = field(compare=False)
    classes: SubgroupClasses = field(compare=False)
    entries: IntMatrix

    @property
    def size(self) -> int:
        return len(self.classes)

    def mark(self, a: BurnsideElement) -> GhostVector:
        """The ghost vector of a: linear, multiplicative componentwise."""
        rows = self.entries.rows
        return GhostVector(tuple(
            sum(c * rows[h][k] for h, c in enumerate(a.coeffs))
            for k in range(self.size)))

    def unmark(self, v: GhostVector) -> BurnsideElement | None:
        """Invert the mark map; None when v is not in the mark lattice."""
        rows = self.entries.rows
        n = self.size
        coeffs = [0] * n
        for j in range(n - 1, -1, -1):
            s = v.marks[j] - sum(coeffs[i] * rows[i][j] for i in range(j + 1, n))
            q, r = divmod(s, rows[j][j])
            if r:
                return None
            coeffs[j] = q
        return BurnsideElement(tuple(coeffs))

    def multiply(self, a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
        product = self.unmark(self.mark(a) * self.mark(b))
        if product is None:  # pragma: no cover - the ring is closed
            raise IntegralityViolation("product of marks left the mark lattice")
        return product

    def one(self) -> BurnsideElement:
        """[G/G], the one-point G-set."""
        return BurnsideElement.basis_vector(self.size, self.size - 1)


def table_of_marks(G: FiniteGroup, max_order: int = DEFAULT_ORDER_CAP) -> MarkMatrix:
    """The table of marks of G (cached on the group)."""
    memo = G._memo
    if "table_of_marks" in memo:
        return memo["table_of_marks"]
    classes = all_subgroup_classes(G, max_order)
    rows = []
    for ch in classes.classes:
        cosets = _cosets(G, ch.representative)
        row = []
        for ck in classes.classes:
            if ck.representative.order > ch.representative.order:
                row.append(0)
            else:
                row.append(_fixed_coset_count(cosets, ck.representative.members))
        rows.append(tuple(row))
    result = MarkMatrix(G, classes, IntMatrix(rows))
    memo["table_of_marks"] = result
    return result


def _fixed_coset_count(cosets, K) -> int:
    # K g H = g H as soon as K g0 lies in g0 H for a single representative
    count = 0
    for coset in cosets:
        g0 = next(iter(coset))
        if all(k * g0 in coset for k in K):
            count += 1
    return count


def restrict(G: FiniteGroup, H: Subgroup, a: BurnsideElement) -> BurnsideElement:
    """Restriction along H <= G: decompose each G-orbit into H-orbits."""
    marks_G = table_of_marks(G)
    H_group = H.as_group()
    marks_H = table_of_marks(H_group)
    coeffs = [0] * marks_H.size
    for h_index, c in enumerate(a.coeffs):
        if c == 0:
            continue
        K = marks_G.classes.classes[h_index].representative
        cosets = _cosets(G, K)
        unseen = set(range(len(cosets)))
        positions = {coset: i for i, coset in enumerate(cosets)}
        while unseen:
            i = min(unseen)
            orbit = {i}
            frontier = [cosets[i]]
            while frontier:
                coset = frontier.pop()
                for h in H.members:
                    image = frozenset(h * g for g in coset)
                    j = positions[image]
                    if j not in orbit:
                        orbit.add(j)
                        frontier.append(image)
            unseen -= orbit
            # stabilizer of the orbit representative gK in H is H n gKg^-1
            g0 = min(cosets[i])
            conj = {g0 * k * g0.inverse() for k in K.members}
            stab = H_group.subgroup(h for h in H.members if h in conj)
            coeffs[marks_H.classes.index_of(stab)] += c
    return BurnsideElement(tuple(coeffs))


def burnside_units(M: MarkMatrix, max_enum: int = DEFAULT_UNIT_ENUM_CAP) -> list[BurnsideElement]:
    """All units of B(G): elements whose ghost vector lies in {-1, +1}^c.

    Depth-first sign assignment over the classes in descending subgroup
    order, pruning through the triangular back-substitution as soon as a
    coefficient fails to be integral.
    """
    n = M.size
    if n > max_enum:
        raise EnumerationCapExceeded(
            f"{n} subgroup classes exceed the unit enumeration cap {max_enum}")
    rows = M.entries.rows
    units: list[BurnsideElement] = []

    def descend(j: int, coeffs: list[int]) -> None:
        if j < 0:
            units.append(BurnsideElement(tuple(coeffs)))
            return
        partial = sum(coeffs[i] * rows[i][j] for i in range(j + 1, n))
        for sign in (1, -1):
            q, r = divmod(sign - partial, rows[j][j])
            if r == 0:
                coeffs[j] = q
                descend(j - 1, coeffs)
        coeffs[j] = 0

    descend(n - 1, [0] * n)
    units.sort(key=lambda u: tuple(-m for m in M.mark(u).marks))
    return units


def _ghost_is_fusion_stable(marks_S: MarkMatrix, g_classes: SubgroupClasses,
                            ghost: GhostVector) -> bool:
    by_g_class: dict[int, int] = {}
    for i, cls in enumerate(marks_S.classes.classes):
        g_index = g_classes.class_of[cls.representative.key()]
        if by_g_class.setdefault(g_index, ghost.marks[i]) != ghost.marks[i]:
            return False
    return True


def transfer_tsg(G: FiniteGroup, S: Subgroup, a: BurnsideElement,
                 p: int | None = None) -> BurnsideElement:
    """The section of res^G_S on fusion-stable elements of B(S).

    The image is pinned down by its ghost vector: the mark at H equals
    the mark of a at a subgroup of S that is G-conjugate to a Sylow
    p-subgroup of H.  Integrality of the preimage is guaranteed; its
    failure signals a bug.
    """
    if p is None:
        p = next((q for q in range(2, S.order + 1) if S.order % q == 0), 2)
    marks_S = table_of_marks(S.as_group())
    marks_G = table_of_marks(G)
    g_classes = marks_G.classes
    ghost_a = marks_S.mark(a)
    if not _ghost_is_fusion_stable(marks_S, g_classes, ghost_a):
        raise NotFusionStable("marks are not constant on fusion classes")
    # one S-class per G-class of p-subgroups; marks of a agree within a block
    s_class_for_g_class: dict[int, int] = {}
    for i, cls in enumerate(marks_S.classes.classes):
        g_index = g_classes.class_of[cls.representative.key()]
        s_class_for_g_class.setdefault(g_index, i)
    marks = []
    for ch in g_classes.classes:
        P_H = sylow_subgroup(G, ch.representative, p)
        s_index = s_class_for_g_class[g_classes.class_of[P_H.key()]]
        marks.append(ghost_a.marks[s_index])
    result = marks_G.unmark(GhostVector(tuple(marks)))
    if result is None:
        raise IntegralityViolation("transfer ghost vector left the mark lattice")
    return result

"""Homomorphisms to roots of unity and coherent tuples of them.

A homomorphism N_G(P)/P -> F^x lands in the p'-roots of unity, so it is
encoded as a map to Z/e where e is the p'-part of the exponent of G
(the value is zeta_e^exponent).  The group of coherent tuples (phi_P),
one hom per class of p-subgroups, subject to

    phi_P(x P) = phi_{P<x_p>}(x P<x_p>)   for all x in N_G(P),

is solved as one integer kernel computation modulo mixed cyclic orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import SplitMismatch
from .permgroup import (
    AbelianStructure,
    FiniteGroup,
    Permutation,
    QuotientGroup,
    exponent_pprime,
    generated_subgroup,
    p_class_context,
    p_part,
    pprime_abelianization,
)
from .zlinalg import IntMatrix, kernel_mod_orders


@dataclass(frozen=True)
class HomToUnits:
    """A homomorphism from a quotient group into mu_e, as exponents.

    ``values[i]`` is the exponent in Z/e of the value on coset i; the
    identity coset maps to 0 and p-element cosets map to 0 because mu_e
    has no p-torsion.
    """

    domain: QuotientGroup = field(compare=False)
    exponent: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "values", tuple(v % self.exponent for v in self.values))

    def __call__(self, coset: int) -> int:
        return self.values[coset]

    def value_at(self, g: Permutation) -> int:
        return self.values[self.domain.canon[g]]

    def __mul__(self, other: HomToUnits) -> HomToUnits:
        return HomToUnits(self.domain, self.exponent,
                          tuple(a + b for a, b in zip(self.values, other.values)))

    def inverse(self) -> HomToUnits:
        return HomToUnits(self.domain, self.exponent,
                          tuple(-v for v in self.values))

    def is_trivial(self) -> bool:
        return not any(self.values)

    def is_homomorphism(self) -> bool:
        table = self.domain.mul_table
        e = self.exponent
        v = self.values
        return all((v[table[i][j]] - v[i] - v[j]) % e == 0
                   for i in range(self.domain.order)
                   for j in range(self.domain.order))

    @classmethod
    def trivial(cls, domain: QuotientGroup, exponent: int) -> HomToUnits:
        return cls(domain, exponent, (0,) * domain.order)


@dataclass(frozen=True)
class HomGroup:
    """Hom(Q, mu_e) with explicit generators realizing each factor."""

    domain: QuotientGroup = field(compare=False)
    exponent: int
    structure: AbelianStructure
    generators: tuple[HomToUnits, ...]

    @property
    def order(self) -> int:
        return self.structure.order

    def members(self) -> list[HomToUnits]:
        homs = [HomToUnits.trivial(self.domain, self.exponent)]
        for d, g in zip(self.structure.invariant_factors, self.generators):
            homs = [h * p for h in homs
                    for p in _powers(g, d)]
        return homs


def _powers(g: HomToUnits, d: int) -> list[HomToUnits]:
    out = [HomToUnits.trivial(g.domain, g.exponent)]
    for _ in range(d - 1):
        out.append(out[-1] * g)
    return out


def hom_group(Q: QuotientGroup, p: int, e: int) -> HomGroup:
    """Hom(Q, mu_e), computed through the p'-abelianization of Q."""
    ab = pprime_abelianization(Q, p)
    factors = []
    generators = []
    for axis, d in enumerate(ab.structure.invariant_factors):
        g = math.gcd(d, e)
        if g == 1:
            continue
        # the axis coordinate of the discrete log, scaled into Z/e
        step = e // g
        values = tuple((ab.dlog[i][axis] % g) * step for i in range(Q.order))
        factors.append(g)
        generators.append(HomToUnits(Q, e, values))
    return HomGroup(Q, e, AbelianStructure(tuple(factors), tuple(generators)),
                    tuple(generators))


@dataclass(frozen=True)
class CoherentHomTuple:
    """One homomorphism per class of p-subgroups, coherently glued."""

    system: "CoherentSystem" = field(compare=False)
    components: tuple[HomToUnits, ...]

    def component(self, rep_index: int) -> HomToUnits:
        return self.components[rep_index]

    def __mul__(self, other: CoherentHomTuple) -> CoherentHomTuple:
        return CoherentHomTuple(self.system, tuple(
            a * b for a, b in zip(self.components, other.components)))

    def inverse(self) -> CoherentHomTuple:
        return CoherentHomTuple(self.system,
                                tuple(c.inverse() for c in self.components))

    def is_trivial(self) -> bool:
        return all(c.is_trivial() for c in self.components)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.values for c in self.components)


class CoherentSystem:
    """The linear system behind the coherent-tuple group of (G, p).

    Unknowns are the generator exponents of Hom(N_G(P)/P, mu_e), one
    block per class representative P; one equation per (P, x) with
    x in N_G(P) and x_p outside P, transported to class representatives
    by stored conjugators.
    """

    def __init__(self, G: FiniteGroup, p: int, e: int | None = None):
        self.group = G
        self.prime = p
        self.exponent = exponent_pprime(G, p) if e is None else e
        self.context = p_class_context(G, p)
        self.classes = self.context.classes
        self.reps = self.context.representatives
        self.normalizers = self.context.normalizers
        self.quotients = self.context.quotients
        self.hom_groups = tuple(hom_group(Q, p, self.exponent)
                                for Q in self.quotients)
        # column layout: one unknown per hom-group generator
        self.columns = []  # (rep index, generator index, order)
        for i, hg in enumerate(self.hom_groups):
            for k, d in enumerate(hg.structure.invariant_factors):
                self.columns.append((i, k, d))
        self.orders = tuple(d for _, _, d in self.columns)
        self._column_index = {(i, k): c for c, (i, k, _) in enumerate(self.columns)}
        self.equations = self._equations()

    def _transport(self, P_index: int, x: Permutation) -> tuple[int, Permutation]:
        """Class index and conjugated element for Q = P<x_p>."""
        xp, _ = p_part(x, self.prime)
        P = self.reps[P_index]
        Q = generated_subgroup(self.group, tuple(P.members) + (xp,))
        q_index, g = self.context.transport(Q)
        return q_index, g * x * g.inverse()

    def _equations(self) -> tuple[tuple[int, ...], ...]:
        rows = set()
        ncols = len(self.columns)
        e = self.exponent
        for i, P in enumerate(self.reps):
            pset = P.member_set
            for x in self.normalizers[i].members:
                xp, _ = p_part(x, self.prime)
                if xp in pset:
                    continue  # Q = P, the condition is vacuous
                q_index, y = self._transport(i, x)
                row = [0] * ncols
                for k, gen in enumerate(self.hom_groups[i].generators):
                    row[self._column_index[(i, k)]] += gen.value_at(x)
                for k, gen in enumerate(self.hom_groups[q_index].generators):
                    row[self._column_index[(q_index, k)]] -= gen.value_at(y)
                rows.add(tuple(v % e for v in row))
        rows.discard((0,) * ncols)
        return tuple(sorted(rows))

    def tuple_from_coordinates(self, coords) -> CoherentHomTuple:
        components = []
        for i, hg in enumerate(self.hom_groups):
            h = HomToUnits.trivial(self.quotients[i], self.exponent)
            for k, gen in enumerate(hg.generators):
                t = coords[self._column_index[(i, k)]]
                if t:
                    h = HomToUnits(h.domain, h.exponent,
                                   tuple(v + t * w for v, w in zip(h.values, gen.values)))
            components.append(h)
        return CoherentHomTuple(self, tuple(components))

    def violations(self, tup: CoherentHomTuple) -> list[tuple[int, Permutation]]:
        """Coherence failures of a tuple, including the vacuous cases."""
        bad = []
        for i, P in enumerate(self.reps):
            for x in self.normalizers[i].members:
                q_index, y = self._transport(i, x)
                lhs = tup.components[i].value_at(x)
                rhs = tup.components[q_index].value_at(y)
                if (lhs - rhs) % self.exponent:
                    bad.append((i, x))
        return bad


@dataclass(frozen=True)
class CoherentTupleGroup:
    """The solved group of coherent tuples with explicit generators."""

    system: CoherentSystem = field(compare=False)
    structure: AbelianStructure
    generators: tuple[CoherentHomTuple, ...]

    @property
    def order(self) -> int:
        return self.structure.order

    def members(self) -> list[CoherentHomTuple]:
        out = [self.identity()]
        for d, g in zip(self.structure.invariant_factors, self.generators):
            powers = [self.identity()]
            for _ in range(d - 1):
                powers.append(powers[-1] * g)
            out = [a * b for a in out for b in powers]
        return out

    def identity(self) -> CoherentHomTuple:
        return self.system.tuple_from_coordinates((0,) * len(self.system.columns))


def coherent_tuple_group(G: FiniteGroup, p: int) -> CoherentTupleGroup:
    """The group of coherent G-stable tuples of homs to mu_e."""
    system = CoherentSystem(G, p)
    structure, generators = _solve(system)
    return CoherentTupleGroup(system, structure, generators)


def _solve(system: CoherentSystem, extra=()):
    """Solve the coherence equations, optionally with extra rows.

    ``extra`` is a list of (row, modulus) pairs appended to the system.
    """
    rows = list(system.equations) + [row for row, _ in extra]
    moduli = [system.exponent] * len(system.equations) + [m for _, m in extra]
    kern = kernel_mod_orders(IntMatrix(rows) if rows else IntMatrix(()),
                             moduli, system.orders)
    generators = tuple(system.tuple_from_coordinates(vec)
                       for vec in kern.structure.generators)
    structure = AbelianStructure(kern.structure.invariant_factors, generators)
    return structure, generators


@dataclass(frozen=True)
class CoherentSplit:
    """Coherent tuples split as global homs times a reduced factor.

    The first factor is Hom(G, F^x) embedded by restriction, the second
    the kernel of evaluation at the trivial subgroup; its members are
    trivial on P C_G(P)/P for every P.
    """

    hom_part: CoherentTupleGroup
    reduced_part: CoherentTupleGroup


def split_off_global_homs(G: FiniteGroup, p: int,
                          coherent: CoherentTupleGroup) -> CoherentSplit:
    """Factor the coherent group through evaluation at P = 1."""
    system = coherent.system
    # the trivial subgroup is always class 0; its quotient is G itself
    hom_G = system.hom_groups[0]
    embedded = []
    for phi in hom_G.generators:
        components = []
        for i, Q in enumerate(system.quotients):
            values = tuple(phi.value_at(rep) for rep in Q.coset_reps)
            components.append(HomToUnits(Q, system.exponent, values))
        embedded.append(CoherentHomTuple(system, tuple(components)))
    hom_structure = AbelianStructure(hom_G.structure.invariant_factors,
                                     tuple(embedded))
    hom_part = CoherentTupleGroup(system, hom_structure, tuple(embedded))
    # reduced part: kill the P = 1 coordinates
    extra = []
    ncols = len(system.columns)
    for c, (i, _, d) in enumerate(system.columns):
        if i == 0:
            row = tuple(1 if j == c else 0 for j in range(ncols))
            extra.append((row, d))
    red_structure, red_generators = _solve(system, extra)
    reduced_part = CoherentTupleGroup(system, red_structure, red_generators)
    if hom_part.order * reduced_part.order != coherent.order:
        raise SplitMismatch(
            f"{hom_part.order} x {reduced_part.order} != {coherent.order}")
    return CoherentSplit(hom_part, reduced_part)

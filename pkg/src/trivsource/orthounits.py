"""The orthogonal unit group of the trivial source ring.

Assembled as a direct product of two factors: units of the fused
Burnside ring, embedded through the transfer section and the
linearization, and the group of coherent tuples of homomorphisms to
roots of unity.  Both factors are reported through their species
tuples, and every emitted generator is verified against the
multiplicativity criterion and the u * dual(u) = 1 orthogonality test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .burnside import DEFAULT_UNIT_ENUM_CAP, BurnsideElement, transfer_tsg
from .coherent import CoherentHomTuple, CoherentTupleGroup, coherent_tuple_group
from .cyclotomic import CyclotomicInt
from .errors import NotRootOfUnity
from .fusion import FusionSystem, fused_lattice, fused_units, fusion_system
from .permgroup import (
    AbelianStructure,
    FiniteGroup,
    generated_subgroup,
    p_part,
)
from .species import (
    BetaTuple,
    ClassFunction,
    PairsTpG,
    SpeciesTuple,
    default_conductor,
    pairs_tpg,
    species_of_gset,
)


@dataclass(frozen=True)
class YoshidaResult:
    """Outcome of the species multiplicativity criterion."""

    passed: bool
    witness: tuple[int, int, int] | None = None  # (class index, coset, coset)


def yoshida_check(alpha: SpeciesTuple) -> YoshidaResult:
    """Does a root-of-unity tuple come from an orthogonal unit?

    For every class of p-subgroups P the map
    x P -> alpha_(Q, xQ) * alpha_(P, 1P), with Q = P<x_p>, must be a
    homomorphism on N_G(P)/P.  Returns the first violating triple.
    """
    pairs = alpha.pairs
    ctx = pairs.context
    G, p = ctx.group, ctx.prime
    for v in alpha.values:
        if v.root_of_unity_log() is None:
            raise NotRootOfUnity(f"{v!r} is not a power of the ambient root of unity")
    for i, Q in enumerate(ctx.quotients):
        eps = alpha.values[pairs.position(i, 0)]
        psi = []
        for j in range(Q.order):
            x = Q.coset_reps[j]
            xp, _ = p_part(x, p)
            K = generated_subgroup(G, tuple(ctx.representatives[i].members) + (xp,))
            q_index, g = ctx.transport(K)
            Qq = ctx.quotients[q_index]
            c = Qq.class_index_of(Qq.canon[g * x * g.inverse()])
            psi.append(alpha.values[pairs.position(q_index, c)] * eps)
        for j in range(Q.order):
            for k in range(Q.order):
                if psi[Q.mul_table[j][k]] != psi[j] * psi[k]:
                    return YoshidaResult(False, (i, j, k))
    return YoshidaResult(True)


def coherent_species(gen: CoherentHomTuple, pairs: PairsTpG,
                     conductor: int) -> SpeciesTuple:
    """Species of a coherent tuple: phi_P evaluated at sP.

    Exponents live in Z/e and the conductor is 2e, so zeta_e = zeta^2.
    """
    ctx = pairs.context
    values = []
    for k, (i, _) in enumerate(pairs.pairs):
        x = pairs.coset_representative(k)
        t = gen.components[i].value_at(x)
        values.append(CyclotomicInt.root_of_unity(conductor, 2 * t))
    return SpeciesTuple(pairs, tuple(values))


def coherent_class_functions(gen: CoherentHomTuple, conductor: int) -> BetaTuple:
    """The class-function tuple of a coherent hom tuple (degree-one values)."""
    system = gen.system
    components = []
    for i, Q in enumerate(system.quotients):
        values = tuple(
            CyclotomicInt.root_of_unity(conductor, 2 * gen.components[i](rep))
            for rep, _ in Q.conjugacy_classes())
        components.append(ClassFunction(Q, values))
    return BetaTuple(system.context, tuple(components))


@dataclass(frozen=True)
class TransferredUnit:
    """A fused Burnside unit with its image in B(G) and its species."""

    unit: BurnsideElement
    transferred: BurnsideElement
    species: SpeciesTuple


@dataclass(frozen=True)
class CoherentGenerator:
    tuple: CoherentHomTuple
    species: SpeciesTuple


@dataclass(frozen=True)
class OrthogonalUnitGroupReport:
    """The full description of the orthogonal unit group.

    ``total_order`` is |fused units| times the order of the coherent
    factor; the two factors intersect trivially.
    """

    group: FiniteGroup = field(compare=False)
    prime: int
    exponent: int
    conductor: int
    fusion: FusionSystem = field(compare=False)
    pairs: PairsTpG = field(compare=False)
    bf_units: tuple[TransferredUnit, ...]
    bf_structure: AbelianStructure
    coherent: CoherentTupleGroup
    coherent_generators: tuple[CoherentGenerator, ...]
    total_order: int

    def generator_species(self) -> list[SpeciesTuple]:
        gens = [t.species for t, u in zip(self.bf_units, self.bf_structure.generators or ())]
        return gens

    def span_of_species(self) -> set[SpeciesTuple]:
        """All species tuples of the group generated by both factors."""
        generators = [u.species for u in self.bf_units]
        generators += [g.species for g in self.coherent_generators]
        seen = {SpeciesTuple.all_ones(self.pairs, self.conductor)}
        frontier = list(seen)
        while frontier:
            t = frontier.pop()
            for g in generators:
                prod = t * g
                if prod not in seen:
                    seen.add(prod)
                    frontier.append(prod)
        return seen


def orthogonal_unit_group(G: FiniteGroup, p: int,
                          max_enum: int = DEFAULT_UNIT_ENUM_CAP) -> OrthogonalUnitGroupReport:
    """Compute the orthogonal unit group of the trivial source ring.

    First factor: units of the fused Burnside ring, pushed to B(G) by
    the transfer section (their species are marks, hence +-1).  Second
    factor: the coherent tuples of homs into the p'-roots of unity.
    """
    e = None
    F = fusion_system(G, p)
    L = fused_lattice(F)
    U = fused_units(L, max_enum)
    pairs = pairs_tpg(G, p)
    m = default_conductor(G, p)
    bf_units = []
    for u in U.units:
        t = transfer_tsg(G, F.sylow, u, p)
        species = species_of_gset(G, p, t, pairs, m)
        bf_units.append(TransferredUnit(u, t, species))
    coherent = coherent_tuple_group(G, p)
    e = coherent.system.exponent
    assert m == 2 * e
    coherent_generators = tuple(
        CoherentGenerator(gen, coherent_species(gen, pairs, m))
        for gen in coherent.generators)
    for entry in bf_units:
        assert yoshida_check(entry.species).passed, "unit species failed the criterion"
        assert (entry.species * entry.species.conjugate()).is_all_ones()
    for gen in coherent_generators:
        assert yoshida_check(gen.species).passed, "coherent species failed the criterion"
        assert (gen.species * gen.species.conjugate()).is_all_ones()
    total = len(bf_units) * coherent.order
    return OrthogonalUnitGroupReport(
        G, p, e, m, F, pairs, tuple(bf_units), U.structure,
        coherent, coherent_generators, total)

"""Class-function tuples and species values of virtual permutation modules.

A virtual G-set a is sent, for every class of p-subgroups P, to the
permutation character of N_G(P)/P acting on the P-fixed points: the
value at a coset x P counts points fixed by both P and x, which is the
mark of a at the class of <P, x>.  Species values are the same counts
indexed by pairs (P, sP) with sP of order prime to p.  The coherence
checker compares transported values across P < P<x_p> and treats
missing components as zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .burnside import BurnsideElement, table_of_marks
from .cyclotomic import CyclotomicInt
from .errors import NotDownwardClosed
from .permgroup import (
    FiniteGroup,
    PClassContext,
    Permutation,
    QuotientGroup,
    exponent_pprime,
    generated_subgroup,
    p_class_context,
    p_part,
)


def default_conductor(G: FiniteGroup, p: int) -> int:
    """2 * exp(G)_{p'}: one even conductor holding signs and all values."""
    return 2 * exponent_pprime(G, p)


@dataclass(frozen=True)
class ClassFunction:
    """A cyclotomic-valued class function on a quotient group."""

    domain: QuotientGroup = field(compare=False)
    values: tuple[CyclotomicInt, ...]  # one per conjugacy class

    def value_at_class(self, class_index: int) -> CyclotomicInt:
        return self.values[class_index]

    def value_at_coset(self, coset: int) -> CyclotomicInt:
        return self.values[self.domain.class_index_of(coset)]

    def value_at(self, g: Permutation) -> CyclotomicInt:
        return self.value_at_coset(self.domain.canon[g])

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.domain, tuple(v.conjugate() for v in self.values))

    @property
    def conductor(self) -> int:
        return self.values[0].conductor

    @classmethod
    def zero(cls, domain: QuotientGroup, conductor: int) -> ClassFunction:
        return cls(domain, (CyclotomicInt.zero(conductor),) * len(domain.conjugacy_classes()))

    def is_sign_times_character(self) -> bool:
        """Value at 1 is +-1 and the sign-normalized function is a hom."""
        eps = self.value_at_coset(0)
        if not eps.is_integer() or eps.as_integer() not in (1, -1):
            return False
        if any(v.root_of_unity_log() is None and (-v).root_of_unity_log() is None
               for v in self.values):
            return False
        table = self.domain.mul_table
        n = self.domain.order
        for i in range(n):
            for j in range(n):
                lhs = self.value_at_coset(table[i][j]) * eps
                if lhs != self.value_at_coset(i) * self.value_at_coset(j):
                    return False
        return True


@dataclass(frozen=True)
class BetaTuple:
    """One class function per class of p-subgroups."""

    context: PClassContext = field(compare=False)
    components: tuple[ClassFunction, ...]

    def component(self, rep_index: int) -> ClassFunction:
        return self.components[rep_index]

    def conjugate(self) -> BetaTuple:
        return BetaTuple(self.context, tuple(c.conjugate() for c in self.components))


def beta_component_value(G: FiniteGroup, a: BurnsideElement,
                         P_members, x: Permutation) -> int:
    """Points of the virtual G-set a fixed by P and by x together.

    Equals the mark of a at the class of <P, x>; P need not be a class
    representative and x only needs to normalize P.
    """
    marks = table_of_marks(G)
    K = generated_subgroup(G, tuple(P_members) + (x,))
    k = marks.classes.class_of[K.key()]
    return sum(c * marks.entries[h, k] for h, c in enumerate(a.coeffs))


def beta_of_gset(G: FiniteGroup, p: int, a: BurnsideElement,
                 conductor: int | None = None) -> BetaTuple:
    """The tuple of fixed-point characters of a virtual G-set.

    Component at P: the class function on N_G(P)/P sending x P to the
    number of points of the P-fixed subset that x fixes (extended
    linearly; always a rational integer).
    """
    ctx = p_class_context(G, p)
    m = default_conductor(G, p) if conductor is None else conductor
    components = []
    for i, P in enumerate(ctx.representatives):
        Q = ctx.quotients[i]
        values = tuple(
            CyclotomicInt.from_int(
                m, beta_component_value(G, a, P.members, Q.coset_reps[rep]))
            for rep, _ in Q.conjugacy_classes())
        components.append(ClassFunction(Q, values))
    return BetaTuple(ctx, tuple(components))


@dataclass(frozen=True)
class CoherenceViolation:
    rep_index: int
    element: Permutation
    lhs: CyclotomicInt
    rhs: CyclotomicInt


@dataclass(frozen=True)
class CoherenceReport:
    violations: tuple[CoherenceViolation, ...]

    @property
    def coherent(self) -> bool:
        return not self.violations


def _is_subconjugate(ctx: PClassContext, j: int, i: int) -> bool:
    """Does class j have a member inside the representative of class i?"""
    rep = ctx.representatives[i].member_set
    return any(K.member_set <= rep for K in ctx.classes.classes[j].members)


def check_condition_c(G: FiniteGroup, p: int, components: dict,
                      vertex_set=None, conductor: int | None = None) -> CoherenceReport:
    """Check the coherence condition of a partial class-function tuple.

    ``components`` maps class indices of p-subgroups to ClassFunctions
    on N_G(P)/P; missing indices are the zero function.  A vertex set,
    when given, must be closed under passing to subgroups; components
    outside it are forced to zero.
    """
    ctx = p_class_context(G, p)
    m = default_conductor(G, p) if conductor is None else conductor
    n = len(ctx)
    if vertex_set is not None:
        vertex_set = frozenset(vertex_set)
        for i in vertex_set:
            for j in range(n):
                if _is_subconjugate(ctx, j, i) and j not in vertex_set:
                    raise NotDownwardClosed(
                        f"class {j} lies under class {i} but is missing")
    scope = range(n) if vertex_set is None else sorted(vertex_set)
    zero = {i: ClassFunction.zero(ctx.quotients[i], m) for i in range(n)}

    def component(i: int) -> ClassFunction:
        if vertex_set is not None and i not in vertex_set:
            return zero[i]
        return components.get(i, zero[i])

    violations = []
    for i in scope:
        chi = component(i)
        P = ctx.representatives[i]
        for x in ctx.normalizers[i].members:
            xp, _ = p_part(x, p)
            Q = generated_subgroup(G, tuple(P.members) + (xp,))
            q_index, g = ctx.transport(Q)
            lhs = chi.value_at(x)
            rhs = component(q_index).value_at(g * x * g.inverse())
            if lhs != rhs:
                violations.append(CoherenceViolation(i, x, lhs, rhs))
    return CoherenceReport(tuple(violations))


@dataclass(frozen=True)
class PairsTpG:
    """Orbit representatives of pairs (P, sP), sP of p'-order.

    Pairs are (class index of P, conjugacy-class index of sP in
    N_G(P)/P), ordered with the identity pair (P, 1P) first for each P.
    """

    context: PClassContext = field(compare=False)
    pairs: tuple[tuple[int, int], ...]
    index: dict = field(compare=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def position(self, rep_index: int, class_index: int) -> int:
        return self.index[(rep_index, class_index)]

    def coset_representative(self, pair_index: int) -> Permutation:
        i, c = self.pairs[pair_index]
        Q = self.context.quotients[i]
        return Q.coset_reps[Q.conjugacy_classes()[c][0]]


def pairs_tpg(G: FiniteGroup, p: int) -> PairsTpG:
    """The pair set indexing the species of the trivial source ring."""
    ctx = p_class_context(G, p)
    pairs = []
    for i, Q in enumerate(ctx.quotients):
        for c, (rep, _) in enumerate(Q.conjugacy_classes()):
            if Q.element_order(rep) % p != 0:
                pairs.append((i, c))
    index = {pair: k for k, pair in enumerate(pairs)}
    return PairsTpG(ctx, tuple(pairs), index)


@dataclass(frozen=True)
class SpeciesTuple:
    """Values at the pairs (P, sP), in a fixed cyclotomic conductor."""

    pairs: PairsTpG = field(compare=False)
    values: tuple[CyclotomicInt, ...]

    def __mul__(self, other: SpeciesTuple) -> SpeciesTuple:
        return SpeciesTuple(self.pairs,
                            tuple(a * b for a, b in zip(self.values, other.values)))

    def conjugate(self) -> SpeciesTuple:
        return SpeciesTuple(self.pairs, tuple(v.conjugate() for v in self.values))

    def is_all_ones(self) -> bool:
        one = CyclotomicInt.one(self.values[0].conductor)
        return all(v == one for v in self.values)

    @property
    def conductor(self) -> int:
        return self.values[0].conductor

    @classmethod
    def all_ones(cls, pairs: PairsTpG, conductor: int) -> SpeciesTuple:
        return cls(pairs, (CyclotomicInt.one(conductor),) * len(pairs))


def species_of_gset(G: FiniteGroup, p: int, a: BurnsideElement,
                    pairs: PairsTpG, conductor: int | None = None) -> SpeciesTuple:
    """Species values of a virtual G-set: fixed points under <P, x>."""
    m = default_conductor(G, p) if conductor is None else conductor
    ctx = pairs.context
    values = []
    for k in range(len(pairs)):
        i, _ = pairs.pairs[k]
        x = pairs.coset_representative(k)
        count = beta_component_value(G, a, ctx.representatives[i].members, x)
        values.append(CyclotomicInt.from_int(m, count))
    return SpeciesTuple(pairs, tuple(values))


def dual(t):
    """Componentwise zeta -> zeta^-1; an involution fixing integers."""
    return t.conjugate()

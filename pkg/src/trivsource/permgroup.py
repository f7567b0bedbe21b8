"""Exact permutation-group machinery.

Groups are small (order capped, 2000 by default) and fully enumerated;
every question is answered by exact combinatorics, never by floating
point or by randomized methods.  All types are immutable after
construction and all operations are pure functions, so concurrent read
access is safe.  Every list of classes, cosets or subgroups is returned
in a canonical deterministic order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import InvalidPermutation, NotNormal, OrderCapExceeded

DEFAULT_ORDER_CAP = 2000
LATTICE_WARN_ORDER = 500


class Permutation:
    """A permutation of {0, ..., n-1}, stored as its tuple of images.

    Composition is by left action: ``(a * b)(i) == a(b(i))``.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for i in images:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise InvalidPermutation(f"not a bijection on 0..{n - 1}: {images}")
            seen[i] = True
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + tuple(cycle[:1])):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(self.images[j] for j in other.images)

    def inverse(self) -> Permutation:
        images = [0] * len(self.images)
        for i, j in enumerate(self.images):
            images[j] = i
        return Permutation(images)

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugated(self, g: Permutation) -> Permutation:
        """g * self * g^-1."""
        return g * self * g.inverse()

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.images else 1

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        result = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            result.append(tuple(cycle))
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __le__(self, other: Permutation) -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.images})"

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)


class FiniteGroup:
    """A permutation group with every element enumerated and sorted."""

    __slots__ = ("degree", "generators", "elements", "order", "_positions", "_memo")

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.order = len(self.elements)
        self._positions = {g: i for i, g in enumerate(self.elements)}
        self._memo: dict = {}

    @property
    def identity(self) -> Permutation:
        return self.elements[0] if self.elements[0].is_identity() else Permutation.identity(self.degree)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._positions

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup of order {self.order} on {self.degree} points>"

    def subgroup(self, members) -> Subgroup:
        members = tuple(sorted(set(members)))
        for g in members:
            if g not in self:
                raise ValueError("subgroup member outside the parent group")
        if not _is_closed(members):
            raise ValueError("member set is not closed under the group operation")
        return Subgroup(self, members)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (self.identity,))

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, self.elements)


def _close_under_products(degree: int, seed, max_order: int | None) -> list[Permutation]:
    identity = Permutation.identity(degree)
    found = {identity}
    frontier = [identity]
    gens = [g for g in seed if not g.is_identity()]
    for g in gens:
        if g not in found:
            found.add(g)
            frontier.append(g)
    while frontier:
        h = frontier.pop()
        for g in gens:
            for prod in (h * g, g * h):
                if prod not in found:
                    if max_order is not None and len(found) >= max_order:
                        raise OrderCapExceeded(
                            f"closure exceeds the order cap {max_order}")
                    found.add(prod)
                    frontier.append(prod)
    return sorted(found)


def group_from_generators(degree: int, gens, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a generator list under products; deterministic element order."""
    gens = tuple(gens if isinstance(gens, (list, tuple)) else list(gens))
    for g in gens:
        if g.degree != degree:
            raise InvalidPermutation(f"generator degree {g.degree} != {degree}")
    elements = _close_under_products(degree, gens, max_order)
    return FiniteGroup(degree, gens, elements)


def _is_closed(members: tuple[Permutation, ...]) -> bool:
    memberset = frozenset(members)
    return all(a * b in memberset for a in members for b in members)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its full, canonically sorted member list."""

    parent: FiniteGroup = field(compare=False)
    members: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset[Permutation]:
        return frozenset(self.members)

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Canonical key: the sorted tuple of image tuples."""
        return tuple(g.images for g in self.members)

    def __contains__(self, g: Permutation) -> bool:
        return g in self.member_set

    def __le__(self, other: Subgroup) -> bool:
        return self.member_set <= other.member_set

    def conjugate(self, g: Permutation) -> Subgroup:
        return Subgroup(self.parent, tuple(g * h * g.inverse() for h in self.members))

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group (same degree, cached)."""
        memo = self.parent._memo.setdefault("as_group", {})
        grp = memo.get(self.key())
        if grp is None:
            grp = FiniteGroup(self.parent.degree, _small_generating_set(self.members), self.members)
            memo[self.key()] = grp
        return grp

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order}>"


def _small_generating_set(members) -> tuple[Permutation, ...]:
    members = sorted(members)
    degree = members[0].degree if members else 0
    gens: list[Permutation] = []
    have = {Permutation.identity(degree)}
    for g in members:
        if g not in have:
            gens.append(g)
            have = set(_close_under_products(degree, gens, None))
            if len(have) == len(members):
                break
    return tuple(gens)


def generated_subgroup(G: FiniteGroup, gens) -> Subgroup:
    """The subgroup of G generated by the given elements."""
    elements = _close_under_products(G.degree, tuple(gens), None)
    return Subgroup(G, tuple(elements))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[Permutation, tuple[Permutation, ...]]]:
    """Classes as (representative, members), ordered by (size, representative)."""
    memo = G._memo
    if "conjugacy_classes" not in memo:
        remaining = set(G.elements)
        classes = []
        while remaining:
            x = min(remaining)
            orbit = {g * x * g.inverse() for g in G.elements}
            remaining -= orbit
            members = tuple(sorted(orbit))
            classes.append((members[0], members))
        classes.sort(key=lambda c: (len(c[1]), c[0]))
        memo["conjugacy_classes"] = classes
    return memo["conjugacy_classes"]


@dataclass(frozen=True)
class SubgroupClass:
    representative: Subgroup
    members: tuple[Subgroup, ...]
    index: int


@dataclass(frozen=True)
class SubgroupClasses:
    """Conjugacy classes of subgroups, with transport data.

    ``conj_to_rep[K.key()]`` is a g with g K g^-1 = representative.
    """

    parent: FiniteGroup = field(compare=False)
    classes: tuple[SubgroupClass, ...]
    class_of: dict = field(compare=False)
    conj_to_rep: dict = field(compare=False)

    def __len__(self) -> int:
        return len(self.classes)

    def index_of(self, H: Subgroup) -> int:
        return self.class_of[H.key()]

    def representative(self, i: int) -> Subgroup:
        return self.classes[i].representative


def _all_subgroups(G: FiniteGroup) -> dict:
    """All subgroups as key -> Subgroup, by joining cyclic subgroups.

    Every subgroup is a join of cyclic ones, so closing the cyclic
    subgroups under "join with one more cyclic subgroup" reaches all of
    them (no solvability assumption).
    """
    identity = G.identity
    cyclic: dict = {}
    for g in G.elements:
        members = []
        h = identity
        while True:
            members.append(h)
            h = h * g
            if h == identity:
                break
        H = Subgroup(G, tuple(members))
        cyclic.setdefault(H.key(), H)
    found = dict(cyclic)
    trivial = G.trivial_subgroup()
    found.setdefault(trivial.key(), trivial)
    work = list(found.values())
    cyclic_list = list(cyclic.values())
    while work:
        H = work.pop()
        for C in cyclic_list:
            if C.member_set <= H.member_set:
                continue
            join_members = _close_under_products(
                G.degree, tuple(H.members) + tuple(C.members), None)
            J = Subgroup(G, tuple(join_members))
            if J.key() not in found:
                found[J.key()] = J
                work.append(J)
    return found


def all_subgroup_classes(G: FiniteGroup, max_order: int = DEFAULT_ORDER_CAP) -> SubgroupClasses:
    """The full subgroup lattice of G up to conjugacy.

    Classes are ordered by (subgroup order, canonical key); every class
    member carries a conjugator onto its class representative.
    """
    memo = G._memo
    if "subgroup_classes" in memo:
        return memo["subgroup_classes"]
    if G.order > max_order:
        raise OrderCapExceeded(f"group order {G.order} exceeds cap {max_order}")
    if G.order > LATTICE_WARN_ORDER:
        warnings.warn(
            f"subgroup lattice of a group of order {G.order} may be very slow",
            stacklevel=2)
    subgroups = _all_subgroups(G)
    unassigned = set(subgroups)
    orbits = []
    conjugator: dict = {}  # key -> t with t * seed * t^-1 = member
    while unassigned:
        seed_key = min(unassigned)
        seed = subgroups[seed_key]
        conjugator[seed_key] = G.identity
        orbit = {seed_key}
        frontier = [seed]
        movers = G.generators or G.elements
        while frontier:
            H = frontier.pop()
            t_H = conjugator[H.key()]
            for g in movers:
                K = H.conjugate(g)
                if K.key() not in orbit:
                    orbit.add(K.key())
                    conjugator[K.key()] = g * t_H
                    frontier.append(subgroups.setdefault(K.key(), K))
        unassigned -= orbit
        orbits.append(sorted(orbit))
    # orbit rep = lexicographically smallest key; conjugators re-based onto it
    classes = []
    class_of: dict = {}
    conj_to_rep: dict = {}
    for orbit in orbits:
        rep_key = orbit[0]
        t_rep = conjugator[rep_key]
        members = tuple(subgroups[k] for k in orbit)
        for k in orbit:
            conj_to_rep[k] = t_rep * conjugator[k].inverse()
        classes.append((subgroups[rep_key], members))
    classes.sort(key=lambda c: (c[0].order, c[0].key()))
    final = []
    for i, (rep, members) in enumerate(classes):
        final.append(SubgroupClass(rep, members, i))
        for K in members:
            class_of[K.key()] = i
    result = SubgroupClasses(G, tuple(final), class_of, conj_to_rep)
    memo["subgroup_classes"] = result
    return result


def p_subgroup_classes(G: FiniteGroup, p: int, max_order: int = DEFAULT_ORDER_CAP) -> SubgroupClasses:
    """The p-subgroup classes (including the trivial one), same ordering."""
    full = all_subgroup_classes(G, max_order)
    kept = [c for c in full.classes if c.representative.is_p_group(p)]
    classes = []
    class_of: dict = {}
    conj_to_rep: dict = {}
    for i, c in enumerate(kept):
        classes.append(SubgroupClass(c.representative, c.members, i))
        for K in c.members:
            class_of[K.key()] = i
            conj_to_rep[K.key()] = full.conj_to_rep[K.key()]
    return SubgroupClasses(G, tuple(classes), class_of, conj_to_rep)


def normalizer(G: FiniteGroup, P: Subgroup) -> Subgroup:
    pset = P.member_set
    members = tuple(g for g in G.elements
                    if all(g * x * g.inverse() in pset for x in P.members))
    return Subgroup(G, members)


def centralizer(G: FiniteGroup, P: Subgroup) -> Subgroup:
    members = tuple(g for g in G.elements
                    if all(g * x == x * g for x in P.members))
    return Subgroup(G, members)


def p_part(x: Permutation, p: int) -> tuple[Permutation, Permutation]:
    """The unique commuting factorization x = x_p * x_{p'}.

    x_p has p-power order, x_{p'} has order coprime to p, both are
    powers of x.
    """
    o = x.order()
    pk = 1
    while o % p == 0:
        o //= p
        pk *= p
    q = o
    if pk == 1:
        return Permutation.identity(x.degree), x
    if q == 1:
        return x, Permutation.identity(x.degree)
    xp = x ** (q * pow(q, -1, pk))
    return xp, x * xp.inverse()


def sylow_subgroup(G: FiniteGroup, H: Subgroup, p: int) -> Subgroup:
    """A Sylow p-subgroup of H, grown through normalizers of p-subgroups."""
    target = 1
    n = H.order
    while n % p == 0:
        n //= p
        target *= p
    P = G.trivial_subgroup()
    while P.order < target:
        pset = P.member_set
        for h in H.members:
            if all(h * x * h.inverse() in pset for x in P.members):
                hp, _ = p_part(h, p)
                if hp not in pset:
                    # hp normalizes P and has p-power order, so <P, hp>
                    # is again a p-group
                    P = generated_subgroup(G, tuple(P.members) + (hp,))
                    break
        else:  # pragma: no cover - impossible by Sylow theory
            raise RuntimeError("failed to grow a p-subgroup")
    return P


class QuotientGroup:
    """H/N realized by a coset table, not re-embedded as permutations.

    Coset 0 is the identity coset; cosets are sorted by their minimal
    member.  ``canon`` maps every element of H to its coset index.
    """

    __slots__ = ("numerator", "kernel", "coset_reps", "mul_table", "inv_table",
                 "canon", "order", "_memo")

    def __init__(self, numerator: Subgroup, kernel: Subgroup):
        self.numerator = numerator
        self.kernel = kernel
        cosets = []
        seen: set[Permutation] = set()
        for h in numerator.members:
            if h in seen:
                continue
            coset = sorted(h * n for n in kernel.members)
            seen.update(coset)
            cosets.append(coset)
        cosets.sort(key=lambda c: c[0])
        self.coset_reps = tuple(c[0] for c in cosets)
        self.order = len(cosets)
        self.canon = {}
        for i, coset in enumerate(cosets):
            for g in coset:
                self.canon[g] = i
        self.mul_table = tuple(
            tuple(self.canon[a * b] for b in self.coset_reps)
            for a in self.coset_reps)
        self.inv_table = tuple(self.canon[a.inverse()] for a in self.coset_reps)
        self._memo: dict = {}

    def multiply(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inverse(self, i: int) -> int:
        return self.inv_table[i]

    def power(self, i: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv_table[i], -n)
        result = 0
        base = i
        while n:
            if n & 1:
                result = self.mul_table[result][base]
            base = self.mul_table[base][base]
            n >>= 1
        return result

    def element_order(self, i: int) -> int:
        n = 1
        j = i
        while j != 0:
            j = self.mul_table[j][i]
            n += 1
        return n

    def conjugacy_classes(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """(representative index, member indices), identity class first."""
        if "classes" not in self._memo:
            remaining = set(range(self.order))
            classes = []
            while remaining:
                i = min(remaining)
                orbit = {self.mul_table[self.mul_table[g][i]][self.inv_table[g]]
                         for g in range(self.order)}
                remaining -= orbit
                members = tuple(sorted(orbit))
                classes.append((members[0], members))
            classes.sort(key=lambda c: (len(c[1]), c[0]))
            self._memo["classes"] = tuple(classes)
        return self._memo["classes"]

    def class_index_of(self, i: int) -> int:
        if "class_of" not in self._memo:
            lookup = {}
            for k, (_, members) in enumerate(self.conjugacy_classes()):
                for j in members:
                    lookup[j] = k
            self._memo["class_of"] = lookup
        return self._memo["class_of"][i]

    def __repr__(self) -> str:
        return f"<QuotientGroup of order {self.order}>"


def quotient(H: Subgroup, N: Subgroup) -> QuotientGroup:
    """H/N with canonical coset representatives; N must be normal in H."""
    if not N.member_set <= H.member_set:
        raise NotNormal("kernel is not contained in the numerator")
    nset = N.member_set
    for h in H.members:
        if any(h * n * h.inverse() not in nset for n in N.members):
            raise NotNormal("kernel is not normal in the numerator")
    return QuotientGroup(H, N)


@dataclass(frozen=True)
class AbelianStructure:
    """A finite abelian group as invariant factors d_1 | d_2 | ... (> 1).

    ``generators`` are context-dependent concrete objects, aligned with
    the factors.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple = ()

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class AbelianizedQuotient:
    """Largest abelian p'-quotient of a QuotientGroup.

    ``structure.generators`` are coset indices of the quotient;
    ``dlog[i]`` gives the exponent tuple of coset i with respect to
    those generators (the map i -> dlog[i] is a homomorphism onto the
    abelian quotient).
    """

    quotient: QuotientGroup = field(compare=False)
    prime: int
    structure: AbelianStructure
    dlog: tuple[tuple[int, ...], ...]


def _index_closure(mul, seed, identity=0) -> frozenset[int]:
    found = {identity} | set(seed)
    frontier = list(found)
    while frontier:
        a = frontier.pop()
        for b in list(found):
            for c in (mul(a, b), mul(b, a)):
                if c not in found:
                    found.add(c)
                    frontier.append(c)
    return frozenset(found)


def _abelian_subgroups(elements, mul) -> list[frozenset[int]]:
    cyclic = set()
    for g in elements:
        members = {0}
        h = g
        while h != 0:
            members.add(h)
            h = mul(h, g)
        cyclic.add(frozenset(members))
    found = set(cyclic) | {frozenset({0})}
    work = list(found)
    while work:
        H = work.pop()
        for C in cyclic:
            if C <= H:
                continue
            J = _index_closure(mul, H | C)
            if J not in found:
                found.add(J)
                work.append(J)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _abelian_basis(elements, mul, element_order) -> list[int]:
    """Generators of descending order for a finite abelian group.

    Peels off a cyclic factor of maximal order and a complement,
    recursively.  Small-group sizes only.
    """
    if len(elements) == 1:
        return []
    orders = {g: element_order(g) for g in elements}
    exponent = max(orders.values())
    g = min(h for h in elements if orders[h] == exponent)
    cyc = set()
    h = 0
    for _ in range(exponent):
        h = mul(h, g)
        cyc.add(h)
    complement_size = len(elements) // exponent
    for B in _abelian_subgroups(sorted(elements), mul):
        if len(B) == complement_size and len(B & cyc) == 1:
            return [g] + _abelian_basis(B, mul, element_order)
    raise RuntimeError("no complement found in abelian group")  # pragma: no cover


def pprime_abelianization(Q: QuotientGroup, p: int) -> AbelianizedQuotient:
    """Q/[Q,Q] with its p-part killed, with explicit generator cosets."""
    memo = Q._memo.setdefault("pprime_ab", {})
    if p in memo:
        return memo[p]
    n = Q.order
    mul = Q.multiply
    inv = Q.inverse
    commutators = {mul(mul(a, b), inv(mul(b, a))) for a in range(n) for b in range(n)}
    derived = _index_closure(mul, commutators)
    pa = 1
    m = n
    while m % p == 0:
        m //= p
        pa *= p
    # kernel of Q -> largest abelian p'-quotient: x with x^(p-part) in [Q,Q]
    kernel = frozenset(i for i in range(n) if Q.power(i, pa) in derived)
    # coset arithmetic for A = Q/kernel, cosets labelled by minimal member
    coset_of = {}
    for i in range(n):
        if i in coset_of:
            continue
        coset = sorted(mul(i, k) for k in kernel)
        for j in coset:
            coset_of[j] = coset[0]
    labels = sorted(set(coset_of.values()))
    a_mul = lambda a, b: coset_of[mul(a, b)]

    def a_order(a: int) -> int:
        k = 1
        b = a
        while b != 0:
            b = a_mul(b, a)
            k += 1
        return k

    basis = _abelian_basis(labels, a_mul, a_order)  # descending orders
    basis.reverse()
    factors = tuple(a_order(g) for g in basis)
    # full discrete-log table: enumerate all exponent tuples
    stack = [(0, (0,) * len(basis))]
    for axis, g in enumerate(basis):
        new_stack = []
        for elem, exps in stack:
            cur = elem
            cur_exps = exps
            new_stack.append((cur, cur_exps))
            for e in range(1, factors[axis]):
                cur = a_mul(cur, g)
                cur_exps = cur_exps[:axis] + (e,) + cur_exps[axis + 1:]
                new_stack.append((cur, cur_exps))
        stack = new_stack
    table = dict((elem, exps) for elem, exps in stack)
    dlog = tuple(table[coset_of[i]] for i in range(n))
    structure = AbelianStructure(factors, tuple(basis))
    result = AbelianizedQuotient(Q, p, structure, dlog)
    memo[p] = result
    return result


def exponent_pprime(G: FiniteGroup, p: int) -> int:
    """The p'-part of the exponent of G."""
    e = math.lcm(*(g.order() for g in G.elements))
    while e % p == 0:
        e //= p
    return e


@dataclass(frozen=True)
class PClassContext:
    """Shared per-(G, p) data: class representatives P with N_G(P)/P.

    All modules indexing anything by classes of p-subgroups go through
    one cached instance, so their indices always agree.
    """

    group: FiniteGroup = field(compare=False)
    prime: int
    classes: SubgroupClasses = field(compare=False)
    representatives: tuple[Subgroup, ...] = field(compare=False)
    normalizers: tuple[Subgroup, ...] = field(compare=False)
    quotients: tuple[QuotientGroup, ...] = field(compare=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def transport(self, Q: Subgroup) -> tuple[int, Permutation]:
        """Class index of a p-subgroup and g with g Q g^-1 = representative."""
        return self.classes.class_of[Q.key()], self.classes.conj_to_rep[Q.key()]


def p_class_context(G: FiniteGroup, p: int) -> PClassContext:
    memo = G._memo.setdefault("p_class_context", {})
    if p not in memo:
        classes = p_subgroup_classes(G, p)
        reps = tuple(c.representative for c in classes.classes)
        normalizers = tuple(normalizer(G, P) for P in reps)
        quotients = tuple(QuotientGroup(N, P) for N, P in zip(normalizers, reps))
        memo[p] = PClassContext(G, p, classes, reps, normalizers, quotients)
    return memo[p]

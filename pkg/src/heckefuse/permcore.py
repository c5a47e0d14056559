"""Finite permutation groups, subgroups, cosets and double cosets.

Conventions used throughout the package:

* a permutation of degree n acts on the points 0..n-1 and is stored as its
  tuple of images;
* products compose like functions, (g * h)(i) = g(h(i)), so groups act on
  the left;
* the canonical order on permutations (and hence on group element lists)
  is lexicographic on image tuples;
* conjugation is Ad(g): x -> g x g^-1.

Everything here is an immutable value; all operations are pure functions,
so concurrent use needs no locking.  Subgroups are stored as explicit
sorted element lists: the groups this package is meant for are small, and
explicit lists beat stabilizer chains for simplicity at this scale.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

DEFAULT_MAX_ORDER = 10_000
MAX_SYM_DEGREE = 8
MAX_ACTION_POINTS = 6


class GroupTooLarge(ValueError):
    """Raised when a closure exceeds the configured order cap."""


class DegreeTooLarge(ValueError):
    """Raised when a brute-force scan over Sym(n) is out of reach."""


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """A permutation of {0, .., n-1}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images)-1}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)([cycle[0]])):
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} out of range for degree {degree}")
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, degree: int, text: str) -> "Perm":
        """Parse cycle notation: whitespace-separated 0-based points, e.g. "(0 1)(2 3)".

        Fixed points are omitted; "()" and "" denote the identity.
        """
        stripped = text.strip()
        body = _CYCLE_RE.sub("", stripped).strip()
        if body:
            raise ValueError(f"cannot parse cycle notation: {text!r}")
        cycles = []
        for group in _CYCLE_RE.findall(stripped):
            pts = [int(tok) for tok in group.replace(",", " ").split()]
            if len(pts) != len(set(pts)):
                raise ValueError(f"repeated point in cycle: {text!r}")
            if pts:
                cycles.append(pts)
        return cls.from_cycles(degree, cycles)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        a, b = self.images, other.images
        if len(a) != len(b):
            raise ValueError("degree mismatch")
        return Perm(a[b[i]] for i in range(len(a)))

    def inverse(self) -> "Perm":
        images = [0] * len(self.images)
        for i, j in enumerate(self.images):
            images[j] = i
        return Perm(images)

    __invert__ = inverse

    def __pow__(self, n: int) -> "Perm":
        g = Perm.identity(self.degree)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            g = base * g
        return g

    def conjugate(self, by: "Perm") -> "Perm":
        """Ad(by) applied to self: by * self * by^-1."""
        return by * self * by.inverse()

    def order(self) -> int:
        n, g = 1, self
        e = Perm.identity(self.degree)
        while g != e:
            g = self * g
            n += 1
        return n

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[list[int]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc, p = [start], self.images[start]
            seen.add(start)
            while p != start:
                cyc.append(p)
                seen.add(p)
                p = self.images[p]
            if len(cyc) > 1:
                out.append(cyc)
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __le__(self, other: "Perm") -> bool:
        return self.images <= other.images

    def __repr__(self) -> str:
        return f"Perm{self.cycle_string()}"


def mulclose(generators: Sequence[Perm], max_order: int = DEFAULT_MAX_ORDER) -> set[Perm]:
    """Breadth-first closure of a generating set under multiplication."""
    if not generators:
        return set()
    elements = set(generators)
    elements.add(Perm.identity(generators[0].degree))
    boundary = list(elements)
    while boundary:
        fresh = []
        for a in generators:
            for b in boundary:
                c = a * b
                if c not in elements:
                    elements.add(c)
                    fresh.append(c)
                    if len(elements) > max_order:
                        raise GroupTooLarge(
                            f"group too large: closure exceeds {max_order} elements"
                        )
        boundary = fresh
    return elements


class FiniteGroup:
    """A finite permutation group, stored as its full sorted element list."""

    def __init__(self, degree: int, elements: Iterable[Perm],
                 generators: Sequence[Perm] = ()):
        elements = tuple(sorted(set(elements)))
        if not elements:
            raise ValueError("a group needs at least the identity")
        for g in elements:
            if g.degree != degree:
                raise ValueError("degree mismatch in element list")
        self.degree = degree
        self.elements = elements
        self.generators = tuple(generators)
        self._index = {g: i for i, g in enumerate(elements)}
        self._key = (degree, tuple(g.images for g in elements))

    @classmethod
    def generate(cls, degree: int, generators: Sequence[Perm],
                 max_order: int = DEFAULT_MAX_ORDER) -> "FiniteGroup":
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != {degree}")
        if not generators:
            return cls(degree, [Perm.identity(degree)])
        return cls(degree, mulclose(list(generators), max_order), generators)

    @classmethod
    def symmetric(cls, degree: int) -> "FiniteGroup":
        return cls(degree, (Perm(p) for p in itertools.permutations(range(degree))))

    @classmethod
    def cyclic(cls, degree: int) -> "FiniteGroup":
        shift = Perm([(i + 1) % degree for i in range(degree)])
        return cls.generate(degree, [shift])

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def index_of(self, g: Perm) -> int:
        return self._index[g]

    def key(self):
        """Hashable identity of the group (degree + sorted image tuples)."""
        return self._key

    def mul_table(self) -> tuple:
        """Index multiplication table: mul_table()[i][j] = index of e_i * e_j."""
        table = getattr(self, "_mul_table", None)
        if table is None:
            els, idx = self.elements, self._index
            table = tuple(tuple(idx[a * b] for b in els) for a in els)
            self._mul_table = table
        return table

    def inv_indices(self) -> tuple:
        """inv_indices()[i] = index of the inverse of element i."""
        table = getattr(self, "_inv_indices", None)
        if table is None:
            table = tuple(self._index[g.inverse()] for g in self.elements)
            self._inv_indices = table
        return table

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={len(self)})"

    def contains_subset(self, elements: Iterable[Perm]) -> bool:
        return all(g in self._index for g in elements)

    def subgroup(self, elements: Iterable[Perm]) -> "Subgroup":
        return Subgroup(self, elements)

    def generated_subgroup(self, generators: Sequence[Perm]) -> "Subgroup":
        return Subgroup(self, mulclose(list(generators), len(self)) if generators
                        else [self.identity])

    def small_generating_set(self) -> tuple[Perm, ...]:
        """A short (greedy) generating list; stored generators when available."""
        if self.generators:
            return self.generators
        gens: list[Perm] = []
        have = {self.identity}
        for g in self.elements:
            if g not in have:
                gens.append(g)
                have = mulclose(gens, len(self))
                if len(have) == len(self):
                    break
        return tuple(gens)

    def is_abelian(self) -> bool:
        els = self.elements
        return all(a * b == b * a for a in els for b in els)

    def subgroups(self) -> list["Subgroup"]:
        """All subgroups, grown to a fixpoint by joining with cyclic subgroups."""
        found: dict[tuple, frozenset] = {}

        def register(els: frozenset) -> bool:
            key = tuple(sorted(g.images for g in els))
            if key in found:
                return False
            found[key] = els
            return True

        register(frozenset([self.identity]))
        cyclic = []
        for g in self.elements:
            els = frozenset(mulclose([g], len(self)))
            register(els)
            cyclic.append(els)
        changed = True
        while changed:
            changed = False
            for els in list(found.values()):
                for c in cyclic:
                    if c <= els:
                        continue
                    if register(frozenset(mulclose(list(els | c), len(self)))):
                        changed = True
        return sorted((Subgroup(self, els) for els in found.values()),
                      key=lambda h: (len(h), h.key()))


class Subgroup(FiniteGroup):
    """A subgroup of a parent group; closure under product/inverse is checked."""

    def __init__(self, parent: FiniteGroup, elements: Iterable[Perm]):
        elements = list(elements)
        if not parent.contains_subset(elements):
            raise ValueError("subgroup elements must lie in the parent group")
        super().__init__(parent.degree, elements)
        self.parent = parent
        els = set(self.elements)
        for g in self.elements:
            if g.inverse() not in els:
                raise ValueError(f"not closed under inverse: {g}")
        for g in self.elements:
            for h in self.elements:
                if g * h not in els:
                    raise ValueError(f"not closed under product: {g}, {h}")
        if len(parent) % len(els):
            raise ValueError("Lagrange violated; element list is not a subgroup")

    def index(self) -> int:
        return len(self.parent) // len(self)


def intersection(a: FiniteGroup, b: FiniteGroup, parent: FiniteGroup) -> Subgroup:
    bset = set(b.elements)
    return Subgroup(parent, [g for g in a.elements if g in bset])


def conjugate_subgroup(gamma: FiniteGroup, by: Perm,
                       parent: FiniteGroup) -> Subgroup:
    """The conjugate by * gamma * by^-1 as a subgroup of parent."""
    return Subgroup(parent, [g.conjugate(by) for g in gamma.elements])


def conjugate_intersection(gamma: Subgroup, g: Perm) -> Subgroup:
    """gamma ∩ g^-1 gamma g, the subgroup of gamma attached to the coset of g."""
    if g not in gamma.parent:
        raise ValueError("element must lie in the parent group")
    gamma_set = set(gamma.elements)
    return Subgroup(gamma.parent,
                    [x for x in gamma.elements if x.conjugate(g) in gamma_set])


def commensuration_subgroups(gamma: Subgroup, delta: Perm) -> tuple[Subgroup, Subgroup]:
    """(gamma ∩ delta gamma delta^-1, gamma ∩ delta^-1 gamma delta).

    Ad(delta^-1) is verified to carry the left subgroup onto the right one.
    """
    left = conjugate_intersection(gamma, delta.inverse())
    right = conjugate_intersection(gamma, delta)
    dinv = delta.inverse()
    carried = sorted(x.conjugate(dinv) for x in left.elements)
    if carried != list(right.elements):
        raise AssertionError("Ad(delta^-1) does not map the left onto the right subgroup")
    return left, right


@dataclass(frozen=True)
class DoubleCoset:
    """One double coset gamma * label * gamma, with canonical data.

    label        lexicographic minimum of the double coset
    elements     the full double coset as a frozenset
    right_reps   one representative per right coset gamma\\coset
    left_count   [gamma : gamma ∩ label gamma label^-1]
    right_count  [gamma : gamma ∩ label^-1 gamma label]
    little       gamma ∩ label^-1 gamma label, home of attached representations
    """
    label: Perm
    elements: frozenset
    right_reps: tuple
    left_count: int
    right_count: int
    little: Subgroup


class DoubleCosetSystem:
    """The partition of G into gamma-double cosets, with canonical labels."""

    def __init__(self, group: FiniteGroup, gamma: Subgroup, rng=None):
        if gamma.parent is not group and not group.contains_subset(gamma.elements):
            raise ValueError("gamma must be a subgroup of group")
        self.group = group
        self.gamma = gamma
        self.cosets: list[DoubleCoset] = []
        self._label_of: dict[Perm, Perm] = {}
        self._by_label: dict[Perm, DoubleCoset] = {}
        gels = gamma.elements
        for g in group.elements:
            if g in self._label_of:
                continue
            coset = frozenset(a * g * b for a in gels for b in gels)
            label = min(coset)
            # right cosets gamma*x inside the double coset
            leftover = set(coset)
            rep_by_coset = []
            for x in sorted(leftover):
                if x not in leftover:
                    continue
                rc = [a * x for a in gels]
                for y in rc:
                    leftover.discard(y)
                rep_by_coset.append((min(rc), sorted(rc)))
            rep_by_coset.sort()
            if rng is None:
                right_reps = tuple(r for r, _ in rep_by_coset)
            else:
                right_reps = tuple(rc[rng.randrange(len(rc))] for _, rc in rep_by_coset)
            little = conjugate_intersection(gamma, label)
            left_little = conjugate_intersection(gamma, label.inverse())
            dc = DoubleCoset(
                label=label,
                elements=coset,
                right_reps=right_reps,
                left_count=len(gamma) // len(left_little),
                right_count=len(gamma) // len(little),
                little=little,
            )
            self.cosets.append(dc)
            self._by_label[label] = dc
            for x in coset:
                self._label_of[x] = label
        assert sum(len(dc.elements) for dc in self.cosets) == len(group)
        for dc in self.cosets:
            assert len(dc.right_reps) == dc.right_count

    def label_of(self, g: Perm) -> Perm:
        return self._label_of[g]

    def labels(self) -> list[Perm]:
        return [dc.label for dc in self.cosets]

    def coset(self, label: Perm) -> DoubleCoset:
        return self._by_label[label]

    def __len__(self) -> int:
        return len(self.cosets)


def double_cosets(group: FiniteGroup, gamma: Subgroup) -> DoubleCosetSystem:
    return DoubleCosetSystem(group, gamma)


def right_coset_reps(group: FiniteGroup, sub: FiniteGroup,
                     rng=None) -> list[Perm]:
    """Representatives of sub\\group; canonical choice is the coset minimum."""
    reps, covered = [], set()
    for g in group.elements:
        if g in covered:
            continue
        coset = [h * g for h in sub.elements]
        for y in coset:
            covered.add(y)
        reps.append(min(coset) if rng is None else coset[rng.randrange(len(coset))])
    return reps


def two_sided_orbit_reps(group: FiniteGroup, left: FiniteGroup,
                         right: FiniteGroup, rng=None) -> list[Perm]:
    """Representatives of left\\group/right for two possibly different subgroups."""
    reps, covered = [], set()
    for g in group.elements:
        if g in covered:
            continue
        orbit = [a * g * b for a in left.elements for b in right.elements]
        covered.update(orbit)
        reps.append(min(orbit) if rng is None else orbit[rng.randrange(len(orbit))])
    return reps


def normalizer_in_sym(gamma: FiniteGroup,
                      max_degree: int = MAX_SYM_DEGREE) -> FiniteGroup:
    """{s in Sym(degree) : s gamma s^-1 = gamma}, by scanning all of Sym."""
    n = gamma.degree
    if n > max_degree:
        raise DegreeTooLarge(f"degree too large for brute force: {n} > {max_degree}")
    gamma_set = set(gamma.elements)
    out = []
    for images in itertools.permutations(range(n)):
        s = Perm(images)
        if all(g.conjugate(s) in gamma_set for g in gamma.elements):
            out.append(s)
    return FiniteGroup(n, out)


class GroupAction:
    """An action of a finite group on points 0..npoints-1, as an explicit table."""

    def __init__(self, group: FiniteGroup, npoints: int,
                 act: Callable[[Perm, int], int]):
        self.group = group
        self.npoints = npoints
        self._table = {g: tuple(act(g, i) for i in range(npoints))
                       for g in group.elements}
        e = group.identity
        if self._table[e] != tuple(range(npoints)):
            raise ValueError("identity must act trivially")
        for g in group.elements:
            for h in group.elements:
                gh = self._table[g * h]
                composed = tuple(self._table[g][self._table[h][i]]
                                 for i in range(npoints))
                if gh != composed:
                    raise ValueError(f"not an action: fails at ({g}, {h})")

    @classmethod
    def natural(cls, group: FiniteGroup) -> "GroupAction":
        return cls(group, group.degree, lambda g, i: g(i))

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GroupAction":
        """Left multiplication on the element list (points = element indices)."""
        return cls(group, len(group),
                   lambda g, i: group.index_of(g * group.elements[i]))

    def act(self, g: Perm, i: int) -> int:
        return self._table[g][i]

    def perm_of(self, g: Perm) -> Perm:
        return Perm(self._table[g])

    def permutation_image(self) -> FiniteGroup:
        """The image of the action homomorphism inside Sym(points)."""
        return FiniteGroup(self.npoints, {self.perm_of(g) for g in self.group})

    def is_faithful(self) -> bool:
        return len({self._table[g] for g in self.group}) == len(self.group)

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for i in range(self.npoints):
            if i in seen:
                continue
            orbit = sorted({self.act(g, i) for g in self.group})
            seen.update(orbit)
            out.append(orbit)
        return out

    def stabilizer(self, i: int) -> Subgroup:
        return Subgroup(self.group,
                        [g for g in self.group if self.act(g, i) == i])

    def fixed_points(self, g: Perm) -> list[int]:
        return [i for i in range(self.npoints) if self.act(g, i) == i]


@dataclass(frozen=True)
class ActionSummary:
    """Raw orbit/stabilizer/fixed-point data of a finite action.

    No attempt is made to decide infinite-action regularity conditions here:
    those have no finite analogue, so only the data itself is reported.
    """
    orbits: tuple
    stabilizer_orders: tuple
    fixed_points: dict


def action_summary(action: GroupAction) -> ActionSummary:
    return ActionSummary(
        orbits=tuple(tuple(o) for o in action.orbits()),
        stabilizer_orders=tuple(len(action.stabilizer(i))
                                for i in range(action.npoints)),
        fixed_points={g: tuple(action.fixed_points(g)) for g in action.group},
    )


@dataclass(frozen=True)
class Commensuration:
    """A triple (eta, domain subgroup, iso) with eta(g.i) = iso(g).eta(i).

    In this finite model every subgroup counts as "finite index"; the
    measure-space factor that would accompany eta in the ergodic-theory
    picture is not modelled and is reported symbolically elsewhere.
    """
    eta: tuple
    domain: tuple          # sorted elements of the subgroup of A.group
    iso: tuple             # pairs (g, iso(g)), sorted

    def inverse(self) -> "Commensuration":
        n = len(self.eta)
        eta_inv = [0] * n
        for i, j in enumerate(self.eta):
            eta_inv[j] = i
        iso_inv = tuple(sorted((b, a) for a, b in self.iso))
        return Commensuration(tuple(eta_inv),
                              tuple(sorted(b for _, b in self.iso)),
                              iso_inv)


def _injective_homs(domain: Subgroup, codomain: FiniteGroup,
                    allowed: dict[Perm, set[Perm]]) -> list[dict[Perm, Perm]]:
    """All injective homomorphisms with values constrained pointwise."""
    gens = domain.small_generating_set()
    if not gens:
        e_img = {lam for lam in allowed[domain.identity]}
        return [{domain.identity: codomain.identity}] \
            if codomain.identity in e_img else []
    results = []

    def extend(assignment: dict[Perm, Perm]) -> Optional[dict[Perm, Perm]]:
        # close the partial generator assignment to a map on all of domain,
        # then verify it is a homomorphism in full
        table = dict(assignment)
        table[domain.identity] = codomain.identity
        boundary = list(table)
        while boundary:
            fresh = []
            for a in list(table):
                for b in boundary:
                    c = a * b
                    img = table[a] * table[b]
                    if c not in table:
                        table[c] = img
                        fresh.append(c)
            boundary = fresh
        if len(table) != len(domain):
            return None
        for a in table:
            for b in table:
                if table[a * b] != table[a] * table[b]:
                    return None
        return table

    def backtrack(k: int, assignment: dict[Perm, Perm]):
        if k == len(gens):
            table = extend(assignment)
            if table is None:
                return
            if len(set(table.values())) != len(table):
                return
            for g, lam in table.items():
                if lam not in allowed[g]:
                    return
            results.append(table)
            return
        for lam in sorted(allowed[gens[k]]):
            assignment[gens[k]] = lam
            backtrack(k + 1, assignment)
            del assignment[gens[k]]

    backtrack(0, {})
    # distinct generator assignments can close to the same hom
    unique = {tuple(sorted((g, h) for g, h in t.items())): t for t in results}
    return [unique[k] for k in sorted(unique)]


def commensurations(a: GroupAction, b: GroupAction,
                    max_points: int = MAX_ACTION_POINTS) -> list[Commensuration]:
    """All (eta, subgroup, iso) with eta(g.i) = iso(g).eta(i), canonically ordered."""
    if a.npoints != b.npoints:
        return []
    if a.npoints > max_points:
        raise DegreeTooLarge(
            f"too many points for exhaustive commensuration search: {a.npoints}")
    out = []
    subs = a.group.subgroups()
    for eta in itertools.permutations(range(a.npoints)):
        # candidates per group element, shared across subgroups
        allowed: dict[Perm, set[Perm]] = {}
        for g in a.group:
            want = tuple(eta[a.act(g, i)] for i in range(a.npoints))
            allowed[g] = {lam for lam in b.group
                          if tuple(b.act(lam, eta[i]) for i in range(a.npoints)) == want}
        for sub in subs:
            if any(not allowed[g] for g in sub.elements):
                continue
            for hom in _injective_homs(sub, b.group, allowed):
                image = sorted(hom.values())
                # image must be a subgroup of b.group; it is, being an injective
                # hom image, but the elements must belong to b.group (they do).
                out.append(Commensuration(
                    eta=tuple(eta),
                    domain=tuple(sub.elements),
                    iso=tuple(sorted(hom.items())),
                ))
    out.sort(key=lambda c: (c.eta, tuple(g.images for g in c.domain),
                            tuple((g.images, h.images) for g, h in c.iso)))
    return out


def commutator_subgroup(group: FiniteGroup) -> Subgroup:
    gens = [a * b * a.inverse() * b.inverse()
            for a in group.elements for b in group.elements]
    return Subgroup(group, mulclose(gens, len(group)))


def abelian_invariants(group: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of the abelianization.

    Recovered from the order statistics of the quotient by the commutator
    subgroup: for each prime p, #\\{x : x^(p^j) = e\\} determines the p-power
    elementary divisors.
    """
    comm = commutator_subgroup(group)
    cset = set(comm.elements)
    # cosets of the commutator subgroup, with coset order = order in quotient
    cosets: list[Perm] = []
    covered: set[Perm] = set()
    for g in group.elements:
        if g in covered:
            continue
        cosets.append(g)
        covered.update(g * c for c in comm.elements)

    def coset_order(x: Perm) -> int:
        k, y = 1, x
        while y not in cset:
            y = y * x
            k += 1
        return k

    orders = [coset_order(x) for x in cosets]
    n = len(orders)
    if n == 1:
        return ()

    def count_killed_by(d: int) -> int:
        return sum(1 for o in orders if d % o == 0)

    primes = set()
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            primes.add(p)
            m //= p
        p += 1
    if m > 1:
        primes.add(m)

    # ranks[j-1] = number of cyclic p-factors of order >= p^j, read off the
    # growth of count_killed_by along p-power steps
    per_prime: dict[int, list[int]] = {}
    for p in sorted(primes):
        ranks = []
        prev, j = 1, 1
        while True:
            cur = count_killed_by(p ** j)
            growth, r = cur // prev, 0
            while growth > 1:
                growth //= p
                r += 1
            if r == 0:
                break
            ranks.append(r)
            prev, j = cur, j + 1
        exact = []
        for idx, r in enumerate(ranks):
            nxt = ranks[idx + 1] if idx + 1 < len(ranks) else 0
            exact.extend([p ** (idx + 1)] * (r - nxt))
        per_prime[p] = sorted(exact, reverse=True)

    width = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(width):
        f = 1
        for powers in per_prime.values():
            if i < len(powers):
                f *= powers[i]
        factors.append(f)
    return tuple(sorted(factors))


def characters(group: FiniteGroup) -> list[dict[Perm, int]]:
    """All homomorphisms group -> Z/m (m = quotient exponent), as exponent maps.

    The character with exponent map c sends g to exp(2*pi*i*c[g]/m).
    Sorted by the exponent vector over the canonical element order.
    """
    invs = abelian_invariants(group)
    m = invs[-1] if invs else 1
    gens = group.small_generating_set()
    found: set[tuple] = set()
    out = []
    for values in itertools.product(range(m), repeat=len(gens)):
        table: dict[Perm, int] = {group.identity: 0}
        for g, v in zip(gens, values):
            if g in table and table[g] != v % m:
                table = None
                break
            table[g] = v % m
        if table is None:
            continue
        boundary = list(table)
        while boundary:
            fresh = []
            for a in list(table):
                for b in boundary:
                    c = a * b
                    if c not in table:
                        table[c] = (table[a] + table[b]) % m
                        fresh.append(c)
            boundary = fresh
        if len(table) != len(group):
            continue
        if any(table[a * b] != (table[a] + table[b]) % m
               for a in table for b in table):
            continue
        key = tuple(table[g] for g in group.elements)
        if key not in found:
            found.add(key)
            out.append(table)
    out.sort(key=lambda t: tuple(t[g] for g in group.elements))
    return out


@dataclass(frozen=True)
class OutDescription:
    """Group-theoretic outer-symmetry data of a faithful finite action.

    The continuous factor of the full symmetry group is not computable from
    the combinatorics and is carried symbolically in `measure_factor`.
    """
    char_invariants: tuple
    char_exponents: tuple          # exponent vectors, canonical element order
    modulus: int
    quotient_order: int
    quotient_reps: tuple           # coset representatives of gamma in its normalizer
    char_action: dict              # rep -> permutation (tuple) of character indices
    measure_factor: str


def out_description(gamma: FiniteGroup,
                    max_degree: int = MAX_SYM_DEGREE) -> OutDescription:
    chars = characters(gamma)
    invs = abelian_invariants(gamma)
    m = invs[-1] if invs else 1
    norm = normalizer_in_sym(gamma, max_degree)
    gamma_set = set(gamma.elements)
    reps, covered = [], set()
    for s in norm.elements:
        if s in covered:
            continue
        reps.append(s)
        covered.update(s * g for g in gamma.elements)
    char_keys = [tuple(c[g] for g in gamma.elements) for c in chars]
    key_index = {k: i for i, k in enumerate(char_keys)}
    action = {}
    for s in reps:
        perm = []
        for c in chars:
            moved = tuple(c[g.conjugate(s)] for g in gamma.elements)
            perm.append(key_index[moved])
        action[s] = tuple(perm)
    return OutDescription(
        char_invariants=invs,
        char_exponents=tuple(char_keys),
        modulus=m,
        quotient_order=len(norm) // len(gamma),
        quotient_reps=tuple(reps),
        char_action=action,
        measure_factor="Aut(X0,mu0)",
    )

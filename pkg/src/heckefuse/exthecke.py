"""The extended Hecke fusion algebra of a finite pair gamma <= G.

An element assigns to finitely many double cosets a multiset of irreducible
representation classes of the little group attached to the coset's canonical
representative g0 (the subgroup gamma ∩ g0^-1 gamma g0).  Values at other
points of the double coset are never stored; they are derived by transport:
for h = c1 * g0 * c2 with c1, c2 in gamma, the class at h is the class at g0
composed with conjugation by c2.  Representative independence of everything
built this way is a tested property, not an assumption.

The fusion product of x and y at an output label g sums over orbits of the
little group of g on right cosets of gamma in G; the orbit of h contributes
the induction, from little(g) ∩ little(h) up to little(g), of the transported
value of x at g h^-1 (composed with conjugation by h) tensored with the value
of y at h.  Each contribution is decomposed into irreducible classes
immediately, so elements stay canonical and multiplicities exact.  Summing
over all cosets instead of orbits overcounts each orbit contribution exactly
[little(g) : little(g) ∩ little(h)] times; ``overcount_check`` verifies that
divisibility on concrete inputs.
"""

from __future__ import annotations

from typing import Optional

from .cocycle import Cocycle
from .hecke import FiniteHecke, HeckeElement
from .permcore import (
    DoubleCosetSystem,
    FiniteGroup,
    Perm,
    Subgroup,
    conjugate_intersection,
)
from .projrep import (
    Rep,
    RepClass,
    add_multiset,
    conjugate_rep,
    decompose,
    induce,
    irreducibles,
    multiset_dim,
    realize,
    realize_multiset,
    rep_class,
    restrict,
    tensor,
    transport,
    trivial_rep,
)


class FusionFormulaError(AssertionError):
    """An exactness property of the fusion formula failed; carries a witness."""


class FinitePair:
    """A finite pair gamma <= group, with coset data, caches, and a seed.

    ``rng`` (a random.Random) randomizes every representative choice: right
    coset representatives, transport decompositions, fusion orbit
    representatives, induction coset representatives.  The canonical pair
    (rng=None) makes the lexicographically least choice everywhere.
    """

    def __init__(self, group: FiniteGroup, gamma: Subgroup, name: str = "",
                 seed: int = 0, rng=None):
        self.group = group
        self.gamma = gamma
        self.name = name
        self.seed = seed
        self.rng = rng
        self.cosets = DoubleCosetSystem(group, gamma, rng=rng)
        self._hecke = FiniteHecke(group, gamma, self.cosets)
        self._little: dict[Perm, Subgroup] = {
            dc.label: dc.little for dc in self.cosets.cosets}
        self._decomp: dict[tuple, tuple] = {}
        self._fuse: dict[tuple, dict] = {}
        self._conj: dict[tuple, dict] = {}
        self._meets: dict[tuple, Subgroup] = {}
        # right cosets of gamma\G as their minimal elements
        mins, seen = [], set()
        for g in group.elements:
            if g in seen:
                continue
            coset = sorted(h * g for h in gamma.elements)
            mins.append(coset[0])
            seen.update(coset)
        self._coset_mins = tuple(mins)
        self._coset_min_of = {}
        for m in mins:
            for h in gamma.elements:
                self._coset_min_of[h * m] = m

    def with_choices(self, rng) -> "FinitePair":
        """The same pair with all representative choices drawn from rng."""
        return FinitePair(self.group, self.gamma, self.name, self.seed, rng)

    def hecke(self) -> FiniteHecke:
        return self._hecke

    def labels(self) -> list[Perm]:
        return self.cosets.labels()

    def label_of(self, g: Perm) -> Perm:
        return self.cosets.label_of(g)

    def little(self, label: Perm) -> Subgroup:
        return self._little[label]

    def little_of_element(self, t: Perm) -> Subgroup:
        hit = self._little.get(t)
        if hit is None:
            hit = conjugate_intersection(self.gamma, t)
            self._little[t] = hit
        return hit

    def decomposition(self, label: Perm, target: Perm) -> tuple[Perm, Perm]:
        """(c1, c2) in gamma^2 with target = c1 * label * c2."""
        key = (label, target)
        hit = self._decomp.get(key)
        if hit is not None:
            return hit
        order = list(self.gamma.elements)
        if self.rng is not None:
            self.rng.shuffle(order)
        gamma_set = set(self.gamma.elements)
        linv = label.inverse()
        for c2 in order:
            c1 = target * c2.inverse() * linv
            if c1 in gamma_set:
                self._decomp[key] = (c1, c2)
                return c1, c2
        raise ValueError(
            f"{target.cycle_string()} is not in the double coset of "
            f"{label.cycle_string()}")

    def intersection(self, a: Subgroup, b: Subgroup) -> Subgroup:
        key = (a.key(), b.key())
        hit = self._meets.get(key)
        if hit is None:
            bset = set(b.elements)
            hit = Subgroup(self.gamma, [g for g in a.elements if g in bset])
            self._meets[key] = hit
        return hit

    def coset_orbits(self, little: Subgroup) -> list[list[Perm]]:
        """Orbits of the little group on right cosets (as coset-min lists)."""
        remaining = set(self._coset_mins)
        orbits = []
        for start in self._coset_mins:
            if start not in remaining:
                continue
            orbit = {start}
            boundary = [start]
            while boundary:
                fresh = []
                for m in boundary:
                    for x in little.elements:
                        nxt = self._coset_min_of[m * x]
                        if nxt not in orbit:
                            orbit.add(nxt)
                            fresh.append(nxt)
                boundary = fresh
            remaining -= orbit
            orbits.append(sorted(orbit))
        return orbits

    def pair_orbits(self, little: Subgroup) -> list[list[tuple[Perm, Perm]]]:
        """Orbits of the little group on pairs of right cosets, diagonally."""
        all_pairs = {(a, b) for a in self._coset_mins for b in self._coset_mins}
        orbits = []
        while all_pairs:
            start = min(all_pairs)
            orbit = {start}
            boundary = [start]
            while boundary:
                fresh = []
                for (a, b) in boundary:
                    for x in little.elements:
                        nxt = (self._coset_min_of[a * x], self._coset_min_of[b * x])
                        if nxt not in orbit:
                            orbit.add(nxt)
                            fresh.append(nxt)
                boundary = fresh
            all_pairs -= orbit
            orbits.append(sorted(orbit))
        return orbits

    def pick(self, items: list):
        """Orbit-representative choice: canonical minimum, or random under rng."""
        if self.rng is None:
            return items[0]
        return items[self.rng.randrange(len(items))]

    def random_coset_element(self, coset_min: Perm) -> Perm:
        if self.rng is None:
            return coset_min
        els = [h * coset_min for h in self.gamma.elements]
        return els[self.rng.randrange(len(els))]


class ExtHeckeElement:
    """Double-coset-supported multisets of representation classes."""

    def __init__(self, pair: FinitePair, support: dict):
        clean = {}
        for label, parts in support.items():
            if not parts:
                continue
            little = pair.little(label)
            for cls, mult in parts.items():
                if not isinstance(mult, int) or mult < 1:
                    raise ValueError("multiplicities must be positive integers")
                if cls.group.key() != little.key():
                    raise ValueError(
                        "class lives on the wrong little group for its label")
                if not cls.cocycle.is_trivial_table():
                    raise ValueError("extended Hecke values carry trivial cocycles")
            clean[label] = dict(parts)
        self.pair = pair
        self.support = clean

    def key(self) -> tuple:
        return tuple(sorted(
            (label.images, tuple(sorted((c.key(), m) for c, m in parts.items())))
            for label, parts in self.support.items()))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtHeckeElement)
                and self.pair.group == other.pair.group
                and self.pair.gamma == other.pair.gamma
                and self.key() == other.key())

    def __hash__(self) -> int:
        return hash(self.key())

    def __add__(self, other: "ExtHeckeElement") -> "ExtHeckeElement":
        out = {label: dict(parts) for label, parts in self.support.items()}
        for label, parts in other.support.items():
            out[label] = add_multiset(out.get(label, {}), parts)
        return ExtHeckeElement(self.pair, out)

    def scale(self, n: int) -> "ExtHeckeElement":
        return ExtHeckeElement(self.pair, {
            label: {c: n * m for c, m in parts.items()}
            for label, parts in self.support.items()})

    def is_zero(self) -> bool:
        return not self.support

    def __str__(self) -> str:
        hk = self.pair.hecke()
        bits = []
        for label in sorted(self.support, key=lambda l: l.images):
            name = hk.label_str(label)
            classes = irreducibles(self.pair.little(label))
            index = {c: i for i, c in enumerate(classes)}
            for cls in sorted(self.support[label], key=lambda c: c.sort_key()):
                m = self.support[label][cls]
                body = f"B[{name}:{index[cls]}]"
                bits.append(body if m == 1 else f"{m}*{body}")
        return " + ".join(bits) if bits else "0"

    def __repr__(self) -> str:
        return f"ExtHeckeElement({self})"


def unit(pair: FinitePair) -> ExtHeckeElement:
    """The identity: trivial representation of gamma at the unit coset."""
    label = pair.labels()[0]
    triv = rep_class(trivial_rep(pair.little(label)))
    return ExtHeckeElement(pair, {label: {triv: 1}})


def from_rep(pair: FinitePair, rep: Rep) -> ExtHeckeElement:
    """Embed a representation of gamma, supported on the unit coset."""
    label = pair.labels()[0]
    little = pair.little(label)
    if rep.group.key() != little.key():
        rep = transport(rep, little, lambda x: x)
    return ExtHeckeElement(pair, {label: decompose(rep, pair.seed)})


def value_at(x: ExtHeckeElement, target: Perm) -> Optional[Rep]:
    """The representation of little(target) that x assigns to target, or None."""
    pair = x.pair
    label = pair.label_of(target)
    parts = x.support.get(label)
    if parts is None:
        return None
    base = realize_multiset(parts)
    if target == label:
        return base
    _, c2 = pair.decomposition(label, target)
    return transport(base, pair.little_of_element(target),
                     lambda t: t.conjugate(c2))


def transport_class(pair: FinitePair, label: Perm, cls: RepClass,
                    target: Perm) -> RepClass:
    """The class over little(target) induced by equivariance from (label, cls)."""
    _, c2 = pair.decomposition(label, target)
    moved = transport(realize(cls), pair.little_of_element(target),
                      lambda t: t.conjugate(c2))
    return rep_class(moved)


def _orbit_contribution(pair: FinitePair, x: ExtHeckeElement, y: ExtHeckeElement,
                        g0: Perm, h: Perm) -> Optional[dict]:
    """decompose(Ind from little(g0) ∩ little(h) of (x at g0 h^-1 ∘ Ad h) ⊗ (y at h))."""
    w = g0 * h.inverse()
    if pair.label_of(w) not in x.support or pair.label_of(h) not in y.support:
        return None
    rep_w = value_at(x, w)
    rep_h = value_at(y, h)
    little_g = pair.little(g0)
    meet = pair.intersection(little_g, pair.little_of_element(h))
    left = transport(rep_w, meet, lambda t: t.conjugate(h))
    right = restrict(rep_h, meet)
    product = tensor(left, right)
    ind = induce(product, little_g, Cocycle.trivial(little_g),
                 rng=pair.rng)
    return decompose(ind, pair.seed)


def fuse(x: ExtHeckeElement, y: ExtHeckeElement) -> ExtHeckeElement:
    """The fusion product, summed over little-group orbits of right cosets."""
    pair = x.pair
    if y.pair is not pair and (y.pair.group != pair.group
                               or y.pair.gamma != pair.gamma):
        raise ValueError("elements live over different pairs")
    cache_key = (x.key(), y.key())
    hit = pair._fuse.get(cache_key)
    if hit is not None:
        return ExtHeckeElement(pair, hit)
    out: dict[Perm, dict] = {}
    for g0 in pair.labels():
        little_g = pair.little(g0)
        total: dict[RepClass, int] = {}
        for orbit in pair.coset_orbits(little_g):
            h = pair.random_coset_element(pair.pick(orbit))
            parts = _orbit_contribution(pair, x, y, g0, h)
            if parts:
                total = add_multiset(total, parts)
        if total:
            out[g0] = total
    pair._fuse[cache_key] = {label: dict(parts) for label, parts in out.items()}
    return ExtHeckeElement(pair, out)


def overcount_check(x: ExtHeckeElement, y: ExtHeckeElement) -> None:
    """Re-derive the fusion by summing over all cosets; check exact divisibility.

    Every coset of an orbit must contribute an isomorphic induction, the
    orbit size must equal [little(g) : little(g) ∩ little(h)], and the full
    sum must be exactly that index times the orbit representative's
    contribution.  Any failure is a fusion-formula implementation bug.
    """
    pair = x.pair
    for g0 in pair.labels():
        little_g = pair.little(g0)
        for orbit in pair.coset_orbits(little_g):
            contributions = [_orbit_contribution(pair, x, y, g0, h) for h in orbit]
            nonzero = [c for c in contributions if c]
            if not nonzero:
                continue
            if len(nonzero) != len(orbit):
                raise FusionFormulaError(
                    f"orbit of {orbit[0].cycle_string()} at label "
                    f"{g0.cycle_string()}: support is not orbit-invariant")
            h = orbit[0]
            meet = pair.intersection(little_g, pair.little_of_element(h))
            index = len(little_g) // len(meet)
            if index != len(orbit):
                raise FusionFormulaError(
                    f"orbit size {len(orbit)} != index {index} at "
                    f"({g0.cycle_string()}, {h.cycle_string()})")
            total: dict[RepClass, int] = {}
            for c in nonzero:
                total = add_multiset(total, c)
            for cls, mult in total.items():
                if mult % index:
                    raise FusionFormulaError(
                        f"multiplicity {mult} of a class at {g0.cycle_string()} "
                        f"is not divisible by the index {index}")
            if {c: m // index for c, m in total.items()} != nonzero[0]:
                raise FusionFormulaError(
                    f"orbit total at {g0.cycle_string()} is not index times "
                    "the representative contribution")


def triple_fuse(x: ExtHeckeElement, y: ExtHeckeElement,
                z: ExtHeckeElement) -> ExtHeckeElement:
    """Direct evaluation of the symmetric three-factor formula.

    Sums over orbits of little(g) acting diagonally on pairs of right cosets
    (h, k); the (h, k) orbit contributes the induction from
    little(g) ∩ little(h) ∩ little(k) of
    (x at g h^-1 ∘ Ad h) ⊗ (y at h k^-1 ∘ Ad k) ⊗ (z at k).
    Must agree with both iterated fusions.
    """
    pair = x.pair
    out: dict[Perm, dict] = {}
    for g0 in pair.labels():
        little_g = pair.little(g0)
        total: dict[RepClass, int] = {}
        for orbit in pair.pair_orbits(little_g):
            h0, k0 = pair.pick(orbit)
            h = pair.random_coset_element(h0)
            k = pair.random_coset_element(k0)
            w1 = g0 * h.inverse()
            w2 = h * k.inverse()
            if (pair.label_of(w1) not in x.support
                    or pair.label_of(w2) not in y.support
                    or pair.label_of(k) not in z.support):
                continue
            meet = pair.intersection(
                pair.intersection(little_g, pair.little_of_element(h)),
                pair.little_of_element(k))
            a = transport(value_at(x, w1), meet, lambda t: t.conjugate(h))
            b = transport(value_at(y, w2), meet, lambda t: t.conjugate(k))
            c = restrict(value_at(z, k), meet)
            product = tensor(tensor(a, b), c)
            ind = induce(product, little_g, Cocycle.trivial(little_g),
                         rng=pair.rng)
            total = add_multiset(total, decompose(ind, pair.seed))
        if total:
            out[g0] = total
    return ExtHeckeElement(pair, out)


def conjugate(x: ExtHeckeElement) -> ExtHeckeElement:
    """Support is inverted; the value at g becomes the conjugate of
    (value at g^-1) composed with Ad g.

    The defining axioms fix conjugation only up to these domain constraints;
    this formula is validated by the involutivity and reciprocity tests.
    """
    pair = x.pair
    hit = pair._conj.get(x.key())
    if hit is not None:
        return ExtHeckeElement(pair, hit)
    out: dict[Perm, dict] = {}
    for label in x.support:
        new_label = pair.label_of(label.inverse())
        target = new_label.inverse()  # lies in the double coset of label
        rep_t = value_at(x, target)
        little_new = pair.little(new_label)
        moved = transport(rep_t, little_new, lambda t: t.conjugate(new_label))
        out[new_label] = add_multiset(out.get(new_label, {}),
                                      decompose(conjugate_rep(moved), pair.seed))
    pair._conj[x.key()] = {label: dict(parts) for label, parts in out.items()}
    return ExtHeckeElement(pair, out)


def to_hecke(x: ExtHeckeElement) -> HeckeElement:
    """Forget representations to their dimensions."""
    bk = x.pair.hecke()
    coeffs = {label: multiset_dim(parts) for label, parts in x.support.items()}
    return HeckeElement(bk, coeffs)


def dims(x: ExtHeckeElement) -> tuple[int, int]:
    """(left, right) dimensions: sum over labels of coset count times value dim."""
    left = right = 0
    for label, parts in x.support.items():
        dc = x.pair.cosets.coset(label)
        d = multiset_dim(parts)
        left += dc.left_count * d
        right += dc.right_count * d
    return left, right


def basis(pair: FinitePair) -> list[tuple[str, ExtHeckeElement]]:
    """All (double coset, irreducible class) generators, canonically ordered."""
    hk = pair.hecke()
    out = []
    for label in pair.labels():
        name = hk.label_str(label)
        for i, cls in enumerate(irreducibles(pair.little(label))):
            out.append((f"{name}:{i}", ExtHeckeElement(pair, {label: {cls: 1}})))
    return out


def crossed_dim_identity(pair: FinitePair) -> tuple[int, int]:
    """(|gamma\\G| * |gamma|,  sum over labels of right_count^2 * |little|)."""
    lhs = len(pair._coset_mins) * len(pair.gamma)
    rhs = sum(dc.right_count ** 2 * len(dc.little) for dc in pair.cosets.cosets)
    return lhs, rhs


def parse_ext_element(pair: FinitePair, text: str) -> ExtHeckeElement:
    """Sums of integer multiples of basis descriptors: "B[K:0] + 2*B[e:1]"."""
    import re
    out: Optional[ExtHeckeElement] = None
    for term in text.split("+"):
        term = term.strip()
        m = re.fullmatch(r"(?:(\d+)\s*\*\s*)?B\[([^\]:]+):(\d+)\]", term)
        if not m:
            raise ValueError(f"cannot parse basis term {term!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        label = pair.hecke().parse_label(m.group(2))
        classes = irreducibles(pair.little(label))
        idx = int(m.group(3))
        if idx >= len(classes):
            raise ValueError(f"class index {idx} out of range for {m.group(2)}")
        el = ExtHeckeElement(pair, {label: {classes[idx]: mult}})
        out = el if out is None else out + el
    if out is None:
        raise ValueError("empty element")
    return out

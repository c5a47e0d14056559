"""Scalar 2-cocycles on finite groups with values in roots of unity.

A cocycle is stored additively: its value at (g, h) is exp(2*pi*i*e/m)
where e = table[i][j] is an exponent mod m and i, j index the canonical
element order of the group.  Every cohomology class of a finite group has
a representative with values in some mu_m, so nothing is lost and all
cohomology questions become exact linear algebra over Z/m.

Cocycles are normalized, omega(e, g) = omega(g, e) = 1; constructors can
normalize arbitrary input by dividing out a (constant) coboundary.
"""

from __future__ import annotations

import cmath
from math import gcd, lcm
from typing import Callable, Optional

from .permcore import FiniteGroup, Perm


class CocycleError(ValueError):
    """A cocycle axiom fails; carries a witness in the message."""


_TRIVIAL_CACHE: dict = {}


def _canonical_table(modulus: int, table) -> tuple[int, tuple]:
    """Reduce (modulus, table) so equal root-of-unity functions compare equal."""
    g = modulus
    for row in table:
        for e in row:
            g = gcd(g, e)
    # g divides the modulus and every entry; g == modulus iff the table is zero
    if g == modulus:
        n = len(table)
        return 1, tuple((0,) * n for _ in range(n))
    m = modulus // g
    return m, tuple(tuple(e // g for e in row) for row in table)


class Cocycle:
    """A normalized scalar 2-cocycle with values in m-th roots of unity.

    Constructing from a raw table validates the cocycle identity; operations
    that preserve validity by construction (products, inverses, rescaling,
    restriction, pullback along homomorphisms, coboundaries) skip the check.
    """

    def __init__(self, group: FiniteGroup, modulus: int, table,
                 normalize: bool = False, validate: bool = True):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        n = len(group)
        table = [list(int(e) % modulus for e in row) for row in table]
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("table must be |G| x |G|")
        e_idx = group.index_of(group.identity)
        if normalize:
            const = table[e_idx][e_idx]
            table = [[(e - const) % modulus for e in row] for row in table]
        self.group = group
        self.modulus = modulus
        self.table = tuple(tuple(row) for row in table)
        if validate:
            self._validate()
        self._key = (group.key(),) + _canonical_table(modulus, self.table)

    def _validate(self) -> None:
        group, m, table = self.group, self.modulus, self.table
        n = len(group)
        e_idx = group.index_of(group.identity)
        for i in range(n):
            if table[e_idx][i] or table[i][e_idx]:
                raise CocycleError(
                    f"not normalized at ({group.elements[i].cycle_string()})")
        mul = group.mul_table()
        for i in range(n):
            row_i = table[i]
            mul_i = mul[i]
            for j in range(n):
                ij = mul_i[j]
                base = row_i[j]
                row_ij = table[ij]
                row_j_mul = mul[j]
                for k in range(n):
                    if (base + row_ij[k] - table[j][k] - row_i[row_j_mul[k]]) % m:
                        els = group.elements
                        raise CocycleError(
                            "cocycle identity fails at "
                            f"({els[i].cycle_string()}, {els[j].cycle_string()}, "
                            f"{els[k].cycle_string()})")

    @classmethod
    def trivial(cls, group: FiniteGroup, modulus: int = 1) -> "Cocycle":
        key = (group.key(), modulus)
        hit = _TRIVIAL_CACHE.get(key)
        if hit is None:
            n = len(group)
            hit = cls(group, modulus, [[0] * n for _ in range(n)], validate=False)
            _TRIVIAL_CACHE[key] = hit
        return hit

    def exponent(self, g: Perm, h: Perm) -> int:
        return self.table[self.group.index_of(g)][self.group.index_of(h)]

    def value(self, g: Perm, h: Perm) -> complex:
        return cmath.exp(2j * cmath.pi * self.exponent(g, h) / self.modulus)

    def is_trivial_table(self) -> bool:
        return all(e == 0 for row in self.table for e in row)

    def rescale(self, new_modulus: int) -> "Cocycle":
        if new_modulus == self.modulus:
            return self
        if new_modulus % self.modulus:
            raise ValueError("new modulus must be a multiple of the old one")
        f = new_modulus // self.modulus
        return Cocycle(self.group, new_modulus,
                       [[e * f for e in row] for row in self.table],
                       validate=False)

    def __mul__(self, other: "Cocycle") -> "Cocycle":
        if other.group != self.group:
            raise ValueError("cocycles live on different groups")
        m = lcm(self.modulus, other.modulus)
        a, b = self.rescale(m), other.rescale(m)
        return Cocycle(self.group, m,
                       [[(x + y) % m for x, y in zip(ra, rb)]
                        for ra, rb in zip(a.table, b.table)],
                       validate=False)

    def inverse(self) -> "Cocycle":
        m = self.modulus
        return Cocycle(self.group, m,
                       [[(-e) % m for e in row] for row in self.table],
                       validate=False)

    def restrict(self, sub: FiniteGroup) -> "Cocycle":
        if not self.group.contains_subset(sub.elements):
            raise ValueError("restriction target is not a subgroup")
        idx = [self.group.index_of(g) for g in sub.elements]
        return Cocycle(sub, self.modulus,
                       [[self.table[i][j] for j in idx] for i in idx],
                       validate=False)

    def pullback(self, new_group: FiniteGroup,
                 fwd: Callable[[Perm], Perm]) -> "Cocycle":
        """The cocycle (x, y) -> self(fwd x, fwd y); fwd must be a homomorphism."""
        idx = [self.group.index_of(fwd(g)) for g in new_group.elements]
        return Cocycle(new_group, self.modulus,
                       [[self.table[i][j] for j in idx] for i in idx],
                       validate=False)

    def conjugated(self, g: Perm) -> "Cocycle":
        """self o Ad g on the same group: (x, y) -> self(gxg^-1, gyg^-1)."""
        return self.pullback(self.group, lambda x: x.conjugate(g))

    def key(self):
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Cocycle) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        flavor = "trivial" if self.is_trivial_table() else f"mod {self.modulus}"
        return f"Cocycle({flavor} on order-{len(self.group)} group)"


class PhaseFunction:
    """A function group -> mu_m, stored as exponents; phi(e) = 0."""

    def __init__(self, group: FiniteGroup, modulus: int, values):
        values = tuple(int(v) % modulus for v in values)
        if len(values) != len(group):
            raise ValueError("need one value per group element")
        if values[group.index_of(group.identity)] != 0:
            raise ValueError("phase must vanish at the identity")
        self.group = group
        self.modulus = modulus
        self.values = values

    @classmethod
    def zero(cls, group: FiniteGroup, modulus: int = 1) -> "PhaseFunction":
        return cls(group, modulus, [0] * len(group))

    @classmethod
    def from_map(cls, group: FiniteGroup, modulus: int,
                 fn: Callable[[Perm], int]) -> "PhaseFunction":
        return cls(group, modulus, [fn(g) for g in group.elements])

    def exponent(self, g: Perm) -> int:
        return self.values[self.group.index_of(g)]

    def rescale(self, new_modulus: int) -> "PhaseFunction":
        if new_modulus % self.modulus:
            raise ValueError("new modulus must be a multiple of the old one")
        f = new_modulus // self.modulus
        return PhaseFunction(self.group, new_modulus, [v * f for v in self.values])

    def __mul__(self, other: "PhaseFunction") -> "PhaseFunction":
        if other.group != self.group:
            raise ValueError("phases live on different groups")
        m = lcm(self.modulus, other.modulus)
        a, b = self.rescale(m), other.rescale(m)
        return PhaseFunction(self.group, m,
                             [(x + y) % m for x, y in zip(a.values, b.values)])

    def inverse(self) -> "PhaseFunction":
        m = self.modulus
        return PhaseFunction(self.group, m, [(-v) % m for v in self.values])

    def restrict(self, sub: FiniteGroup) -> "PhaseFunction":
        return PhaseFunction(sub, self.modulus,
                             [self.exponent(g) for g in sub.elements])

    def coboundary(self) -> Cocycle:
        """The cocycle (g, h) -> phi(g) phi(h) / phi(gh); always valid."""
        group, m, v = self.group, self.modulus, self.values
        mul = group.mul_table()
        n = len(group)
        table = [[(v[i] + v[j] - v[mul[i][j]]) % m for j in range(n)]
                 for i in range(n)]
        return Cocycle(group, m, table, validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseFunction) or other.group != self.group:
            return False
        m = lcm(self.modulus, other.modulus)
        return self.rescale(m).values == other.rescale(m).values

    def __hash__(self) -> int:
        return hash((self.group.key(), self.modulus, self.values))


def coboundary(phi: PhaseFunction) -> Cocycle:
    return phi.coboundary()


# ------------------------------------------------------------------ solving

def _diagonalize(mat: list[list[int]]):
    """Integer diagonalization D = U * mat * V by elementary operations."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row i += q * row j
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        u[i] = [a + q * b for a, b in zip(u[i], u[j])]

    def add_col(i, j, q):  # col i += q * col j
        for row in m:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] and (pivot is None
                                    or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return m, u, v
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            dirty = False
            for i in range(rows):
                if i != t and m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    dirty = dirty or bool(m[i][t])
            for j in range(cols):
                if j != t and m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    dirty = dirty or bool(m[t][j])
            if not dirty:
                break
    return m, u, v


def _solve_mod(a: list[list[int]], b: list[int], modulus: int) -> Optional[list[int]]:
    """One solution x of a x = b (mod modulus), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    aug = [row[:] + [modulus if j == i else 0 for j in range(rows)]
           for i, row in enumerate(a)]
    d, u, v = _diagonalize(aug)
    c = [sum(u[i][k] * b[k] for k in range(rows)) for i in range(rows)]
    n = cols + rows
    w = [0] * n
    for i in range(rows):
        dii = d[i][i] if i < n else 0
        if dii:
            if c[i] % dii:
                return None
            w[i] = c[i] // dii
        elif c[i]:
            return None
    x = [sum(v[i][k] * w[k] for k in range(n)) for i in range(n)]
    return [xi % modulus for xi in x[:cols]]


def coboundary_witness(target: Cocycle) -> Optional[PhaseFunction]:
    """A phase phi with coboundary(phi) = target, if target is a coboundary."""
    group, m = target.group, target.modulus
    els = group.elements
    idx = group.index_of
    e_idx = idx(group.identity)
    unknowns = [i for i in range(len(els)) if i != e_idx]
    column = {g: c for c, g in enumerate(unknowns)}
    a, b = [], []
    for i, g in enumerate(els):
        for j, h in enumerate(els):
            if i == e_idx or j == e_idx:
                continue
            row = [0] * len(unknowns)
            row[column[i]] += 1
            row[column[j]] += 1
            k = idx(g * h)
            if k != e_idx:
                row[column[k]] -= 1
            a.append(row)
            b.append(target.table[i][j])
    x = _solve_mod(a, b, m)
    if x is None:
        return None
    values = [0] * len(els)
    for i, c in column.items():
        values[i] = x[c]
    phi = PhaseFunction(group, m, values)
    assert phi.coboundary() == target
    return phi


def cohomology_witness(a: Cocycle, b: Cocycle) -> Optional[PhaseFunction]:
    """A phase phi with b = coboundary(phi) * a, if a and b are cohomologous."""
    if a.group != b.group:
        raise ValueError("cocycles live on different groups")
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")
    return coboundary_witness(b * a.inverse())


def are_cohomologous(a: Cocycle, b: Cocycle) -> bool:
    m = lcm(a.modulus, b.modulus)
    return coboundary_witness(b.rescale(m) * a.rescale(m).inverse()) is not None


def group_exponent(group: FiniteGroup) -> int:
    m = 1
    for g in group.elements:
        m = lcm(m, g.order())
    return m


def coboundary_witness_s1(target: Cocycle) -> Optional[PhaseFunction]:
    """Like coboundary_witness, but with circle-valued semantics.

    A root-of-unity cocycle can split over S^1 even when the linear system
    at its own modulus m is unsolvable; any circle-valued witness has values
    in mu_(m * exp(G)), so solving at that modulus decides splitting over S^1.
    """
    m = target.modulus * group_exponent(target.group)
    return coboundary_witness(target.rescale(m))


# ------------------------------------------------------------------ twists

def conjugation_phase(omega: Cocycle, g: Perm) -> PhaseFunction:
    """The phase whose coboundary measures omega o Ad g against omega.

    phase(h) = omega(g h g^-1, g) / omega(g, h); the identity
    (omega o Ad g) = coboundary(phase) * omega is verified on construction,
    so a failure here means the input table is not a cocycle.
    """
    group, m = omega.group, omega.modulus
    if g not in group:
        raise ValueError("g must lie in the cocycle's group")
    phi = PhaseFunction(group, m,
                        [(omega.exponent(h.conjugate(g), g) - omega.exponent(g, h)) % m
                         for h in group.elements])
    if omega.conjugated(g) != phi.coboundary() * omega:
        raise CocycleError(f"conjugation identity fails for {g.cycle_string()}")
    return phi


# ------------------------------------------------------------------ catalog cocycles

def heisenberg_group(n: int) -> tuple[FiniteGroup, dict[Perm, tuple[int, int]]]:
    """(Z/n)^2 as two disjoint n-cycles, with its coordinate chart."""
    if n < 2:
        raise ValueError("n must be at least 2")
    a = Perm.from_cycles(2 * n, [list(range(n))])
    b = Perm.from_cycles(2 * n, [list(range(n, 2 * n))])
    group = FiniteGroup.generate(2 * n, [a, b])
    coords = {g: (g(0), g(n) - n) for g in group.elements}
    return group, coords


def bilinear_cocycle(group: FiniteGroup, coords: dict[Perm, tuple[int, int]],
                     n: int, k: int) -> Cocycle:
    """Exponent table k * x * y' mod n on a group charted over (Z/n)^2.

    The chart must be an isomorphism onto (Z/n)^2.  The commutation phase
    of the resulting cocycle at ((x,y),(x',y')) is the symplectic form
    exp(2*pi*i*k*(x*y' - y*x')/n); classes are k = 0, .., n-1.
    """
    if len(group) != n * n:
        raise ValueError("group order must be n^2")
    for g in group.elements:
        for h in group.elements:
            gx, gy = coords[g]
            hx, hy = coords[h]
            px, py = coords[g * h]
            if (px - gx - hx) % n or (py - gy - hy) % n:
                raise ValueError("chart is not additive")
    table = [[(k * coords[g][0] * coords[h][1]) % n for h in group.elements]
             for g in group.elements]
    return Cocycle(group, n, table)


def heisenberg_cocycle(n: int, k: int):
    """The standard (Z/n)^2 pair: (group, coords chart, cocycle of class k)."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    group, coords = heisenberg_group(n)
    return group, coords, bilinear_cocycle(group, coords, n, k)

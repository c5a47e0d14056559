import itertools
import random

import pytest

from heckefuse.exthecke import (
    ExtHeckeElement,
    FinitePair,
    basis,
    conjugate,
    crossed_dim_identity,
    dims,
    from_rep,
    fuse,
    overcount_check,
    parse_ext_element,
    to_hecke,
    transport_class,
    triple_fuse,
    unit,
    value_at,
)
from heckefuse.hecke import convolve
from heckefuse.permcore import FiniteGroup, Perm
from heckefuse.projrep import (
    decompose,
    hom_dim,
    irreducibles,
    realize,
    restrict,
    tensor,
    transport,
)


@pytest.fixture(scope="module")
def s3s4():
    g = FiniteGroup.generate(4, [Perm.parse(4, "(0 1)"), Perm.parse(4, "(0 1 2 3)")])
    gamma = g.subgroup(
        FiniteGroup.generate(4, [Perm.parse(4, "(0 1)"), Perm.parse(4, "(0 1 2)")]).elements
    )
    return FinitePair(g, gamma, name="S3_in_S4")


@pytest.fixture(scope="module")
def klein_d4():
    g = FiniteGroup.generate(4, [Perm.parse(4, "(0 1 2 3)"), Perm.parse(4, "(1 3)")])
    gamma = g.subgroup(
        FiniteGroup.generate(4, [Perm.parse(4, "(0 1)(2 3)"),
                                 Perm.parse(4, "(0 2)(1 3)")]).elements
    )
    return FinitePair(g, gamma, name="Klein_in_D4")


def reciprocity_oracle(pair, x, y):
    """Independent multiplicity extraction for fuse(x, y).

    Instead of inducing and numerically decomposing, use ordinary Frobenius
    reciprocity: the multiplicity of an irreducible r of little(g) in
    Ind_S(tau) is hom_dim(tau, Res_S r).  Shares only the transport
    conventions with the implementation.
    """
    out = {}
    for g0 in pair.labels():
        little_g = pair.little(g0)
        per_class = {}
        for orbit in pair.coset_orbits(little_g):
            h = orbit[0]
            w = g0 * h.inverse()
            if pair.label_of(w) not in x.support or pair.label_of(h) not in y.support:
                continue
            meet = pair.intersection(little_g, pair.little_of_element(h))
            left = transport(value_at(x, w), meet, lambda t: t.conjugate(h))
            right = restrict(value_at(y, h), meet)
            tau = tensor(left, right)
            for cls in irreducibles(little_g):
                m = hom_dim(tau, restrict(realize(cls), meet))
                if m:
                    per_class[cls] = per_class.get(cls, 0) + m
        if per_class:
            out[g0] = per_class
    return out


# ------------------------------------------------------------ basics

def test_unit_is_neutral(s3s4):
    e = unit(s3s4)
    for _, b in basis(s3s4):
        assert fuse(e, b) == b
        assert fuse(b, e) == b


def test_basis_size_s3s4(s3s4):
    descriptors = [d for d, _ in basis(s3s4)]
    assert len(descriptors) == 5  # 3 classes of S3 at e, 2 classes of Z/2 at K
    assert descriptors == ["e:0", "e:1", "e:2", "K:0", "K:1"]


def test_crossed_dim_identity(s3s4, klein_d4):
    assert crossed_dim_identity(s3s4) == (24, 24)
    lhs, rhs = crossed_dim_identity(klein_d4)
    assert lhs == rhs
    # gamma = G: identity reads |G| = |G|
    g = FiniteGroup.symmetric(3)
    pair = FinitePair(g, g.subgroup(g.elements))
    assert crossed_dim_identity(pair) == (6, 6)
    # gamma normal: every coset contributes 1^2 * |gamma|
    a4 = FiniteGroup.generate(4, [Perm.parse(4, "(0 1 2)"), Perm.parse(4, "(1 2 3)")])
    g4 = FiniteGroup.generate(4, [Perm.parse(4, "(0 1)"), Perm.parse(4, "(0 1 2 3)")])
    normal = FinitePair(g4, g4.subgroup(a4.elements))
    lhs, rhs = crossed_dim_identity(normal)
    assert lhs == rhs == 2 * 12
    assert all(dc.right_count == 1 for dc in normal.cosets.cosets)


# ------------------------------------------------------------ the worked example

def test_kx_squared_structure(s3s4):
    pair = s3s4
    e_label, k_label = pair.labels()
    triv_k = irreducibles(pair.little(k_label))[0]
    assert triv_k.dim == 1
    x = ExtHeckeElement(pair, {k_label: {triv_k: 1}})
    sq = fuse(x, x)
    # at the unit coset: Ind of the trivial rep of an order-2 subgroup of S3
    at_e = sq.support[e_label]
    dims_at_e = sorted(c.dim for c in at_e)
    assert dims_at_e == [1, 2] and all(m == 1 for m in at_e.values())
    (unit_label, unit_parts), = unit(pair).support.items()
    (unit_class, _), = unit_parts.items()
    assert at_e.get(unit_class) == 1  # the unit appears exactly once
    # at K: total dimension 2 over the order-2 little group
    assert sum(c.dim * m for c, m in sq.support[k_label].items()) == 2
    # exact split cross-checked against the reciprocity oracle
    assert {l: p for l, p in sq.support.items()} == reciprocity_oracle(pair, x, x)


def test_fuse_matches_reciprocity_oracle_on_all_basis_pairs(s3s4):
    pair = s3s4
    els = [b for _, b in basis(pair)]
    for x in els:
        for y in els:
            assert fuse(x, y).support == reciprocity_oracle(pair, x, y)


def test_to_hecke_cross_oracle(s3s4):
    pair = s3s4
    bk = pair.hecke()
    e_label, k_label = pair.labels()
    triv_k = irreducibles(pair.little(k_label))[0]
    x = ExtHeckeElement(pair, {k_label: {triv_k: 1}})
    assert to_hecke(fuse(x, x)) == convolve(to_hecke(x), to_hecke(x))
    assert convolve(to_hecke(x), to_hecke(x)).coeffs == {e_label: 3, k_label: 2}


def test_to_hecke_homomorphism_all_basis_pairs(s3s4):
    pair = s3s4
    els = [b for _, b in basis(pair)]
    for x in els:
        for y in els:
            assert to_hecke(fuse(x, y)) == convolve(to_hecke(x), to_hecke(y))


# ------------------------------------------------------------ overcount

def test_overcount_check_unit(s3s4):
    overcount_check(unit(s3s4), unit(s3s4))


def test_overcount_check_basis_pairs(s3s4):
    els = [b for _, b in basis(s3s4)]
    for x in els:
        for y in els:
            overcount_check(x, y)


def test_overcount_check_klein_d4(klein_d4):
    els = [b for _, b in basis(klein_d4)]
    x = els[0] + els[-1].scale(2)
    y = els[1] + els[-2]
    overcount_check(x, y)


# ------------------------------------------------------------ associativity

def test_triple_fuse_with_unit_reduces(s3s4):
    pair = s3s4
    els = [b for _, b in basis(pair)]
    e = unit(pair)
    for x in els[:3]:
        for y in els[3:]:
            assert triple_fuse(e, x, y) == fuse(x, y)
            assert triple_fuse(x, e, y) == fuse(x, y)
            assert triple_fuse(x, y, e) == fuse(x, y)


def test_associativity_sample(s3s4):
    pair = s3s4
    els = [b for _, b in basis(pair)]
    for x, y, z in [(els[3], els[3], els[3]), (els[1], els[3], els[4]),
                    (els[4], els[2], els[3])]:
        t = triple_fuse(x, y, z)
        assert t == fuse(fuse(x, y), z)
        assert t == fuse(x, fuse(y, z))


def test_associativity_random_sums(s3s4):
    pair = s3s4
    els = [b for _, b in basis(pair)]
    x = els[0] + els[3].scale(2)
    y = els[4] + els[1]
    z = els[3]
    t = triple_fuse(x, y, z)
    assert t == fuse(fuse(x, y), z) == fuse(x, fuse(y, z))


# ------------------------------------------------------------ conjugation

def test_conjugate_unit(s3s4):
    assert conjugate(unit(s3s4)) == unit(s3s4)


def test_conjugate_k_triv(s3s4):
    pair = s3s4
    k_label = pair.labels()[1]
    triv_k = irreducibles(pair.little(k_label))[0]
    x = ExtHeckeElement(pair, {k_label: {triv_k: 1}})
    assert conjugate(x) == x


def test_double_conjugate_identity(s3s4, klein_d4):
    for pair in (s3s4, klein_d4):
        for _, b in basis(pair):
            assert conjugate(conjugate(b)) == b


def test_conjugate_antimultiplicative(s3s4):
    els = [b for _, b in basis(s3s4)]
    for x, y in [(els[3], els[4]), (els[1], els[3])]:
        assert conjugate(fuse(x, y)) == fuse(conjugate(y), conjugate(x))


# ------------------------------------------------------------ dims

def test_dims_unit(s3s4):
    assert dims(unit(s3s4)) == (1, 1)


def test_dims_k_triv(s3s4):
    pair = s3s4
    k_label = pair.labels()[1]
    triv_k = irreducibles(pair.little(k_label))[0]
    x = ExtHeckeElement(pair, {k_label: {triv_k: 1}})
    assert dims(x) == (3, 3)


def test_dims_additive(s3s4):
    els = [b for _, b in basis(s3s4)]
    x, y = els[0], els[3]
    dx, dy = dims(x), dims(y)
    dsum = dims(x + y)
    assert dsum == (dx[0] + dy[0], dx[1] + dy[1])


def test_dims_match_brute_force_counts(s3s4):
    pair = s3s4
    gamma = pair.gamma
    for _, b in basis(pair):
        (label, parts), = b.support.items()
        d = sum(c.dim * m for c, m in parts.items())
        gamma_set = set(gamma.elements)
        left_little = [x for x in gamma if x.conjugate(label.inverse()) in gamma_set]
        right_little = [x for x in gamma if x.conjugate(label) in gamma_set]
        expect = (len(gamma) // len(left_little) * d,
                  len(gamma) // len(right_little) * d)
        assert dims(b) == expect


# ------------------------------------------------------------ hom & from_rep

def test_from_rep_homomorphism(s3s4):
    pair = s3s4
    gamma_classes = irreducibles(pair.little(pair.labels()[0]))
    for a in gamma_classes:
        for b in gamma_classes:
            x = from_rep(pair, realize(a))
            y = from_rep(pair, realize(b))
            prod = fuse(x, y)
            expect = from_rep_multiset(pair, decompose(tensor(realize(a), realize(b))))
            assert prod == expect


def from_rep_multiset(pair, parts):
    label = pair.labels()[0]
    return ExtHeckeElement(pair, {label: parts})


def test_frobenius_reciprocity_exhaustive(s3s4):
    pair = s3s4
    els = basis(pair)

    def mult(x, y, target):
        (label, parts), = target.support.items()
        (cls, _), = parts.items()
        return fuse(x, y).support.get(label, {}).get(cls, 0)

    for (_, x), (_, y), (_, z) in itertools.product(els, repeat=3):
        assert mult(x, y, z) == mult(conjugate(x), z, y) == mult(z, conjugate(y), x)


# ------------------------------------------------------------ transport

def test_transport_identity(s3s4):
    pair = s3s4
    k_label = pair.labels()[1]
    cls = irreducibles(pair.little(k_label))[1]
    assert transport_class(pair, k_label, cls, k_label) == cls


def test_transport_by_little_element_fixes_class(s3s4):
    pair = s3s4
    k_label = pair.labels()[1]
    for cls in irreducibles(pair.little(k_label)):
        for c2 in pair.little(k_label).elements:
            target = k_label * c2
            assert transport_class(pair, k_label, cls, target) == cls


def test_transport_outside_coset_raises(s3s4):
    pair = s3s4
    e_label, k_label = pair.labels()
    cls = irreducibles(pair.little(k_label))[0]
    with pytest.raises(ValueError):
        transport_class(pair, k_label, cls, e_label)


def test_transport_decomposition_independent(s3s4):
    pair = s3s4
    k_label = pair.labels()[1]
    target = sorted(pair.cosets.coset(k_label).elements)[5]
    classes = irreducibles(pair.little(k_label))
    canonical = [transport_class(pair, k_label, c, target) for c in classes]
    for i in range(5):
        shuffled = pair.with_choices(random.Random(i))
        got = [transport_class(shuffled, k_label, c, target) for c in classes]
        assert got == canonical


# ------------------------------------------------------------ representative independence

def test_fuse_representative_independence(s3s4):
    pair = s3s4
    els = basis(pair)
    canonical = {(dx, dy): fuse(x, y).key()
                 for dx, x in els for dy, y in els}
    for trial in range(3):
        shuffled = pair.with_choices(random.Random(trial))
        els2 = basis(shuffled)
        for (dx, x), (dy, y) in zip(els, els2):
            assert x == y  # descriptors and classes agree
        got = {(dx, dy): fuse(x, y).key() for dx, x in els2 for dy, y in els2}
        assert got == canonical


# ------------------------------------------------------------ parsing

def test_parse_ext_element(s3s4):
    pair = s3s4
    el = parse_ext_element(pair, "B[K:0] + 2*B[e:1]")
    k_label, e_label = pair.labels()[1], pair.labels()[0]
    assert el.support[k_label] == {irreducibles(pair.little(k_label))[0]: 1}
    assert el.support[e_label] == {irreducibles(pair.little(e_label))[1]: 2}
    assert str(el) == "2*B[e:1] + B[K:0]"
    with pytest.raises(ValueError):
        parse_ext_element(pair, "B[K:7]")
    with pytest.raises(ValueError):
        parse_ext_element(pair, "nope")

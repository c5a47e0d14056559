import itertools
import random

import pytest

from heckefuse.cocycle import (
    Cocycle,
    CocycleError,
    bilinear_cocycle,
    coboundary_witness_s1,
)
from heckefuse.elementary import (
    BimoduleSum,
    admissible_classes,
    canonical_term,
    direct_sum_objects,
    fuse,
    fuse_objects,
    identity_object,
    is_irreducible,
    isomorphism_witness,
    make,
    required_cocycle,
    to_ext_hecke,
    transfer_rep,
)
from heckefuse.exthecke import FinitePair, basis as ext_basis
from heckefuse.exthecke import fuse as ext_fuse, unit as ext_unit
from heckefuse.permcore import FiniteGroup, Perm
from heckefuse.projrep import (
    irreducibles,
    realize,
    regular_rep,
    trivial_rep,
    twist,
)


@pytest.fixture(scope="module")
def s3s4():
    g = FiniteGroup.generate(4, [Perm.parse(4, "(0 1)"), Perm.parse(4, "(0 1 2 3)")])
    gamma = g.subgroup(
        FiniteGroup.generate(4, [Perm.parse(4, "(0 1)"), Perm.parse(4, "(0 1 2)")]).elements
    )
    return FinitePair(g, gamma, name="S3_in_S4")


@pytest.fixture(scope="module")
def d4_klein():
    g = FiniteGroup.generate(4, [Perm.parse(4, "(0 1 2 3)"), Perm.parse(4, "(1 3)")])
    gamma = g.subgroup(
        FiniteGroup.generate(4, [Perm.parse(4, "(0 1)(2 3)"),
                                 Perm.parse(4, "(0 2)(1 3)")]).elements
    )
    return FinitePair(g, gamma, name="Klein_in_D4")


def klein_cocycle(pair: FinitePair) -> Cocycle:
    a = Perm.parse(4, "(0 1)(2 3)")
    b = Perm.parse(4, "(0 2)(1 3)")
    coords = {}
    for x in range(2):
        for y in range(2):
            coords[(a ** x) * (b ** y)] = (x, y)
    return bilinear_cocycle(pair.gamma, coords, 2, 1)


def elementary_basis(pair, omega):
    out = []
    for label in pair.labels():
        for cls in admissible_classes(pair, omega, label):
            out.append(make(pair, omega, label, realize(cls)))
    return out


# ------------------------------------------------------------ construction

def test_identity_object(s3s4):
    obj = identity_object(s3s4, Cocycle.trivial(s3s4.gamma))
    assert obj.delta == s3s4.group.identity
    assert obj.rep.dim == 1
    assert is_irreducible(obj)


def test_any_ordinary_rep_valid_with_trivial_cocycle(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    for label in pair.labels():
        for cls in irreducibles(pair.little(label)):
            obj = make(pair, omega, label, realize(cls))
            assert obj.rep.dim == cls.dim


def test_klein_admissible_reps_exist_via_twist(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    rotation = Perm.parse(4, "(0 1 2 3)")
    need = required_cocycle(pair, omega, rotation)
    # the constraint class is a coboundary over S^1, so solving for a phase
    # and twisting ordinary representations yields admissible ones
    phi = coboundary_witness_s1(need)
    assert phi is not None
    rig = pair.little_of_element(rotation)
    ordinary = realize(irreducibles(rig)[0])
    candidate = twist(ordinary, phi)
    assert candidate.cocycle == need.rescale(phi.modulus) or \
        candidate.cocycle == need
    classes = admissible_classes(pair, omega, rotation)
    assert len(classes) >= 1


def test_make_rejects_wrong_cocycle(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    rotation = Perm.parse(4, "(0 1 2 3)")
    rig = pair.little_of_element(rotation)
    with pytest.raises(CocycleError):
        make(pair, omega, rotation, trivial_rep(rig))


def test_make_rejects_wrong_subgroup(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    k_label = pair.labels()[1]
    gamma_group = pair.little(pair.labels()[0])
    with pytest.raises(ValueError):
        make(pair, omega, k_label, trivial_rep(gamma_group))


# ------------------------------------------------------------ irreducibility

def test_is_irreducible_cases(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    e = pair.group.identity
    gamma_grp = pair.little_of_element(e)
    assert is_irreducible(make(pair, omega, e, trivial_rep(gamma_grp)))
    assert not is_irreducible(make(pair, omega, e, regular_rep(gamma_grp)))


def test_twisted_klein_object_irreducible(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    e = pair.group.identity
    rig = pair.little_of_element(e)
    # required cocycle at e is omega itself... no: (omega o Ad e)/omega = trivial
    assert required_cocycle(pair, omega, e).is_trivial_table()
    # a genuinely twisted object: regular rep of the Klein group with omega
    # sits at e only when omega is trivial; instead check Schur on the twisted
    # 2-dim class directly
    cls = irreducibles(rig, omega.restrict(rig))[0]
    assert cls.dim == 2
    from heckefuse.projrep import hom_dim
    assert hom_dim(realize(cls), realize(cls)) == 1


# ------------------------------------------------------------ fusion

def test_identity_is_neutral(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    e_obj = identity_object(pair, omega)
    for obj in elementary_basis(pair, omega):
        assert fuse_objects(e_obj, obj) == BimoduleSum.of(obj)
        assert fuse_objects(obj, e_obj) == BimoduleSum.of(obj)


def test_identity_is_neutral_twisted(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    e_obj = identity_object(pair, omega)
    for obj in elementary_basis(pair, omega):
        assert fuse_objects(e_obj, obj) == BimoduleSum.of(obj)
        assert fuse_objects(obj, e_obj) == BimoduleSum.of(obj)


def test_normalizing_deltas_give_single_summand(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    objs = elementary_basis(pair, omega)
    # the Klein subgroup is normal in D4, so every double coset is a coset and
    # the fusion of two basis objects is supported on a single delta
    for a, b in itertools.product(objs[:4], objs[4:]):
        result = fuse_objects(a, b)
        deltas = {rep.delta.images for rep, _ in result.items()}
        assert len(deltas) == 1
        assert result.total_dim() == a.rep.dim * b.rep.dim


def test_cross_oracle_with_ext_hecke(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    ext = [b for _, b in ext_basis(pair)]
    elem = []
    for label in pair.labels():
        for cls in irreducibles(pair.little(label)):
            elem.append(make(pair, omega, label, realize(cls)))
    assert len(ext) == len(elem)
    for (x_ext, x_elem) in zip(ext, elem):
        assert to_ext_hecke(BimoduleSum.of(x_elem)) == x_ext
    for (x_ext, x_elem), (y_ext, y_elem) in itertools.product(
            zip(ext, elem), repeat=2):
        lhs = to_ext_hecke(fuse_objects(x_elem, y_elem))
        rhs = ext_fuse(x_ext, y_ext)
        assert lhs == rhs


def test_fuse_associativity_twisted_sample(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    objs = elementary_basis(pair, omega)
    sample = [(objs[0], objs[4], objs[5]), (objs[4], objs[5], objs[6]),
              (objs[1], objs[4], objs[1]), (objs[4], objs[4], objs[4])]
    for x, y, z in sample:
        left = fuse(fuse_objects(x, y), BimoduleSum.of(z))
        right = fuse(BimoduleSum.of(x), fuse_objects(y, z))
        assert left == right


def test_fuse_dimension_bookkeeping(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    objs = elementary_basis(pair, omega)
    for x, y in itertools.product(objs, repeat=2):
        product = fuse_objects(x, y)
        lhs = to_ext_hecke(product)
        # dimension of the fusion matches the Hecke-level convolution dims
        from heckefuse.exthecke import to_hecke
        from heckefuse.hecke import degree
        hx = to_hecke(to_ext_hecke(BimoduleSum.of(x)))
        hy = to_hecke(to_ext_hecke(BimoduleSum.of(y)))
        assert degree(to_hecke(lhs)) == degree(hx) * degree(hy)


# ------------------------------------------------------------ isomorphism

def test_isomorphic_to_self(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    for obj in elementary_basis(pair, omega):
        assert isomorphism_witness(obj, obj) == \
            (pair.group.identity, pair.group.identity)


def test_not_isomorphic_across_cosets(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    e_label, k_label = pair.labels()
    a = make(pair, omega, e_label,
             realize(irreducibles(pair.little(e_label))[0]))
    b = make(pair, omega, k_label,
             realize(irreducibles(pair.little(k_label))[0]))
    assert isomorphism_witness(a, b) is None


def test_isomorphism_round_trip(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    k_label = pair.labels()[1]
    pi = realize(irreducibles(pair.little(k_label))[1])
    obj = make(pair, omega, k_label, pi)
    g = Perm.parse(4, "(0 1 2)")
    h = Perm.parse(4, "(0 1)")
    moved_delta = g * k_label * h
    moved = make(pair, omega, moved_delta,
                 transfer_rep(pair, omega, k_label, pi, g, h))
    witness = isomorphism_witness(obj, moved)
    assert witness is not None
    wg, wh = witness
    assert wg * k_label * wh == moved_delta
    # and the canonical forms agree
    assert canonical_term(obj) == canonical_term(moved)


def test_isomorphism_round_trip_twisted(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    objs = elementary_basis(pair, omega)
    target = objs[5]
    g = Perm.parse(4, "(0 2)(1 3)")
    h = Perm.parse(4, "(0 1)(2 3)")
    moved = make(pair, omega, g * target.delta * h,
                 transfer_rep(pair, omega, target.delta, target.rep, g, h))
    assert isomorphism_witness(target, moved) is not None
    assert canonical_term(target) == canonical_term(moved)


# ------------------------------------------------------------ direct sums

def test_direct_sum_dims_add(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    k_label = pair.labels()[1]
    classes = irreducibles(pair.little(k_label))
    a = make(pair, omega, k_label, realize(classes[0]))
    b = make(pair, omega, k_label, realize(classes[1]))
    both = direct_sum_objects(a, b)
    assert both.rep.dim == a.rep.dim + b.rep.dim
    assert BimoduleSum.of(both) == BimoduleSum.of(a) + BimoduleSum.of(b)


def test_direct_sum_requires_same_delta(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    e_label, k_label = pair.labels()
    a = make(pair, omega, e_label, realize(irreducibles(pair.little(e_label))[0]))
    b = make(pair, omega, k_label, realize(irreducibles(pair.little(k_label))[0]))
    with pytest.raises(ValueError):
        direct_sum_objects(a, b)


# ------------------------------------------------------------ ext identification

def test_to_ext_hecke_identity(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    assert to_ext_hecke(identity_object(pair, omega)) == ext_unit(pair)


def test_to_ext_hecke_round_trip(s3s4):
    pair = s3s4
    omega = Cocycle.trivial(pair.gamma)
    k_label = pair.labels()[1]
    triv_cls = [c for c in irreducibles(pair.little(k_label)) if c.dim == 1][0]
    obj = make(pair, omega, k_label, realize(triv_cls))
    ext = to_ext_hecke(obj)
    assert ext.support == {k_label: {triv_cls: 1}}
    # move delta somewhere else in the double coset and come back
    other = sorted(pair.cosets.coset(k_label).elements)[7]
    c1, c2 = pair.decomposition(k_label, other)
    from heckefuse.projrep import transport
    moved_rep = transport(realize(triv_cls), pair.little_of_element(other),
                          lambda t: t.conjugate(c2))
    moved = make(pair, omega, other, moved_rep)
    assert to_ext_hecke(moved) == ext


def test_to_ext_hecke_rejects_twisted(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    obj = identity_object(pair, omega)
    with pytest.raises(ValueError):
        to_ext_hecke(obj)


# ------------------------------------------------------------ determinism

def test_canonical_sums_are_representative_independent(d4_klein):
    pair = d4_klein
    omega = klein_cocycle(pair)
    objs = elementary_basis(pair, omega)
    baseline = fuse_objects(objs[4], objs[5]).terms
    for trial in range(3):
        shuffled = pair.with_choices(random.Random(trial))
        objs2 = elementary_basis(shuffled, klein_cocycle(shuffled))
        got = fuse_objects(objs2[4], objs2[5]).terms
        assert got == baseline

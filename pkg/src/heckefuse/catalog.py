"""Bundled pair/cocycle catalog, catalog-file parsing, and fusion tables.

Catalog text format, one record per pair, records separated by blank lines::

    name = D4_klein
    degree = 4
    G = ["(0 1 2 3)", "(1 3)"]
    Gamma = ["(0 1)(2 3)", "(0 2)(1 3)"]
    omega = heisenberg 2 1
    note = Klein four inside the dihedral group, with the nontrivial class

Cycle notation uses whitespace-separated 0-based points, fixed points
omitted.  Arithmetic backends are declared with ``kind = gl2`` or
``kind = bc`` instead of generators.  A "heisenberg N k" cocycle requires
the subgroup to be (Z/N)^2 generated by the two listed generators, which
become the coordinate axes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .cocycle import Cocycle, bilinear_cocycle
from .exthecke import FinitePair, basis, dims, fuse
from .hecke import BostConnesHecke, GL2Hecke, modular_lambda
from .permcore import DEFAULT_MAX_ORDER, FiniteGroup, Perm
from .projrep import irreducibles


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str = "finite"            # finite | gl2 | bc
    degree: int = 0
    g_gens: tuple = ()
    gamma_gens: tuple = ()
    omega: Optional[tuple] = None   # ("heisenberg", n, k) or ("table", modulus, triples)
    note: str = ""


BUILTIN = {
    "S3_in_S4": CatalogEntry(
        name="S3_in_S4", degree=4,
        g_gens=("(0 1)", "(0 1 2 3)"), gamma_gens=("(0 1)", "(0 1 2)"),
        note="point stabilizer inside the symmetric group on four points"),
    "Z3_regular": CatalogEntry(
        name="Z3_regular", degree=3,
        g_gens=("(0 1 2)",), gamma_gens=("(0 1 2)",),
        note="cyclic group acting regularly; interesting for outer symmetry"),
    "D4_klein": CatalogEntry(
        name="D4_klein", degree=4,
        g_gens=("(0 1 2 3)", "(1 3)"), gamma_gens=("(0 1)(2 3)", "(0 2)(1 3)"),
        omega=("heisenberg", 2, 1),
        note="Klein four inside the dihedral group, nontrivial cocycle class"),
    "Heis3": CatalogEntry(
        name="Heis3", degree=6,
        g_gens=("(0 1 2)", "(3 4 5)"), gamma_gens=("(0 1 2)", "(3 4 5)"),
        omega=("heisenberg", 3, 1),
        note="(Z/3)^2 with the generating cocycle class; one 3-dim irreducible"),
    "gl2": CatalogEntry(
        name="gl2", kind="gl2",
        note="SL(2,Z) inside rational matrices of positive determinant"),
    "bc": CatalogEntry(
        name="bc", kind="bc",
        note="integer translations inside the rational ax+b group"),
}


def parse_omega_spec(text: str):
    """Either "heisenberg N k" or "table m g h e; g h e; ..." (indices into
    the canonical element order of the subgroup; unlisted pairs are zero)."""
    parts = text.split()
    if parts and parts[0] == "heisenberg":
        if len(parts) != 3:
            raise ValueError(f"heisenberg spec needs N and k: {text!r}")
        return ("heisenberg", int(parts[1]), int(parts[2]))
    if parts and parts[0] == "table":
        body = text.split(None, 1)[1]
        m_text, _, triples_text = body.partition(" ")
        modulus = int(m_text)
        triples = []
        for chunk in triples_text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            g, h, e = (int(t) for t in chunk.split())
            triples.append((g, h, e))
        return ("table", modulus, tuple(triples))
    raise ValueError(f"unsupported cocycle spec: {text!r}")


def parse_catalog(text: str) -> dict[str, CatalogEntry]:
    entries = {}
    block: dict[str, str] = {}

    def flush():
        if not block:
            return
        name = block.get("name")
        if not name:
            raise ValueError("catalog record without a name")
        kind = block.get("kind", "finite")
        if kind in ("gl2", "bc"):
            entries[name] = CatalogEntry(name=name, kind=kind,
                                         note=block.get("note", ""))
            block.clear()
            return
        omega = parse_omega_spec(block["omega"]) if "omega" in block else None
        entries[name] = CatalogEntry(
            name=name, kind="finite", degree=int(block["degree"]),
            g_gens=tuple(json.loads(block["G"])),
            gamma_gens=tuple(json.loads(block["Gamma"])),
            omega=omega, note=block.get("note", ""))
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            if not line:
                flush()
            continue
        if "=" not in line:
            raise ValueError(f"catalog line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        block[key.strip()] = value.strip()
    flush()
    return entries


def build_pair(entry: CatalogEntry, max_order: int = DEFAULT_MAX_ORDER,
               seed: int = 0) -> FinitePair:
    if entry.kind != "finite":
        raise ValueError(f"{entry.name} is not a finite pair")
    g_gens = [Perm.parse(entry.degree, s) for s in entry.g_gens]
    gamma_gens = [Perm.parse(entry.degree, s) for s in entry.gamma_gens]
    group = FiniteGroup.generate(entry.degree, g_gens, max_order)
    gamma_closure = FiniteGroup.generate(entry.degree, gamma_gens, max_order)
    gamma = group.subgroup(gamma_closure.elements)
    return FinitePair(group, gamma, name=entry.name, seed=seed)


def build_omega_from_spec(spec, entry: CatalogEntry,
                          pair: FinitePair) -> Cocycle:
    tag = spec[0]
    if tag == "heisenberg":
        _, n, k = spec
        a, b = (Perm.parse(entry.degree, s) for s in entry.gamma_gens[:2])
        coords = {}
        for x in range(n):
            for y in range(n):
                coords[(a ** x) * (b ** y)] = (x, y)
        if len(coords) != len(pair.gamma):
            raise ValueError(
                f"{entry.name}: subgroup is not (Z/{n})^2 on the listed generators")
        return bilinear_cocycle(pair.gamma, coords, n, k)
    if tag == "table":
        _, modulus, triples = spec
        n = len(pair.gamma)
        table = [[0] * n for _ in range(n)]
        for g, h, e in triples:
            table[g][h] = e
        return Cocycle(pair.gamma, modulus, table)
    raise ValueError(f"unknown cocycle spec {spec!r}")


def build_omega(entry: CatalogEntry, pair: FinitePair) -> Optional[Cocycle]:
    if entry.omega is None:
        return None
    return build_omega_from_spec(entry.omega, entry, pair)


def build_backend(entry: CatalogEntry, max_order: int = DEFAULT_MAX_ORDER,
                  seed: int = 0):
    if entry.kind == "gl2":
        return GL2Hecke()
    if entry.kind == "bc":
        return BostConnesHecke()
    return build_pair(entry, max_order, seed).hecke()


def fusion_table(pair: FinitePair) -> dict:
    """The complete fusion data of the extended algebra, JSON-ready.

    Multiplicities are exact integers; representation classes serialize as
    dimension plus rounded character; lambda values are fraction strings.
    """
    hk = pair.hecke()
    generators = basis(pair)
    class_index = {
        label: {cls: i for i, cls in enumerate(irreducibles(pair.little(label)))}
        for label in pair.labels()}

    def descriptor(label, cls) -> str:
        return f"{hk.label_str(label)}:{class_index[label][cls]}"

    basis_json = []
    for key, el in generators:
        (label, parts), = el.support.items()
        (cls, _), = parts.items()
        left, right = dims(el)
        basis_json.append({
            "key": key,
            "label": hk.label_str(label),
            "class_index": class_index[label][cls],
            "repclass": cls.to_json(),
            "dim_left": left,
            "dim_right": right,
        })
    known = {key for key, _ in generators}
    products = []
    for kx, x in generators:
        for ky, y in generators:
            result = fuse(x, y)
            terms = []
            for label in sorted(result.support, key=lambda l: l.images):
                for cls in sorted(result.support[label], key=lambda c: c.sort_key()):
                    z = descriptor(label, cls)
                    assert z in known  # the table is closed over the basis
                    terms.append({"z": z, "mult": result.support[label][cls]})
            products.append({"x": kx, "y": ky, "terms": terms})
    lambdas = [{"label": hk.label_str(label),
                "value": str(modular_lambda(hk, label))}
               for label in pair.labels()]
    return {
        "schema": 1,
        "pair": pair.name,
        "group_order": len(pair.group),
        "subgroup_order": len(pair.gamma),
        "basis": basis_json,
        "products": products,
        "lambda": lambdas,
    }

"""Shared JSON descriptor for codes, localities and regenerating metadata.

The on-disk form is pure integers and strings, so a save/load/save cycle is
bit-exact.  Local regenerating codes are stored as parameter+repair blocks;
their generator matrices are rebuilt by puncturing the global code to the
corresponding support, which spans the same local codewords.
"""

from __future__ import annotations

import json

import numpy as np

from .constructions import ConstructedCode
from .field import FiniteField
from .linalg import Matrix
from .regen import (
    AlignedRepair,
    MdsRepair,
    PmRepair,
    RbtRepair,
    RegenCode,
    RegenParams,
)
from .vectorcode import LocalityStructure, VectorCode


def _repair_to_dict(info):
    if isinstance(info, RbtRepair):
        return {"kind": "rbt", "edge_map": [list(e) for e in info.edge_nodes]}
    if isinstance(info, PmRepair):
        return {
            "kind": "pm",
            "phi": info.phi.data.tolist(),
            "lam": list(info.lam),
            "node_map": list(info.node_map),
            "virtual": list(info.virtual),
        }
    if isinstance(info, AlignedRepair):
        return {
            "kind": "aligned",
            "table": [
                [f, list(hs), [list(c) for c in coeffs]]
                for (f, hs), coeffs in sorted(info.table.items())
            ],
        }
    if isinstance(info, MdsRepair):
        return {"kind": "mds"}
    raise TypeError(f"cannot serialize repair info {type(info).__name__}")


def _repair_from_dict(d, field):
    kind = d["kind"]
    if kind == "rbt":
        edge_nodes = tuple(tuple(e) for e in d["edge_map"])
        n_nodes = max(max(e) for e in edge_nodes) + 1
        eid = {e: i for i, e in enumerate(edge_nodes)}
        node_edges = tuple(
            tuple(eid[tuple(sorted((i, j)))] for j in range(n_nodes) if j != i)
            for i in range(n_nodes)
        )
        return RbtRepair(edge_nodes, node_edges)
    if kind == "pm":
        return PmRepair(
            Matrix(field, d["phi"]),
            tuple(d["lam"]),
            tuple(d["node_map"]),
            tuple(d["virtual"]),
        )
    if kind == "aligned":
        table = {
            (f, tuple(hs)): tuple(tuple(c) for c in coeffs)
            for f, hs, coeffs in d["table"]
        }
        return AlignedRepair(table)
    if kind == "mds":
        return MdsRepair()
    raise ValueError(f"unknown repair kind {kind!r}")


def _regen_to_dict(regen: RegenCode):
    p = regen.params
    return {
        "n": p.n, "k": p.k, "d": p.d, "alpha": p.alpha, "beta": p.beta,
        "B": p.B, "point": p.point,
        "repair": _repair_to_dict(regen.repair),
    }


def _regen_from_dict(d, code: VectorCode) -> RegenCode:
    params = RegenParams(d["n"], d["k"], d["d"], d["alpha"], d["beta"], d["B"])
    return RegenCode(params, code, _repair_from_dict(d["repair"], code.field))


def to_dict(built: ConstructedCode) -> dict:
    code = built.code
    loc = built.locality
    meta = {
        "family": built.family,
        "claimed_dmin": built.claimed_dmin,
        "params": dict(built.params),
        "construction": dict(code.metadata),
        "regen": _regen_to_dict(built.regen) if built.regen else None,
        "local_regen": (
            [_regen_to_dict(lr) if lr else None for lr in built.local_regen]
            if built.local_regen
            else None
        ),
    }
    return {
        "field": {
            "p": code.field.p,
            "m": code.field.m,
            "poly": list(code.field.poly) if code.field.poly else None,
        },
        "n": code.n,
        "alpha": code.alpha,
        "K": code.K,
        "generator": code.generator.data.reshape(-1).tolist(),
        "locality": (
            {
                "r": loc.r,
                "delta": loc.delta,
                "supports": [list(s) for s in loc.supports],
                "kind": loc.kind,
                "exact": loc.exact,
            }
            if loc
            else None
        ),
        "metadata": meta,
    }


def from_dict(data: dict) -> ConstructedCode:
    f = data["field"]
    field = FiniteField(f["p"], f["m"], f["poly"])
    n, alpha, kk = data["n"], data["alpha"], data["K"]
    gen = Matrix(field, np.array(data["generator"], dtype=np.int64).reshape(kk, n * alpha))
    meta = data.get("metadata", {})
    code = VectorCode(field, n, alpha, gen, metadata=meta.get("construction", {}))
    loc = None
    if data.get("locality"):
        ld = data["locality"]
        loc = LocalityStructure(ld["r"], ld["delta"],
                                tuple(tuple(s) for s in ld["supports"]),
                                ld["kind"], ld.get("exact", False))
    regen = _regen_from_dict(meta["regen"], code) if meta.get("regen") else None
    local_regen = None
    if meta.get("local_regen") and loc is not None:
        local_regen = tuple(
            _regen_from_dict(block, code.puncture(support)) if block else None
            for block, support in zip(meta["local_regen"], loc.supports)
        )
    return ConstructedCode(code, loc, meta.get("family", "descriptor"),
                           meta.get("claimed_dmin"), local_regen=local_regen,
                           regen=regen, params=meta.get("params", {}))


def save(built: ConstructedCode, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_dict(built), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load(path) -> ConstructedCode:
    with open(path) as fh:
        return from_dict(json.load(fh))

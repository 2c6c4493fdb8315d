import json

import numpy as np

from localregen import descriptor
from localregen.constructions import (
    ConstructedCode,
    rbt_mbr_local,
    sum_parity_msr,
)
from localregen.field import FiniteField
from localregen.regen import pm_msr_construct, rbt_mbr_construct, regen_repair
from localregen.scalar import parity_split_construct

GF7 = FiniteField(7)
GF11 = FiniteField(11)
GF16 = FiniteField(2, 4)


def roundtrip(built, tmp_path, name):
    path = tmp_path / name
    descriptor.save(built, path)
    loaded = descriptor.load(path)
    again = tmp_path / ("again_" + name)
    descriptor.save(loaded, again)
    assert json.loads(path.read_text()) == json.loads(again.read_text())
    return loaded


def test_roundtrip_scalar_code(tmp_path):
    code, loc = parity_split_construct(4, 2, 3, GF11)
    built = ConstructedCode(code, loc, "parity_split", 3)
    loaded = roundtrip(built, tmp_path, "ps.json")
    assert loaded.code.generator == code.generator
    assert loaded.locality == loc
    assert loaded.claimed_dmin == 3


def test_roundtrip_regen_with_edge_map(tmp_path):
    pent = rbt_mbr_construct(5, 3, GF11)
    built = ConstructedCode(pent.code, None, "rbt_mbr", 3, regen=pent)
    loaded = roundtrip(built, tmp_path, "pentagon.json")
    assert loaded.regen.repair.edge_nodes == pent.repair.edge_nodes
    cw = loaded.regen.encode(np.arange(9))
    tr = regen_repair(loaded.regen, 2, (0, 1, 3, 4), cw)
    assert tr.success


def test_roundtrip_aligned_table(tmp_path):
    pm = pm_msr_construct(5, 2, 3, GF7, seed=0)
    built = ConstructedCode(pm.code, None, "pm_msr", 4, regen=pm)
    loaded = roundtrip(built, tmp_path, "aligned.json")
    assert loaded.regen.repair.table == pm.repair.table
    cw = loaded.regen.encode(np.arange(4))
    tr = regen_repair(loaded.regen, 0, (1, 2, 4), cw)
    assert tr.success


def test_roundtrip_local_regen_blocks(tmp_path):
    built = sum_parity_msr(2, 3, 2, 1, GF7, d=3)
    loaded = roundtrip(built, tmp_path, "c1.json")
    assert len(loaded.local_regen) == 2
    rng = np.random.default_rng(0)
    cw = loaded.code.encode(rng.integers(0, 7, size=8))
    support = loaded.locality.supports[1]
    tr = regen_repair(loaded.local_regen[1], 0, (1, 2, 3), cw[list(support)])
    assert tr.success


def test_roundtrip_extension_field(tmp_path):
    built = rbt_mbr_local(2, 2, 2, 1, GF16)
    loaded = roundtrip(built, tmp_path, "c3.json")
    assert loaded.field == GF16
    assert loaded.field.poly == GF16.poly
    assert loaded.code.min_distance() == 3

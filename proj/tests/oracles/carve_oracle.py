#!/usr/bin/env python3
# Copyright (c) 2026, The mcs authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force carve oracle.

Independent of the C++ code path: builds the minimally sized supercell only to
locate the carve center (supercell center of mass), then enumerates a generously
oversized block of lattice translations around it and applies the closed-ball
predicate. Prints per-(material, k) atom counts, multiplicities and baseline
box metrics.
"""
import itertools
import math
import sys

import numpy as np

MASS = {"Ag": 107.8682, "Au": 196.96657, "Pb": 207.2, "S": 32.06, "Zn": 65.38, "O": 15.999}
A_AG = 4.0857
U_ZNO = 0.3817

FCC = [(0, 0, 0), (0.5, 0.5, 0), (0.5, 0, 0.5), (0, 0.5, 0.5)]


def cell(material):
    if material in ("Ag", "Au"):
        a = {"Ag": 4.0857, "Au": 4.0780}[material]
        return a, np.eye(3) * a, [(material, f) for f in FCC]
    if material == "PbS":
        a = 5.9362
        motif = [("Pb", f) for f in FCC]
        motif += [("S", ((f[0] + 0.5) % 1, f[1], f[2])) for f in FCC]
        return a, np.eye(3) * a, motif
    a, c = 3.2495, 5.2069
    A = np.array([[a, -a / 2, 0], [0, a * math.sqrt(3) / 2, 0], [0, 0, c]])
    motif = [("Zn", (1 / 3, 2 / 3, 0)), ("Zn", (2 / 3, 1 / 3, 0.5)),
             ("O", (1 / 3, 2 / 3, U_ZNO)), ("O", (2 / 3, 1 / 3, 0.5 + U_ZNO))]
    return a, A, motif


def multiplicity(a, A, radius):
    vol = abs(np.linalg.det(A))
    s = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        width = vol / np.linalg.norm(np.cross(A[:, j], A[:, k]))
        margin = np.linalg.norm(A[:, i])
        s.append(max(1, math.ceil((2 * radius + margin) / width - 1e-12)))
    return s


def block(A, motif, lo, hi):
    species, pos = [], []
    for n in itertools.product(*(range(l, h) for l, h in zip(lo, hi))):
        for sp, f in motif:
            species.append(sp)
            pos.append(A @ (np.array(n) + np.array(f)))
    return species, np.array(pos)


def com(species, pos):
    m = np.array([MASS[s] for s in species])
    return (m[:, None] * pos).sum(0) / m.sum()


def carve(material, k, ref):
    a, A, motif = cell(material)
    radius = 0.2 * k * (A_AG if ref == "ag" else a)
    box = multiplicity(a, A, radius)
    sp_in, pos_in = block(A, motif, [0, 0, 0], box)
    r0 = com(sp_in, pos_in)
    # oversized block: pad on every side far beyond the ball
    sp_big, pos_big = block(A, motif, [-4, -4, -4], [b + 4 for b in box])
    dist = np.linalg.norm(pos_big - r0, axis=1)
    keep = dist <= radius
    inside = int((np.linalg.norm(pos_in - r0, axis=1) <= radius).sum())
    assert inside == int(keep.sum()), (material, k, ref, inside, int(keep.sum()))
    margin = np.abs(dist - radius).min()
    assert margin > 1e-6, (material, k, ref, margin)
    return radius, box, [(s, p) for s, p, kk in zip(sp_big, pos_big, keep) if kk]


def main():
    for ref in ("material", "ag"):
        print(f"# radius reference: {ref}")
        for material in ("Ag", "Au", "PbS", "ZnO"):
            row = []
            for k in range(6, 11):
                radius, box, atoms = carve(material, k, ref)
                row.append((len(atoms), box))
            print(material, row)
    print("# baseline goldens (per-material): material k N a b c V nn_mean")
    for material in ("Ag", "Au", "PbS", "ZnO"):
        for k in range(6, 11):
            radius, box, atoms = carve(material, k, "material")
            pos = np.array([r for _, r in atoms])
            m = np.array([MASS[s] for s, _ in atoms])
            pos = pos - (m[:, None] * pos).sum(0) / m.sum()
            ext = pos.max(0) - pos.min(0)
            d = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=2)
            np.fill_diagonal(d, np.inf)
            print(material, k, len(atoms), " ".join("%.9f" % e for e in ext),
                  "%.9f" % np.prod(ext), "%.9f" % d.min(1).mean())


if __name__ == "__main__":
    sys.exit(main())

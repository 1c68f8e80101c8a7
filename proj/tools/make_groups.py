#!/usr/bin/env python3
"""Regenerate the shipped group job files under data/groups/.

Every group is built from first principles (matrix actions on projective
points or vectors, affine actions, regular actions); sympy is used only to
cross-check orders and to pick Sylow subgroups and p'-subgroups.
"""
import itertools
import json
import os
import sys

from sympy.combinatorics import Permutation, PermutationGroup

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "groups")


class GF:
    """GF(p^k) with elements as ints 0..q-1 (base-p digits, low first)."""

    def __init__(self, p, minpoly):
        self.p, self.k = p, len(minpoly) - 1
        self.minpoly = minpoly
        self.q = p ** self.k
        self.mul_tab = [[self._mul(a, b) for b in range(self.q)] for a in range(self.q)]

    def digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def undigits(self, d):
        return sum(c * self.p ** i for i, c in enumerate(d))

    def add(self, a, b):
        return self.undigits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.undigits([(-x) % self.p for x in self.digits(a)])

    def _mul(self, a, b):
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d]
            if c:
                for i in range(self.k + 1):
                    prod[d - self.k + i] = (prod[d - self.k + i] - c * self.minpoly[i]) % self.p
        return self.undigits(prod[: self.k])

    def mul(self, a, b):
        return self.mul_tab[a][b]

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r


def normalize(F, v):
    for x in v:
        if x:
            inv = next(y for y in range(1, F.q) if F.mul(x, y) == 1)
            return tuple(F.mul(inv, c) for c in v)
    raise ValueError("zero vector")


def vec_mat(F, v, m):
    n = len(m[0])
    out = []
    for j in range(n):
        s = 0
        for i, x in enumerate(v):
            s = F.add(s, F.mul(x, m[i][j]))
        out.append(s)
    return tuple(out)


def perm_from_action(points, act):
    index = {pt: i for i, pt in enumerate(points)}
    return [index[act(pt)] for pt in points]


def to_json_perm(img):
    return [i + 1 for i in img]


def group_of(gens):
    return PermutationGroup([Permutation(g) for g in gens])


def subgroup_gens(H):
    gens = [list(g.array_form) for g in H.generators if not g.is_Identity]
    return gens


def write(name, degree, gens, p, order, pprime, sylow, expected, provenance,
          field=None, extra=None):
    G = group_of(gens)
    assert G.order() == order, (name, G.order(), order)
    for sub in (pprime, sylow):
        if sub is not None:
            for h in sub:
                assert G.contains(Permutation(h)), name
    job = {
        "name": name,
        "provenance": provenance,
        "degree": degree,
        "order": order,
        "generators": [to_json_perm(g) for g in gens],
        "p": p,
    }
    if field:
        job["field"] = field
    job["pprime_subgroup"] = [to_json_perm(h) for h in pprime]
    if sylow is not None:
        job["sylow_subgroup"] = [to_json_perm(h) for h in sylow]
    if extra:
        job.update(extra)
    if expected:
        job["expected"] = expected
    path = os.path.join(OUT, name + ".json")
    with open(path, "w") as fh:
        items = ["  %s: %s" % (json.dumps(k), json.dumps(v)) for k, v in job.items()]
        fh.write("{\n" + ",\n".join(items) + "\n}\n")
    print(name, "order", order, "degree", degree)


def sylow(G, p):
    return subgroup_gens(G.sylow_subgroup(p))


def find_subgroup(G, order, candidates):
    """First subgroup of the requested order generated by <= 2 candidate elements."""
    for a in candidates:
        for b in candidates:
            H = PermutationGroup([a, b])
            if H.order() == order:
                return subgroup_gens(H)
    raise RuntimeError("subgroup of order %d not found" % order)


def elements_of_order(G, orders):
    return [g for g in G.generate_schreier_sims() if g.order() in orders]


def main():
    os.makedirs(OUT, exist_ok=True)

    # C3 and S3 on 3 points.
    write("c3", 3, [[1, 2, 0]], 3, 3, [], [[1, 2, 0]],
          {"loewy_length": {"1a": 3}, "c11": 3, "llprop_case": "i"},
          "cyclic group acting regularly on 3 points")
    write("s3", 3, [[1, 2, 0], [1, 0, 2]], 3, 6, [[1, 0, 2]], [[1, 2, 0]],
          {"principal_block_dims": [1, 1], "cartan": [[2, 1], [1, 2]], "cartan_det": 3,
           "loewy_length": {"1a": 3, "1b": 3}, "llprop_case": "ii_a"},
          "symmetric group on 3 points; p'-subgroup generated by a transposition")

    # SL2(5) on the 24 nonzero vectors of GF(5)^2.
    F5 = GF(5, [0, 1])
    vecs = [v for v in itertools.product(range(5), repeat=2) if any(v)]
    mats = [[[1, 1], [0, 1]], [[0, 4], [1, 0]]]
    gens = [perm_from_action(vecs, lambda v, m=m: vec_mat(F5, v, m)) for m in mats]
    G = group_of(gens)
    q8 = find_subgroup(G, 8, elements_of_order(G, {4}))
    write("sl2_5", 24, gens, 5, 120, q8, sylow(G, 5),
          {"principal_block_dims": [1, 3], "loewy_length": {"1a": 3},
           "heart_indecomposable": {"1a": True},
           "positive_defect_block_sizes": [2, 2], "defect_zero_dims": [5],
           "decomposable_heart_count": 2, "llprop_case": "ii_b"},
          "SL(2,5) acting on nonzero row vectors of GF(5)^2; p'-subgroup Q8")

    # PSL2(8) and PGammaL2(8) on the 9 points of PG(1,8); GF(8) = GF(2)[x]/(x^3+x+1).
    F8 = GF(2, [1, 1, 0, 1])
    pts = [normalize(F8, v) for v in [(1, a) for a in range(8)] + [(0, 1)]]
    w = 2  # the class of x, a primitive element
    mats = [[[1, 1], [0, 1]], [[w, 0], [0, F8.pow(w, 6)]], [[0, 1], [1, 0]]]
    gens = [perm_from_action(pts, lambda v, m=m: normalize(F8, vec_mat(F8, v, m))) for m in mats]
    G = group_of(gens)
    assert G.order() == 504
    gens = subgroup_gens(G) if len(gens) > 2 else gens
    frob = perm_from_action(pts, lambda v: normalize(F8, tuple(F8.mul(c, c) for c in v)))
    syl2 = sylow(G, 2)
    write("psl2_8", 9, [list(g.array_form) for g in G.generators], 3, 504, syl2, sylow(G, 3),
          {"principal_block_dims": [1, 7], "loewy_length": {"1a": 3, "7a": 5},
           "heart_indecomposable": {"1a": True, "7a": False}},
          "PSL(2,8) on the projective line over GF(8); p'-subgroup a Sylow 2-subgroup")
    G3 = PermutationGroup(list(G.generators) + [Permutation(frob)])
    write("psl2_8_3", 9, [list(g.array_form) for g in G3.generators], 3, 1512,
          sylow(G3, 2), sylow(G3, 3),
          {"principal_block_dims": [1, 7], "loewy_length": {"1a": 5, "7a": 7},
           "heart_indecomposable": {"1a": True, "7a": True}},
          "PSL(2,8) extended by the Frobenius automorphism of GF(8), on PG(1,8)")

    # S6, A5, SL3(2).
    s6 = [[1, 2, 3, 4, 5, 0], [1, 0, 2, 3, 4, 5]]
    G = group_of(s6)
    write("s6", 6, s6, 2, 720, sylow(G, 3), sylow(G, 2),
          {"principal_block_dims": [1, 4, 4],
           "loewy_length": {"1a": 10, "4a": 10, "4b": 10},
           "heart_indecomposable": {"1a": True, "4a": True, "4b": True},
           "defect_zero_dims": [16], "c_invariant": {"16a": 1}},
          "symmetric group on 6 points; p'-subgroup a Sylow 3-subgroup")
    a5 = [[1, 2, 0, 3, 4], [0, 1, 3, 4, 2]]
    G = group_of(a5)
    c5 = subgroup_gens(PermutationGroup([Permutation([1, 2, 3, 4, 0])]))
    write("a5", 5, a5, 2, 60, c5, sylow(G, 2),
          {"heart_indecomposable": {"1a": False}},
          "alternating group on 5 points (= SL(2,4)); over GF(4) so that it splits",
          field={"p": 2, "deg": 2})
    # SL3(2) acting on the 7 nonzero vectors of GF(2)^3.
    F2 = GF(2, [0, 1])
    v7 = [v for v in itertools.product(range(2), repeat=3) if any(v)]
    mats = [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]]
    gens = [perm_from_action(v7, lambda v, m=m: vec_mat(F2, v, m)) for m in mats]
    G = group_of(gens)
    f21 = find_subgroup(G, 21, elements_of_order(G, {3, 7}))
    write("sl3_2", 7, gens, 2, 168, f21, sylow(G, 2),
          {"heart_indecomposable": {"1a": False}},
          "SL(3,2) on the nonzero vectors of GF(2)^3; p'-subgroup a Frobenius group 7:3")

    # SU3(3) and G2(2) = SU3(3):2 on the 28 isotropic points of PG(2,9),
    # Hermitian form x1^4 + x2^4 + x3^4; GF(9) = GF(3)[i]/(i^2+1).
    F9 = GF(3, [1, 0, 1])
    conj = lambda a: F9.pow(a, 3)
    herm = lambda u, v: F9.add(F9.add(F9.mul(u[0], conj(v[0])), F9.mul(u[1], conj(v[1]))),
                               F9.mul(u[2], conj(v[2])))
    allv = [v for v in itertools.product(range(9), repeat=3) if any(v)]
    iso = sorted({normalize(F9, v) for v in allv if herm(v, v) == 0})
    assert len(iso) == 28
    unit = [v for v in allv if herm(v, v) == 1]

    def det3(m):
        a = F9
        t1 = a.mul(m[0][0], a.add(a.mul(m[1][1], m[2][2]), a.neg(a.mul(m[1][2], m[2][1]))))
        t2 = a.mul(m[0][1], a.add(a.mul(m[1][0], m[2][2]), a.neg(a.mul(m[1][2], m[2][0]))))
        t3 = a.mul(m[0][2], a.add(a.mul(m[1][0], m[2][1]), a.neg(a.mul(m[1][1], m[2][0]))))
        return a.add(a.add(t1, a.neg(t2)), t3)

    def unitaries():
        # deterministic enumeration of a few SU(3,3) elements
        for r0 in unit:
            for r1 in unit:
                if herm(r0, r1) != 0:
                    continue
                for r2 in unit:
                    if herm(r0, r2) == 0 and herm(r1, r2) == 0:
                        m = [list(r0), list(r1), list(r2)]
                        if det3(m) == 1:
                            yield m

    act = lambda m: perm_from_action(iso, lambda v: normalize(F9, vec_mat(F9, v, m)))
    found = None
    cands = []
    for idx, m in enumerate(unitaries()):
        cands.append(act(m))
        if idx > 400:
            break
    for a in cands[::7]:
        for b in cands[::11]:
            if group_of([a, b]).order() == 6048:
                found = [a, b]
                break
        if found:
            break
    assert found
    G = group_of(found)
    syl3 = sylow(G, 3)
    frob = perm_from_action(iso, lambda v: normalize(F9, tuple(conj(c) for c in v)))
    write("su3_3", 28, found, 2, 6048, syl3, sylow(G, 2),
          {"principal_block_dims": [1, 6, 14],
           "loewy_length": {"1a": 19, "6a": 19, "14a": 19},
           "heart_indecomposable": {"1a": True, "6a": True, "14a": True},
           "kmu_pass": {"6a": True, "14a": True}},
          "SU(3,3) on the 28 isotropic points of the unitary plane over GF(9); "
          "p'-subgroup a Sylow 3-subgroup (order 27)")
    G2 = group_of(found + [frob])
    write("g2_2", 28, found + [frob], 2, 12096, sylow(G2, 3), sylow(G2, 2),
          {"principal_block_dims": [1, 6, 14],
           "loewy_length": {"1a": 20, "6a": 20, "14a": 20},
           "heart_indecomposable": {"1a": True, "6a": True, "14a": True},
           "kmu_pass": {"6a": True, "14a": True}},
          "G2(2) = SU(3,3):2 (field automorphism adjoined) on the 28 isotropic points; "
          "p'-subgroup a Sylow 3-subgroup (order 27)")

    # C3^2:Q8, affine action on GF(9) with Q8 <= GL(2,3).
    F3 = GF(3, [0, 1])
    plane = list(itertools.product(range(3), repeat=2))
    qi = [[0, 2], [1, 0]]
    qj = [[1, 1], [1, 2]]
    tr = lambda v: ((v[0] + 1) % 3, v[1])
    gens = [perm_from_action(plane, lambda v, m=m: vec_mat(F3, v, m)) for m in (qi, qj)]
    gens.append(perm_from_action(plane, tr))
    G = group_of(gens)
    assert G.order() == 72
    q8 = [gens[0], gens[1]]
    assert group_of(q8).order() == 8
    n9 = subgroup_gens(PermutationGroup([Permutation(gens[2]),
                                         Permutation(perm_from_action(plane, lambda v: (v[0], (v[1] + 1) % 3)))]))
    write("c3c3_q8", 9, gens, 3, 72, q8, n9,
          {"c11": 2, "loewy_length": {"1a": 5}, "ll_b0": 5},
          "C3^2:Q8 acting affinely on GF(3)^2, Q8 = <[[0,-1],[1,0]], [[1,1],[1,-1]]>",
          extra={"normal_subgroup": [to_json_perm(h) for h in n9]})

    # Q8 regular on 8 points, D8 on 4 points.
    nonzero = [v for v in plane if any(v)]
    q8g = [perm_from_action(nonzero, lambda v, m=m: vec_mat(F3, v, m)) for m in (qi, qj)]
    assert group_of(q8g).order() == 8
    write("q8", 8, q8g, 3, 8, [to for to in q8g], [],
          {"defect_zero_dims": [1, 1, 1, 1, 2]},
          "quaternion group acting regularly on the nonzero vectors of GF(3)^2; a 3'-group")
    d8 = [[1, 2, 3, 0], [0, 3, 2, 1]]
    write("d8", 4, d8, 2, 8, [], d8, {"loewy_length": {"1a": 5}},
          "dihedral group of order 8 on the vertices of a square")


if __name__ == "__main__":
    sys.exit(main())

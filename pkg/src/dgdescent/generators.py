"""Seeded random instances: graded maps, A∞-algebras (square-zero extensions),
small dg-categories and holim seeds over Čech systems."""

from itertools import product

from .field import QQ
from .graded import GradedSpace, GradedMap, tensor_space
from .ainfty import AInftyAlgebra
from .linalg import axpy

WINDOW = (-3, 3)


def random_space(rng, field=QQ, max_dim=3, window=WINDOW, name="V"):
    dim = rng.randint(1, max_dim)
    lo, hi = window
    basis = [("%s%d" % (name.lower(), i), rng.randint(lo, hi)) for i in range(dim)]
    return GradedSpace(name, basis, window=window, field=field)


def random_map(rng, source, target, degree, field=QQ, density=0.6, lo=-3, hi=3):
    cols = {}
    for j in range(source.dim):
        for i in range(target.dim):
            if target.degrees[i] - source.degrees[j] == degree and rng.random() < density:
                c = field.random(rng, lo, hi)
                if c:
                    cols.setdefault(j, {})[i] = c
    return GradedMap(source, target, degree, cols, check=False)


# ------------------------------------------------------------ A∞ algebras

def _assoc_catalog(rng):
    """(basis degrees, product table) of a small associative graded algebra."""
    kind = rng.choice(["dual", "cubic", "triangular", "split", "line"])
    if kind == "dual":
        d = rng.randint(-3, 3)
        return [0, d], {(0, 0): 0, (0, 1): 1, (1, 0): 1}
    if kind == "cubic":
        d = rng.choice([-1, 0, 1])
        return [0, d, 2 * d], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2, (1, 1): 2}
    if kind == "triangular":
        d = rng.randint(-3, 3)
        # e11, e22, e12
        return [0, 0, d], {(0, 0): 0, (1, 1): 1, (0, 2): 2, (2, 1): 2}
    if kind == "split":
        return [0, 0], {(0, 0): 0, (1, 1): 1}
    return [0], {(0, 0): 0}


def random_ainfty(rng, field=QQ, max_dim=4, name="B"):
    """A square-zero extension V ⊕ W: V associative, W annihilated, with
    m_2 = μ_V + g∘μ_V and m_3 = h(μ_V⊗1) - h(1⊗μ_V), plus an optional d_W."""
    vdeg, table = _assoc_catalog(rng)
    nv = len(vdeg)
    room = max_dim - nv
    nw = room if rng.random() < 0.7 else rng.randint(0, room)
    lo, hi = WINDOW
    targets = [vdeg[a] + vdeg[b] - 1 for a in range(nv) for b in range(nv)
               if lo + 1 <= vdeg[a] + vdeg[b] - 1 <= hi]
    wdeg = []
    if nw and targets:
        t = rng.choice(targets)
        wdeg.append(t)
        if nw >= 2:
            wdeg.append(t - 1)
    while len(wdeg) < nw:
        wdeg.append(rng.randint(lo, hi))
    basis = [("v%d" % i, d) for i, d in enumerate(vdeg)] + [("w%d" % i, d) for i, d in enumerate(wdeg)]
    B = GradedSpace(name, basis, window=WINDOW, field=field)
    n = B.dim
    W = list(range(nv, n))
    # d_W: a random degree +1 map on W, dropped unless d^2 = 0
    dcols = {}
    if nw >= 2 and rng.random() < 0.7:
        for j in W:
            for i in W:
                if i != j and B.degrees[i] == B.degrees[j] + 1 and rng.random() < 0.7:
                    c = field.random(rng, nonzero=True)
                    dcols.setdefault(j, {})[i] = c
        d = GradedMap(B, B, 1, dcols, check=False)
        if not (d @ d).is_zero():
            dcols = {}
    sources = {j for j in dcols}
    cycles = [i for i in W if i not in sources]
    mu = {}
    for (a, b), c in table.items():
        mu[(a, b)] = {c: field.one}
    g = {}
    for a in range(nv):
        for i in cycles:
            if B.degrees[i] == B.degrees[a] and rng.random() < 0.5:
                g.setdefault(a, {})[i] = field.random(rng, nonzero=True)
    h = {}
    for a, b in product(range(nv), repeat=2):
        for i in cycles:
            if B.degrees[i] == B.degrees[a] + B.degrees[b] - 1 and rng.random() < 0.6:
                h.setdefault((a, b), {})[i] = field.random(rng, nonzero=True)
    BB = tensor_space(B, B)
    m2 = {}
    for (a, b), v in mu.items():
        col = dict(v)
        for c, x in v.items():
            for i, y in g.get(c, {}).items():
                axpy(col, x * y, {i: 1})
        m2[BB.flat((a, b))] = col
    BBB = tensor_space(B, B, B)
    m3 = {}
    for a, b, c in product(range(nv), repeat=3):
        col = {}
        for e, x in mu.get((a, b), {}).items():
            axpy(col, x, h.get((e, c), {}))
        for e, x in mu.get((b, c), {}).items():
            axpy(col, -x, h.get((a, e), {}))
        if col:
            m3[BBB.flat((a, b, c))] = col
    ops = {2: GradedMap(BB, B, 0, m2)}
    if m3:
        ops[3] = GradedMap(BBB, B, -1, m3)
    if dcols:
        ops[1] = GradedMap(B, B, 1, dcols)
    return AInftyAlgebra(B, ops, name=name)


def corrupt_ainfty(rng, alg, arity=None):
    """Perturb one entry of m_j (j chosen among 1..3); returns (algebra, j)."""
    B = alg.space
    choices = [j for j in (1, 2, 3) if arity is None or j == arity]
    for _ in range(200):
        j = rng.choice(choices)
        src = tensor_space(*([B] * j)) if j > 1 else B
        deg = 2 - j
        cands = [(q, i) for q in range(src.dim) for i in range(B.dim)
                 if B.degrees[i] - src.degrees[q] == deg]
        if not cands:
            continue
        q, i = rng.choice(cands)
        old = alg.ops.get(j, GradedMap.zero(src, B, deg))
        cols = {k: dict(v) for k, v in old.cols.items()}
        col = cols.setdefault(q, {})
        col[i] = col.get(i, 0) + B.field.random(rng, nonzero=True)
        if not col[i]:
            del col[i]
        ops = dict(alg.ops)
        ops[j] = GradedMap(src, B, deg, cols, check=False)
        return AInftyAlgebra(B, ops, name=alg.name + "*"), j
    return None, None

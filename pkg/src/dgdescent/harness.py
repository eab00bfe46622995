"""Seeded property batteries shared by the selftest command and the test suite."""

import random

from .field import QQ, GF
from .graded import GradedMap, tensor_maps, power_shift, shift_conjugate, tensor_space, koszul, \
    hom_differential
from .algebra import GradedSpace, free_module, module_from_actions, truncated_polynomial, \
    validate_module
from .ainfty import check_ainfty, bar_construct, check_comodule, check_homotopy_counital, \
    comodule_map_compose, comodule_map_d
from .cosimplicial import FiniteCover, cech_system
from .holim import canonical_object, perturbed_object, validate_holim_object, random_morphism, \
    holim_compose, holim_differential, holim_identity, to_ainfty_comodule, \
    morphism_to_comodule_map
from .descent import canonical_datum, twisted_datum, validate_descent, descent_to_comodule, \
    validate_strict_comodule, barr_beck_roundtrip, holim_matches_descent, point_module
from .generators import random_space, random_map, random_ainfty, corrupt_ainfty
from .linalg import inverse_columns
from .report import Report


# ------------------------------------------------------------ sign core

def sign_core(rng, quads=200, max_n=8, conj_n=4, field=QQ):
    r = Report("sign core", truncation={"max_n": max_n, "conj_n": conj_n})
    M = GradedSpace("M", [("a", 0), ("b", 1)], field=field)
    for n in range(1, max_n + 1):
        s, w = power_shift(M, n)
        target = GradedMap.identity(s.source).scale(-1 if (n * (n - 1) // 2) % 2 else 1)
        r.add("omega^n s^n, n=%d" % n, w @ s == target)
    bad = None
    for n in range(1, conj_n + 1):
        for t in range(5):
            X = random_space(rng, field, 2, name="X")
            Y = random_space(rng, field, 2, name="Y")
            src = tensor_space(*([X] * n))
            l = rng.randint(-2, 2)
            f = random_map(rng, src, Y, l + 1 - n, field, lo=-3, hi=3)
            up = shift_conjugate(f, n, "up")
            if shift_conjugate(up, n, "up", inverse=True) != f:
                bad = bad or ("up", n, t)
            g = random_map(rng, Y, src, l + 1 - n, field, lo=-3, hi=3)
            down = shift_conjugate(g, n, "down")
            if shift_conjugate(down, n, "down", inverse=True) != g:
                bad = bad or ("down", n, t)
    r.add("shift_conjugate round trips", bad is None, bad)
    bad = None
    for t in range(quads):
        sp = [random_space(rng, field, 2, name="S%d" % i) for i in range(6)]
        h = random_map(rng, sp[0], sp[1], rng.randint(-1, 1), field)
        k = random_map(rng, sp[2], sp[3], rng.randint(-1, 1), field)
        f = random_map(rng, sp[1], sp[4], rng.randint(-1, 1), field)
        g = random_map(rng, sp[3], sp[5], rng.randint(-1, 1), field)
        lhs = tensor_maps([f, g]) @ tensor_maps([h, k])
        rhs = tensor_maps([f @ h, g @ k]).scale(koszul(g.degree, h.degree))
        if lhs != rhs:
            bad = bad or t
    r.add("tensor composition law on %d quadruples" % quads, bad is None, bad)
    return r


# ------------------------------------------------------------ A∞ and bar

def ainfty_bar(rng, count=50, corrupted=20, L=5, field=QQ):
    r = Report("A-infinity vs bar", truncation={"bar_length": L})
    made = 0
    tries = 0
    bad = None
    while made < count:
        tries += 1
        A = random_ainfty(rng, field)
        if not check_ainfty(A, L).ok:
            continue
        made += 1
        if not bar_construct(A, L).check_d_squared().ok:
            bad = bad or made
    r.add("bar d^2 = 0 on %d valid algebras" % count, bad is None, bad)
    miss = []
    for t in range(corrupted):
        while True:
            C, j = corrupt_ainfty(rng, random_ainfty(rng, field))
            rep = check_ainfty(C, L)
            if not rep.ok:
                break
        b = bar_construct(C, L).check_d_squared()
        fa = min(rep.failed_arities)
        fb = min(b.failed_lengths) if b.failed_lengths else None
        if fb is None or fa != fb or fa not in (j, j + 1, 2 * j - 1):
            miss.append({"arity": j, "relation": fa, "bar": fb})
    r.add("corruption detected and localized on %d inputs" % corrupted, not miss, miss[:3])
    return r


# ------------------------------------------------------------ Čech systems and seeds

def three_point_cover(coefficients=None):
    return FiniteCover([1, 2, 3], [[1, 2], [2, 3]], coefficients)


def test_systems(N=3, field=QQ):
    """The 3-point system with constant and with nilpotent coefficients."""
    return [cech_system(three_point_cover(), N, field),
            cech_system(three_point_cover(truncated_polynomial(field, "x", 0, 2)), N, field)]


def skyscraper(B, point=2):
    """B ⊕ k·s with s in degree -1 over the given point and d(s) = x there (or 1)."""
    names = B.space.names
    n = B.dim
    sp = GradedSpace("Sky", [("g%s" % nm, d) for nm, d in zip(names, B.space.degrees)]
                     + [("s", -1)], field=B.field)
    act = {}
    for a in range(n):
        for b in range(n):
            v = B.mul_basis(a, b)
            if v:
                act[(a, b)] = dict(v)
    label = str(point)
    e = [k for k, nm in enumerate(names) if nm in (label, "1@" + label)][0]
    x = [k for k, nm in enumerate(names) if nm == "x@" + label]
    act[(e, n)] = {n: 1}
    M = module_from_actions(B, sp, act, {n: {(x[0] if x else e): 1}}, name="Sky")
    if not validate_module(M).ok:
        raise AssertionError("skyscraper is not a dg-module")
    return M


def holim_seeds(sys, rng):
    """Canonical objects for B and the skyscraper, plus a perturbed skyscraper."""
    B = sys.base
    seeds = [canonical_object(sys, free_module(B, 1, name="B"), "can(B)"),
             canonical_object(sys, skyscraper(B), "can(Sky)")]
    sky = seeds[1]
    hb = sys.hom_basis(sky.M, 1, 0, sky.M, 1, -1)
    h = None
    for g in hb:
        c = rng.randint(-2, 2)
        if c:
            h = g.scale(c) if h is None else h + g.scale(c)
    if h is not None:
        p = perturbed_object(sky, h)
        if p is not None:
            p.name = "perturbed(Sky)"
            seeds.append(p)
    return seeds


def holim_seed_report(sys, seeds):
    r = Report("holim seeds on %s" % sys.name, truncation={"N": sys.N})
    for o in seeds:
        r.extend(validate_holim_object(o, sys.N), o.name + ": ")
    return r


def holim_laws(seeds, rng, count=100, degrees=(-1, 0, 1),
               which=("assoc", "unit", "d2", "leibniz")):
    """Associativity, units, d^2 = 0 and Leibniz on seeded random morphisms."""
    r = Report("holim laws", truncation={"N": seeds[0].system.N}, seed=None)
    bad = {"assoc": [], "unit": [], "d2": [], "leibniz": []}
    for t in range(count):
        X, Y, Z, W = (rng.choice(seeds) for _ in range(4))
        a = random_morphism(rng, X, Y, rng.choice(degrees))
        b = random_morphism(rng, Y, Z, rng.choice(degrees))
        c = random_morphism(rng, Z, W, rng.choice(degrees))
        ba = holim_compose(b, a)
        if holim_compose(c, ba) != holim_compose(holim_compose(c, b), a):
            bad["assoc"].append(t)
        if holim_compose(holim_identity(Y), a) != a or holim_compose(a, holim_identity(X)) != a:
            bad["unit"].append(t)
        if holim_differential(holim_differential(a)).comps:
            bad["d2"].append(t)
        lhs = holim_differential(ba)
        rhs = holim_compose(holim_differential(b), a) + \
            holim_compose(b, holim_differential(a)).scale(koszul(1, b.degree))
        if lhs != rhs:
            bad["leibniz"].append(t)
    for k in which:
        r.add("%s on %d random triples" % (k, count), not bad[k], bad[k][:3] or None)
    return r


def comodule_translation(seeds, rng, count=100, max_m=5, degrees=(-1, 0, 1)):
    r = Report("holim to A-infinity comodules", truncation={"max_m": max_m})
    comods = {}
    for o in seeds:
        c = to_ainfty_comodule(o)
        comods[id(o)] = c
        r.extend(check_comodule(c, max_m), o.name + ": ")
        h, rep = check_homotopy_counital(c)
        r.add(o.name + ": homotopy counital", rep.ok and h is not None)
    upto = seeds[0].system.N + 1
    bad = {"compose": [], "differential": []}
    for t in range(count):
        X, Y, Z = (rng.choice(seeds) for _ in range(3))
        a = random_morphism(rng, X, Y, rng.choice(degrees))
        b = random_morphism(rng, Y, Z, rng.choice(degrees))
        cx, cy, cz = comods[id(X)], comods[id(Y)], comods[id(Z)]
        fa = morphism_to_comodule_map(a, cx, cy)
        fb = morphism_to_comodule_map(b, cy, cz)
        if morphism_to_comodule_map(holim_compose(b, a), cx, cz) != \
                comodule_map_compose(fb, fa, upto):
            bad["compose"].append(t)
        if morphism_to_comodule_map(holim_differential(a), cx, cy) != comodule_map_d(fa, upto):
            bad["differential"].append(t)
    for k, v in bad.items():
        r.add("translation commutes with %s on %d pairs" % (k, count), not v, v[:3] or None)
    return r


# ------------------------------------------------------------ classical descent

def random_base_module(rng, B, max_rank=2):
    """A direct sum of point modules and free summands in degree 0."""
    if all(B.space.degrees[k] == 0 for k in range(B.dim)) and rng.random() < 0.5 \
            and B.dim == len(B.blocks):
        dims = [rng.randint(0, 2) for _ in range(B.dim)]
        if sum(dims) == 0:
            dims[rng.randrange(B.dim)] = 1
        return point_module(B, dims)
    return free_module(B, rng.randint(1, max_rank), name="B^r")


def random_automorphism(rng, M, field):
    """A random degree-0 A^0-linear automorphism of M with its inverse, or None."""
    from .algebra import module_hom_basis
    basis = [g for g in module_hom_basis(M, M, 0)
             if hom_differential(g, M.d, M.d).is_zero()]
    for _ in range(20):
        f = GradedMap.identity(M.space)
        for g in basis:
            c = field.random(rng, -1, 1)
            if c:
                f = f + g.scale(c)
        if not hom_differential(f, M.d, M.d).is_zero():
            continue
        inv = inverse_columns(f.cols, M.dim)
        if inv is not None:
            return f, GradedMap(M.space, M.space, 0, inv, check=False)
    return None


def barr_beck_instances(rng, count=20, field=QQ):
    """Round trips for canonical and twisted data on random base modules."""
    r = Report("Barr-Beck round trips")
    systems = [cech_system(three_point_cover(), 2, field),
               cech_system(FiniteCover([1, 2], [[1, 2], [2]]), 2, field)]
    for t in range(count):
        sys = systems[t % len(systems)]
        X = random_base_module(rng, sys.base)
        d = canonical_datum(sys, X)
        if t % 2:
            g = random_automorphism(rng, d.M, field)
            if g is not None:
                d = twisted_datum(d, *g)
                r.add("instance %d: twisted datum valid" % t, validate_descent(d).ok)
        rep = barr_beck_roundtrip(sys, X, d if t % 2 else None)
        r.add("instance %d: round trip" % t, rep.ok, None if rep.ok else rep.summary())
        c = descent_to_comodule(d)
        r.add("instance %d: strict comodule" % t, validate_strict_comodule(c).ok)
        r.add("instance %d: holim translation matches" % t, holim_matches_descent(d).ok)
    return r


# ------------------------------------------------------------ selftest

def selftest(seed, iters=50):
    """A fast deterministic battery; the report depends only on (seed, iters)."""
    rng = random.Random(seed)
    r = Report("selftest", truncation={"iters": iters}, seed=seed)
    r.extend(sign_core(rng, quads=iters, max_n=8, conj_n=3), "sign: ")
    r.extend(ainfty_bar(rng, count=max(1, iters // 5), corrupted=max(1, iters // 10), L=4),
             "ainfty: ")
    r.extend(sign_core(random.Random(seed + 1), quads=iters, max_n=4, conj_n=2, field=GF(3)),
             "sign F3: ")
    sys = cech_system(FiniteCover([1, 2], [[1, 2], [2]]), 2, QQ)
    seeds = holim_seeds(sys, rng)
    r.extend(holim_seed_report(sys, seeds), "holim: ")
    r.extend(holim_laws(seeds, rng, count=max(1, iters // 5)), "holim: ")
    r.extend(barr_beck_instances(rng, count=max(2, iters // 25)), "descent: ")
    return r


# ------------------------------------------------------------ A∞-functors

def afun_objects(n):
    """Target Mod(k) with a line L and a contractible cone; objects of AFun(k[n], Mod(k))."""
    from .simplex import demo_target, constant_functor, strict_functor, bent_functor
    cat, L, C = demo_target()
    incl = cat.hom_basis(L, C, 0)[0]
    objs = [constant_functor(cat, L, n, "const(L)"), constant_functor(cat, C, n, "const(Cone)")]
    if n == 2:
        objs.append(bent_functor(cat, C, cat.hom_basis(C, C, -1)[0]))
    else:
        objs.append(strict_functor(cat, [L] + [C] * n,
                                   [None, incl] + [cat.identity(C)] * (n - 1), "L->Cone"))
    return cat, objs


def afun_exhaustive(n, degrees=None):
    """Every single-component basis morphism; target homs live in degrees -1..1,
    so morphism degrees -1..n+1 cover all of them."""
    from .simplex import validate_afun_object, afun_hom_basis, afun_laws
    cat, objs = afun_objects(n)
    if degrees is None:
        degrees = range(-1, n + 2)
    r = Report("AFun(k[%d], Mod k) exhaustive" % n, truncation={"n": n})
    for F in objs:
        r.extend(validate_afun_object(F), F.name + ": ")
    hom_dims = [len(cat.hom_basis(x, y, d)) for x in objs[0].objects + objs[1].objects
                for y in objs[0].objects + objs[1].objects for d in (-1, 0, 1)]
    r.add("dim Hom <= 3", max(hom_dims) <= 3, max(hom_dims))
    pairs = {(a, b): [m for d in degrees for m in afun_hom_basis(F, G, d)]
             for a, F in enumerate(objs) for b, G in enumerate(objs)}
    r.counts = {"basis_morphisms": sum(len(v) for v in pairs.values())}
    return afun_laws(pairs, r)


def afun_random(rng, n=3, count=100, degrees=(-1, 0, 1)):
    from .simplex import (validate_afun_object, random_afun_morphism, afun_compose,
                          afun_identity, afun_differential, AfunMorphism, _afun_add)
    cat, objs = afun_objects(n)
    r = Report("AFun(k[%d], Mod k) random" % n, truncation={"n": n})
    for F in objs:
        r.extend(validate_afun_object(F), F.name + ": ")
    bad = {"d2": [], "unit": [], "leibniz": [], "assoc": []}
    for t in range(count):
        X, Y, Z, W = (rng.choice(objs) for _ in range(4))
        f = random_afun_morphism(rng, X, Y, rng.choice(degrees))
        g = random_afun_morphism(rng, Y, Z, rng.choice(degrees))
        h = random_afun_morphism(rng, Z, W, rng.choice(degrees))
        if not afun_differential(afun_differential(f)).equal(AfunMorphism(X, Y, f.degree + 2, {})):
            bad["d2"].append(t)
        if not (afun_compose(afun_identity(Y), f).equal(f)
                and afun_compose(f, afun_identity(X)).equal(f)):
            bad["unit"].append(t)
        gf = afun_compose(g, f)
        rhs = _afun_add(afun_compose(afun_differential(g), f),
                        afun_compose(g, afun_differential(f)), koszul(1, g.degree))
        if not afun_differential(gf).equal(rhs):
            bad["leibniz"].append(t)
        if not afun_compose(afun_compose(h, g), f).equal(afun_compose(h, gf)):
            bad["assoc"].append(t)
    for k, v in bad.items():
        r.add("%s on %d random triples" % (k, count), not v, v[:3] or None)
    return r

"""The free dg-category on the simplex k[n] and the dg-category of A∞-functors
from it into a dg-category B (dg targets only, so higher operations vanish)."""

from itertools import combinations

from .dgcat import FreeDgCategory, PathElement, h0_invertible
from .field import QQ
from .graded import ContractError, koszul
from .report import Report


def increasing(n, length):
    """Strictly increasing index tuples in [0..n] of the given length."""
    return list(combinations(range(n + 1), length))


def all_indices(n, min_len=1):
    return [I for L in range(min_len, n + 2) for I in increasing(n, L)]


def _minus(I, j):
    return I[:j] + I[j + 1:]


def simplex_category(n, window=None, field=QQ, max_len=None):
    """Generators f_I: I[0] -> I[-1] of degree 2 - len(I) for |I| ≥ 2."""
    gens = {}
    dgen = {}
    for I in all_indices(n, 2):
        k = len(I) - 1
        gens[I] = (I[0], I[-1], 1 - k)
        terms = {}
        for j in range(1, k):
            s = -1 if (k - j) % 2 else 1
            a = (_minus(I, j),)
            b = (I[j:], I[:j + 1])
            terms[a] = terms.get(a, 0) + s
            terms[b] = terms.get(b, 0) - s
        dgen[I] = PathElement(I[0], I[-1], 2 - k, {w: field(c) for w, c in terms.items() if c})
    return FreeDgCategory(range(n + 1), gens, dgen, field, window, max_len)


class AfunObject:
    """Objects b_0..b_n of B with components f_I of degree 2 - len(I), |I| ≥ 2."""

    def __init__(self, cat, objects, comps, name="F"):
        self.cat = cat
        self.objects = list(objects)
        self.n = len(self.objects) - 1
        self.name = name
        self.comps = {}
        for I, f in comps.items():
            I = tuple(I)
            if len(I) < 2 or list(I) != sorted(set(I)) or I[-1] > self.n:
                raise ContractError("bad index %r" % (I,))
            if cat.degree(f) != 2 - len(I) and not cat.is_zero(f):
                raise ContractError("f_%s must have degree %d" % (_label(I), 2 - len(I)))
            self.comps[I] = f

    def comp(self, I):
        return self.comps.get(tuple(I))


class AfunMorphism:
    """Components α_I: b_{I[0]} -> b'_{I[-1]} of degree |α| + 1 - len(I), |I| ≥ 1."""

    def __init__(self, source, target, degree, comps):
        if source.cat is not target.cat or source.n != target.n:
            raise ContractError("A∞-functors have different shapes")
        self.source = source
        self.target = target
        self.degree = degree
        self.cat = source.cat
        self.comps = {}
        for I, f in comps.items():
            I = tuple(I)
            if f is None or self.cat.is_zero(f):
                continue
            if self.cat.degree(f) != degree + 1 - len(I):
                raise ContractError("α_%s must have degree %d" % (_label(I), degree + 1 - len(I)))
            self.comps[I] = f

    def comp(self, I):
        return self.comps.get(tuple(I))

    def equal(self, other):
        keys = set(self.comps) | set(other.comps)
        for I in keys:
            a, b = self.comps.get(I), other.comps.get(I)
            if a is None or b is None:
                if not self.cat.is_zero(a if a is not None else b):
                    return False
            elif not self.cat.equal(a, b):
                return False
        return True

    def first_difference(self, other):
        for I in sorted(set(self.comps) | set(other.comps), key=lambda I: (len(I), I)):
            if not AfunMorphism(self.source, self.target, self.degree,
                                {I: self.comps[I]} if I in self.comps else {}).equal(
                    AfunMorphism(other.source, other.target, other.degree,
                                 {I: other.comps[I]} if I in other.comps else {})):
                return I
        return None


def _label(I):
    return "".join(str(i) for i in I)


def _acc(cat, acc, I, c, f):
    if f is None or c == 0:
        return
    g = f if c == 1 else cat.scale(c, f)
    acc[I] = g if I not in acc else cat.add(acc[I], g)


def _compose_comps(cat, b_comps, a_comps, a_deg, n, b_single=True, a_single=True):
    """(β∘α)_I = Σ_j (-1)^{(k-j)|α|} β_{I[j:]} ∘ α_{I[:j+1]}."""
    out = {}
    starts = {}
    for J, b in b_comps.items():
        starts.setdefault(J[0], []).append((J, b))
    for K, a in a_comps.items():
        if len(K) == 1 and not a_single:
            continue
        for J, b in starts.get(K[-1], ()):
            if len(J) == 1 and not b_single:
                continue
            I = K + J[1:]
            _acc(cat, out, I, koszul(len(J) - 1, a_deg), cat.compose(b, a))
    return out


def afun_identity(F):
    return AfunMorphism(F, F, 0, {(i,): F.cat.identity(b) for i, b in enumerate(F.objects)})


def afun_compose(beta, alpha):
    if alpha.target is not beta.source:
        raise ContractError("A∞-transformations not composable")
    comps = _compose_comps(alpha.cat, beta.comps, alpha.comps, alpha.degree, alpha.source.n)
    return AfunMorphism(alpha.source, beta.target, alpha.degree + beta.degree, comps)


def afun_differential(alpha):
    """d(α) = d_B α - (-1)^{|α|} α∘d_Bar + g∘α - (-1)^{|α|} α∘f."""
    cat = alpha.cat
    F, G = alpha.source, alpha.target
    n = F.n
    p = alpha.degree
    sgn = koszul(1, p)
    out = {}
    for I, a in alpha.comps.items():
        _acc(cat, out, I, 1, cat.differential(a))
    # (α∘d_Bar)_I = -Σ_{j=1}^{k-1} (-1)^{k-j} α_{I minus j}
    for I in all_indices(n, 3):
        k = len(I) - 1
        for j in range(1, k):
            _acc(cat, out, I, sgn * koszul(k - j, 1), alpha.comps.get(_minus(I, j)))
    for I, f in _compose_comps(cat, G.comps, alpha.comps, p, n, b_single=False).items():
        _acc(cat, out, I, 1, f)
    for I, f in _compose_comps(cat, alpha.comps, F.comps, 1, n, a_single=False).items():
        _acc(cat, out, I, -sgn, f)
    return AfunMorphism(F, G, p + 1, out)


def object_residue(F):
    """d f_I - Σ_{j=1}^{k-1} (-1)^{k-j} (f_{I minus j} - f_{I[j:]} ∘ f_{I[:j+1]})."""
    cat = F.cat
    out = {}
    for I in all_indices(F.n, 2):
        k = len(I) - 1
        f = F.comps.get(I)
        if f is not None:
            _acc(cat, out, I, 1, cat.differential(f))
        for j in range(1, k):
            s = koszul(k - j, 1)
            _acc(cat, out, I, -s, F.comps.get(_minus(I, j)))
            b, a = F.comps.get(I[j:]), F.comps.get(I[:j + 1])
            if a is not None and b is not None:
                _acc(cat, out, I, s, cat.compose(b, a))
    return out


def object_residue_selfmap(F):
    """The same equation read as d_B f + f∘d_Bar + f∘f = 0 for the degree-1 self-map f."""
    cat = F.cat
    out = {}
    for I, f in F.comps.items():
        _acc(cat, out, I, 1, cat.differential(f))
    for I in all_indices(F.n, 3):
        k = len(I) - 1
        for j in range(1, k):
            _acc(cat, out, I, -koszul(k - j, 1), F.comps.get(_minus(I, j)))
    for I, f in _compose_comps(cat, F.comps, F.comps, 1, F.n, False, False).items():
        _acc(cat, out, I, 1, f)
    return out


def validate_afun_object(F, circle=False):
    cat = F.cat
    r = Report("A∞-functor %s" % F.name, truncation={"n": F.n})
    res = object_residue(F)
    res2 = object_residue_selfmap(F)
    for I in all_indices(F.n, 2):
        a, b = res.get(I), res2.get(I)
        za = a is None or cat.is_zero(a)
        zb = b is None or cat.is_zero(b)
        r.add("equation f_%s" % _label(I), za, None if za else _label(I))
        if za != zb or (not za and not cat.equal(a, b)):
            r.fail("self-map form agrees f_%s" % _label(I))
    if circle:
        for i, j in increasing(F.n, 2):
            f = F.comps.get((i, j))
            x, y = F.objects[i], F.objects[j]
            if f is None:
                ok = False
            else:
                try:
                    ok = h0_invertible(cat, f, x, y) is not None
                except ContractError:
                    ok = False
            r.add("f_%d%d invertible in H0" % (i, j), ok)
    return r


def constant_functor(cat, x, n, name="const"):
    return AfunObject(cat, [x] * (n + 1), {(i, j): cat.identity(x) for i, j in increasing(n, 2)},
                      name)


def strict_functor(cat, objects, maps, name="F"):
    """f_{ij} = g_j ∘ ... ∘ g_{i+1} for closed degree-0 maps maps[i]: b_{i-1} -> b_i
    (maps[0] is unused)."""
    n = len(objects) - 1
    comps = {}
    for i, j in increasing(n, 2):
        f = maps[i + 1]
        for t in range(i + 2, j + 1):
            f = cat.compose(maps[t], f)
        comps[(i, j)] = f
    return AfunObject(cat, objects, comps, name)


def afun_hom_basis(F, G, degree):
    """Morphisms with one nonzero component, equal to a basis element."""
    cat = F.cat
    out = []
    for I in all_indices(F.n):
        for g in cat.hom_basis(F.objects[I[0]], G.objects[I[-1]], degree + 1 - len(I)):
            out.append(AfunMorphism(F, G, degree, {I: g}))
    return out


def random_afun_morphism(rng, F, G, degree, lo=-2, hi=2):
    cat = F.cat
    comps = {}
    for I in all_indices(F.n):
        for g in cat.hom_basis(F.objects[I[0]], G.objects[I[-1]], degree + 1 - len(I)):
            c = cat.field.random(rng, lo, hi)
            if c:
                _acc(cat, comps, I, c, g)
    return AfunMorphism(F, G, degree, comps)


def _afun_add(a, b, c=1):
    cat = a.cat
    comps = dict(a.comps)
    for I, f in b.comps.items():
        _acc(cat, comps, I, c, f)
    return AfunMorphism(a.source, a.target, a.degree, comps)


def afun_laws(alphas_by_pair, r, label="", which=("d2", "unit", "leibniz", "assoc")):
    """Check d^2 = 0, units, Leibniz and associativity on the given morphisms.

    ``alphas_by_pair`` maps (source index, target index) to lists of morphisms.
    """
    objs = {}
    for (i, j), ms in alphas_by_pair.items():
        for m in ms:
            objs[i], objs[j] = m.source, m.target
    bad = {"d2": 0, "unit": 0, "leibniz": 0, "assoc": 0}
    for (i, j), fs in alphas_by_pair.items():
        for f in fs:
            dd = afun_differential(afun_differential(f))
            if not dd.equal(AfunMorphism(f.source, f.target, f.degree + 2, {})):
                bad["d2"] += 1
            if not (afun_compose(afun_identity(f.target), f).equal(f)
                    and afun_compose(f, afun_identity(f.source)).equal(f)):
                bad["unit"] += 1
            for (j2, k), gs in alphas_by_pair.items():
                if j2 != j or not {"leibniz", "assoc"} & set(which):
                    continue
                for g in gs:
                    gf = afun_compose(g, f)
                    lhs = afun_differential(gf)
                    rhs = _afun_add(afun_compose(afun_differential(g), f),
                                    afun_compose(g, afun_differential(f)), koszul(1, g.degree))
                    if not lhs.equal(rhs):
                        bad["leibniz"] += 1
                    for (k2, l), hs in alphas_by_pair.items():
                        if k2 != k:
                            continue
                        for h in hs:
                            if not afun_compose(afun_compose(h, g), f).equal(
                                    afun_compose(h, gf)):
                                bad["assoc"] += 1
    for k in which:
        r.add(label + k, bad[k] == 0, bad[k] or None)
    return r


def demo_target(field=QQ):
    """Complexes over the ground field: a line in degree 0 and the cone of its identity."""
    from .algebra import ground_algebra, free_module, module_from_actions
    from .dgcat import ModuleCategory
    from .graded import GradedSpace
    k = ground_algebra(field)
    cat = ModuleCategory(k, "Mod(k)")
    line = cat.register(free_module(k, 1, name="L"))
    sp = GradedSpace("Cone", [("a", -1), ("b", 0)], field=field)
    cone = cat.register(module_from_actions(k, sp, {(0, 0): {0: 1}, (0, 1): {1: 1}},
                                            {0: {1: 1}}, name="Cone"))
    cat.field = field
    return cat, line, cone


def bent_functor(cat, x, h, name="bent"):
    """The 2-simplex on x with f_01 = f_12 = id, f_012 = h and f_02 corrected
    so that the object equation holds."""
    one = cat.identity(x)
    F0 = AfunObject(cat, [x] * 3, {(0, 1): one, (1, 2): one, (0, 2): one, (0, 1, 2): h})
    res = object_residue(F0).get((0, 1, 2))
    f02 = one if res is None else cat.add(one, cat.scale(-1, res))
    return AfunObject(cat, [x] * 3, {(0, 1): one, (1, 2): one, (0, 2): f02, (0, 1, 2): h}, name)

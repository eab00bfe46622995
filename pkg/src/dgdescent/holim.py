"""The explicit homotopy-limit dg-category of a truncated cosimplicial system of
module categories, and its translation to homotopy-counital A∞-comodules."""

from .cosimplicial import OrdinalMap, AffineModel
from .dgcat import ModuleCategory, h0_invertible
from .graded import GradedMap, ContractError, koszul, hom_differential
from .ainfty import AInftyComodule, ComoduleMap
from .report import Report
from .simplex import AfunObject, AfunMorphism, afun_compose, afun_differential, \
    validate_afun_object, all_indices


def _sum(acc, n, c, f):
    if f is None or c == 0:
        return
    g = f if c == 1 else f.scale(c)
    acc[n] = g if n not in acc else acc[n] + g


def _prune(comps):
    return {n: f for n, f in comps.items() if not f.is_zero()}


class HolimObject:
    """A module M over A^0 with θ_n: P(n,0)M -> P(n,n)M of degree 1 - n (n ≥ 1)."""

    def __init__(self, system, M, theta, name=None):
        self.system = system
        self.M = M
        self.name = name or M.name
        self.theta = {}
        for n, f in theta.items():
            if n < 1:
                raise ContractError("θ is indexed from 1")
            P = system.vertex_module(M, n, 0)
            Q = system.vertex_module(M, n, n)
            if f.source != P.space or f.target != Q.space:
                raise ContractError("θ_%d has wrong shape" % n)
            if f.degree != 1 - n and not f.is_zero():
                raise ContractError("θ_%d must have degree %d" % (n, 1 - n))
            f = GradedMap(P.space, Q.space, 1 - n, f.cols, check=False)
            if not f.is_zero():
                self.theta[n] = f

    @property
    def N(self):
        return self.system.N


class HolimMorphism:
    """Components α_n: P(n,0)M -> P(n,n)N of degree |α| - n (n ≥ 0)."""

    def __init__(self, source, target, degree, comps):
        if source.system is not target.system:
            raise ContractError("objects over different systems")
        self.source = source
        self.target = target
        self.degree = degree
        sys = source.system
        self.comps = {}
        for n, f in comps.items():
            P = sys.vertex_module(source.M, n, 0)
            Q = sys.vertex_module(target.M, n, n)
            if f.source != P.space or f.target != Q.space:
                raise ContractError("α_%d has wrong shape" % n)
            if f.degree != degree - n and not f.is_zero():
                raise ContractError("α_%d must have degree %d" % (n, degree - n))
            if not f.is_zero():
                self.comps[n] = GradedMap(P.space, Q.space, degree - n, f.cols, check=False)

    @property
    def system(self):
        return self.source.system

    def __eq__(self, other):
        return (self.degree == other.degree and set(self.comps) == set(other.comps)
                and all(self.comps[n] == other.comps[n] for n in self.comps))

    __hash__ = None

    def first_difference(self, other):
        for n in sorted(set(self.comps) | set(other.comps)):
            if self.comps.get(n) != other.comps.get(n):
                return n
        return None

    def scale(self, c):
        return HolimMorphism(self.source, self.target, self.degree,
                             {n: f.scale(c) for n, f in self.comps.items()})

    def __add__(self, other):
        comps = dict(self.comps)
        for n, f in other.comps.items():
            comps[n] = comps[n] + f if n in comps else f
        return HolimMorphism(self.source, self.target, self.degree, comps)


def holim_identity(obj):
    P = obj.system.vertex_module(obj.M, 0, 0)
    return HolimMorphism(obj, obj, 0, {0: GradedMap.identity(P.space)})


def _paste_sum(sys, b_comps, a_comps, a_deg, upto, sign_of=None):
    """Σ_i s(n, i) δ^{min,i}(β_{n-i}) ∘ δ^{max,n-i}(α_i) for n ≤ upto."""
    out = {}
    for n in range(upto + 1):
        for i in range(n + 1):
            a = a_comps.get(i)
            b = b_comps.get(n - i)
            if a is None or b is None:
                continue
            s = koszul(a_deg, n - i) if sign_of is None else sign_of(n, i)
            pa = sys.pullback(OrdinalMap.head(i, n), a)
            pb = sys.pullback(OrdinalMap.tail(n - i, n), b)
            _sum(out, n, s, pb @ pa)
    return out


def holim_compose(beta, alpha, upto=None):
    """(β∘α)_n = Σ_{i=0}^n (-1)^{|α|(n-i)} δ^{min,i}(β_{n-i}) ∘ δ^{max,n-i}(α_i)."""
    if alpha.target is not beta.source:
        raise ContractError("holim morphisms not composable")
    sys = alpha.system
    upto = sys.N if upto is None else upto
    comps = _paste_sum(sys, beta.comps, alpha.comps, alpha.degree, upto)
    return HolimMorphism(alpha.source, beta.target, alpha.degree + beta.degree, _prune(comps))


def _coface_sum(sys, comps, upto):
    """Σ_{j=1}^{n-1} (-1)^{n-j} δ^j(x_{n-1})."""
    out = {}
    for n in range(2, upto + 1):
        f = comps.get(n - 1)
        if f is None:
            continue
        for j in range(1, n):
            _sum(out, n, koszul(n - j, 1), sys.pullback(OrdinalMap.coface(n, j), f))
    return out


def _vertex_d(sys, M, n, v):
    return sys.vertex_module(M, n, v).d


def holim_differential(alpha, upto=None):
    """d(α)_n = d(α_n) + (η∘α)_n - (-1)^{|α|}(α∘θ)_n + (-1)^{|α|} Σ (-1)^{n-j} δ^j(α_{n-1})."""
    sys = alpha.system
    upto = sys.N if upto is None else upto
    M, N = alpha.source.M, alpha.target.M
    p = alpha.degree
    sgn = koszul(1, p)
    out = {}
    for n, f in alpha.comps.items():
        if n <= upto:
            _sum(out, n, 1, hom_differential(f, _vertex_d(sys, M, n, 0), _vertex_d(sys, N, n, n)))
    for n, f in _paste_sum(sys, alpha.target.theta, alpha.comps, p, upto).items():
        _sum(out, n, 1, f)
    for n, f in _paste_sum(sys, alpha.comps, alpha.source.theta, 1, upto).items():
        _sum(out, n, -sgn, f)
    for n, f in _coface_sum(sys, alpha.comps, upto).items():
        _sum(out, n, sgn, f)
    return HolimMorphism(alpha.source, alpha.target, p + 1, _prune(out))


def theta_residue(obj, n):
    """d(θ_n) + (θ∘θ)_n - Σ_{i=1}^{n-1} (-1)^{n-i} δ^i(θ_{n-1})."""
    sys = obj.system
    out = {}
    f = obj.theta.get(n)
    if f is not None:
        _sum(out, n, 1, hom_differential(f, _vertex_d(sys, obj.M, n, 0),
                                        _vertex_d(sys, obj.M, n, n)))
    tt = _paste_sum(sys, obj.theta, obj.theta, 1, n)
    _sum(out, n, 1, tt.get(n))
    _sum(out, n, -1, _coface_sum(sys, obj.theta, n).get(n))
    return out.get(n)


def default_check_level(obj):
    lo, hi = obj.M.space.window
    return min(obj.system.N, (hi - lo) + 2)


def validate_holim_object(obj, N_check=None):
    sys = obj.system
    if N_check is None:
        N_check = default_check_level(obj)
    if N_check > sys.N:
        raise ContractError("N_check beyond system truncation")
    r = Report("holim object %s" % obj.name, truncation={"N_check": N_check})
    for n in range(1, N_check + 1):
        res = theta_residue(obj, n)
        ok = res is None or res.is_zero()
        r.add("theta equation n=%d" % n, ok,
              None if ok else {"entries": len(res.entries())})
    beyond = [n for n in obj.theta if n > N_check]
    if beyond:
        r.notes.append("components beyond the checked level: %s" % beyond)
    th1 = obj.theta.get(1)
    P = sys.vertex_module(obj.M, 1, 0)
    Q = sys.vertex_module(obj.M, 1, 1)
    if th1 is None:
        r.fail("theta_1 invertible in H0", "theta_1 = 0")
        return r
    cat = level_category(sys, 1)
    if not hom_differential(th1, P.d, Q.d).is_zero():
        r.fail("theta_1 closed")
        return r
    r.add("theta_1 invertible in H0", h0_invertible(cat, th1, P, Q) is not None)
    return r


def level_category(sys, n):
    cats = sys.__dict__.setdefault("_level_cats", {})
    if n not in cats:
        cats[n] = ModuleCategory(sys.levels[n])
    return cats[n]


def tilde_rescale(alpha):
    """α̃_n = (-1)^{|α|(n+1)} α_n."""
    p = alpha.degree
    return HolimMorphism(alpha.source, alpha.target, p,
                         {n: f.scale(koszul(p, n + 1)) for n, f in alpha.comps.items()})


def tilde_compose(beta_t, alpha_t, upto=None):
    """Composition of rescaled morphisms: Σ (-1)^{|β| i} δ^{min,i}(β̃_{n-i}) ∘ δ^{max,n-i}(α̃_i)."""
    sys = alpha_t.system
    upto = sys.N if upto is None else upto
    q = beta_t.degree
    comps = _paste_sum(sys, beta_t.comps, alpha_t.comps, alpha_t.degree, upto,
                       sign_of=lambda n, i: koszul(q, i))
    return HolimMorphism(alpha_t.source, beta_t.target, alpha_t.degree + q, _prune(comps))


def affine_model(sys):
    model = getattr(sys, "_affine", None)
    if model is None:
        model = AffineModel(sys)
        sys._affine = model
    return model


def to_ainfty_comodule(obj):
    """ν_1 = -d_M; ν_n = unit then θ̃_{n-1}, read through the glue iso."""
    sys = obj.system
    model = affine_model(sys)
    co = model.coalgebra()
    M = obj.M
    nu = {1: M.d.scale(-1)}
    for n in range(2, sys.N + 2):
        f = obj.theta.get(n - 1)
        if f is None:
            continue
        nu[n] = model.to_affine(f.scale(koszul(1, n)), M, n - 1)
    comod = AInftyComodule(co, M, nu, formal=True, name=obj.name)
    comod.holim = obj
    return comod


def morphism_to_comodule_map(alpha, source=None, target=None):
    """f_n = unit then α̃_{n-1}, read through the glue iso."""
    sys = alpha.system
    model = affine_model(sys)
    src = source if source is not None else to_ainfty_comodule(alpha.source)
    tgt = target if target is not None else to_ainfty_comodule(alpha.target)
    if src.M is not alpha.source.M or tgt.M is not alpha.target.M:
        raise ContractError("comodules do not match the morphism endpoints")
    comps = {}
    for n, f in tilde_rescale(alpha).comps.items():
        comps[n + 1] = model.to_affine(f, alpha.source.M, n)
    return ComoduleMap(src, tgt, alpha.degree, comps)


def holim_hom_basis(source, target, degree, levels=None):
    """Basis of morphisms with a single nonzero component, levels 0..N."""
    sys = source.system
    levels = range(sys.N + 1) if levels is None else levels
    out = []
    for n in levels:
        for g in sys.hom_basis(source.M, n, 0, target.M, n, degree - n):
            out.append(HolimMorphism(source, target, degree, {n: g}))
    return out


def random_morphism(rng, source, target, degree, field=None, lo=-2, hi=2):
    field = field or source.system.field
    comps = {}
    sys = source.system
    for n in range(sys.N + 1):
        f = None
        for g in sys.hom_basis(source.M, n, 0, target.M, n, degree - n):
            c = field.random(rng, lo, hi)
            if c:
                f = g.scale(c) if f is None else f + g.scale(c)
        if f is not None:
            comps[n] = f
    return HolimMorphism(source, target, degree, comps)


# ------------------------------------------------------------ equalizer view

def level_functor(obj, n):
    """The A∞-functor k[n] -> Mod(A^n) with f_I = φ_I^* θ_{|I|-1}."""
    sys = obj.system
    cat = level_category(sys, n)
    objs = [sys.vertex_module(obj.M, n, v) for v in range(n + 1)]
    comps = {}
    for I in all_indices(n, 2):
        f = obj.theta.get(len(I) - 1)
        if f is not None:
            comps[I] = sys.pullback(OrdinalMap.inclusion(I, n), f)
    return AfunObject(cat, objs, comps, name="%s@%d" % (obj.name, n))


def level_transformation(alpha, F, G, n):
    sys = alpha.system
    comps = {}
    for I in all_indices(n, 1):
        f = alpha.comps.get(len(I) - 1)
        if f is not None:
            comps[I] = sys.pullback(OrdinalMap.inclusion(I, n), f)
    return AfunMorphism(F, G, alpha.degree, comps)


def _afun_matches(sys, afun, holim_m, n):
    """Every component of the level-n transformation is φ_I^* of the holim component."""
    for I in all_indices(n, 1):
        f = holim_m.comps.get(len(I) - 1)
        expect = sys.pullback(OrdinalMap.inclusion(I, n), f) if f is not None else None
        got = afun.comps.get(I)
        if expect is None or expect.is_zero():
            if got is not None and not got.is_zero():
                return I
        elif got is None or got != expect:
            return I
    return None


def crosscheck_equalizer(objects, morphisms=(), N=None, degrees=(-1, 0, 1), pairs=None):
    """Compare the holim calculus with AFun°(k[n], Mod(A^n)) levelwise.

    ``morphisms`` defaults to the single-component bases between the declared
    objects in the given degrees; ``pairs`` optionally lists composable pairs.
    """
    if not objects:
        raise ContractError("object list is empty")
    sys = objects[0].system
    N = sys.N if N is None else N
    if N > min(3, sys.N):
        raise ContractError("crosscheck needs N ≤ 3 and within the truncation")
    r = Report("equalizer crosscheck", truncation={"N": N})
    funcs = {}
    for o in objects:
        for n in range(N + 1):
            F = level_functor(o, n)
            funcs[(id(o), n)] = F
            rep = validate_afun_object(F)
            hol = validate_holim_object(o, n) if n >= 1 else None
            hol_ok = all(c.status == "pass" for c in hol.checks
                         if c.name.startswith("theta equation")) if hol else True
            r.add("object %s level %d equation agrees" % (o.name, n), rep.ok == hol_ok)
            if n >= 1:
                top = tuple(range(n + 1))
                got = F.comps.get(top)
                exp = o.theta.get(n)
                same = (got is None and exp is None) or (
                    got is not None and exp is not None and got == exp) or (
                    got is None and exp.is_zero())
                r.add("object %s nondegenerate component %d is θ_%d" % (o.name, n, n), same)
            if n >= 1:
                bad = _compat(sys, F, funcs[(id(o), n - 1)], n)
                r.add("object %s level %d coface compatible" % (o.name, n), bad is None, bad)
    if not morphisms:
        morphisms = []
        for a in objects:
            for b in objects:
                for p in degrees:
                    morphisms.extend(holim_hom_basis(a, b, p, levels=range(N + 1)))
    bad_c = bad_d = 0
    first_c = first_d = None
    for alpha in morphisms:
        d_h = holim_differential(alpha, N)
        for n in range(N + 1):
            F = funcs[(id(alpha.source), n)]
            G = funcs[(id(alpha.target), n)]
            a_n = level_transformation(alpha, F, G, n)
            I = _afun_matches(sys, afun_differential(a_n), d_h, n)
            if I is not None:
                bad_d += 1
                first_d = first_d or {"level": n, "index": list(I), "degree": alpha.degree}
    if pairs is None:
        pairs = [(b, a) for a in morphisms for b in morphisms if a.target is b.source]
    for beta, alpha in pairs:
        c_h = holim_compose(beta, alpha, N)
        for n in range(N + 1):
            F = funcs[(id(alpha.source), n)]
            G = funcs[(id(alpha.target), n)]
            H = funcs[(id(beta.target), n)]
            c_a = afun_compose(level_transformation(beta, G, H, n),
                               level_transformation(alpha, F, G, n))
            I = _afun_matches(sys, c_a, c_h, n)
            if I is not None:
                bad_c += 1
                first_c = first_c or {"level": n, "index": list(I),
                                      "degrees": [beta.degree, alpha.degree]}
    r.add("differential agrees (%d morphisms)" % len(morphisms), bad_d == 0, first_d)
    r.add("composition agrees (%d pairs)" % len(pairs), bad_c == 0, first_c)
    r.counts = {"morphisms": len(morphisms), "pairs": len(pairs)}
    return r


def _compat(sys, F, F_prev, n):
    """δ^j pulls back level n-1 components to the level n components on δ^j(I)."""
    for j in range(n + 1):
        d = OrdinalMap.coface(n, j)
        for I, f in F_prev.comps.items():
            J = tuple(d(t) for t in I)
            if sys.pullback(d, f) != F.comps.get(J, sys.pullback(d, f).scale(0)):
                return {"coface": j, "index": list(I)}
    return None


# ------------------------------------------------------------------ seeds

def canonical_object(sys, X, name=None):
    """M = A ⊗_B X with θ_1 the canonical identification and θ_{≥2} = 0."""
    from .algebra import extend_scalars, flatten_module
    phi = sys.augmentation
    if phi is None:
        raise ContractError("system has no augmentation")
    M = flatten_module(extend_scalars(phi, X), "A⊗%s" % X.name)
    th = canonical_iso(sys, X, M, 1, 0, 1)
    return HolimObject(sys, M, {1: th}, name=name or "can(%s)" % X.name)


def _base_identification(sys, X, M, n, v):
    """P(n,v)(A ⊗_B X) -> A^n ⊗_B X."""
    from .algebra import extend_scalars
    cache = sys.__dict__.setdefault("_base_ext", {})
    key = (id(X), n)
    if key not in cache:
        aug = sys.structure_map(OrdinalMap.vertex(n, 0)) @ sys.augmentation
        cache[key] = extend_scalars(aug, X, check=False)
    E = cache[key]
    P = sys.vertex_module(M, n, v)
    iv = sys.structure_map(OrdinalMap.vertex(n, v))
    An = sys.levels[n]
    cols = {}
    for q, (a, m) in enumerate(P.reps):
        a2, x = M.reps[m]
        pairs = {}
        for e, c in An.mul({a: 1}, iv.image(a2)).items():
            pairs[(e, x)] = pairs.get((e, x), 0) + c
        v2 = E.project(pairs)
        if v2:
            cols[q] = v2
    return GradedMap(P.space, E.space, 0, cols, check=False)


def canonical_iso(sys, X, M, n, v, w):
    """The canonical identification P(n,v)M -> P(n,w)M for M extended from B."""
    from .linalg import inverse_columns
    f = _base_identification(sys, X, M, n, v)
    g = _base_identification(sys, X, M, n, w)
    inv = inverse_columns(g.cols, g.source.dim)
    if inv is None or g.source.dim != g.target.dim:
        raise ContractError("base identification is not invertible")
    ginv = GradedMap(g.target, g.source, 0, inv, check=False)
    return ginv @ f


def solve_theta(obj, n):
    """Solve the level-n equation for θ_n (given lower components); None if impossible."""
    from .linalg import Reducer
    sys = obj.system
    base = HolimObject(sys, obj.M, {k: f for k, f in obj.theta.items() if k < n}, obj.name)
    res = theta_residue(base, n)
    if res is None or res.is_zero():
        return base
    P = sys.vertex_module(obj.M, n, 0)
    Q = sys.vertex_module(obj.M, n, n)
    cands = sys.hom_basis(obj.M, n, 0, obj.M, n, 1 - n)
    red = Reducer(track=True)
    flat = lambda g: {(j, i): c for j, col in g.cols.items() for i, c in col.items()}
    for t, g in enumerate(cands):
        red.add(flat(hom_differential(g, P.d, Q.d)), tag=t)
    left, cb = red.reduce(flat(res), {})
    if left:
        return None
    th = None
    for t, c in cb.items():
        if c:
            g = cands[t].scale(c)
            th = g if th is None else th + g
    theta = dict(base.theta)
    if th is not None:
        theta[n] = th
    return HolimObject(sys, obj.M, theta, obj.name)


def perturbed_object(obj, h, upto=None):
    """Replace θ_1 by θ_1 + d(h) and re-solve the higher equations."""
    sys = obj.system
    P = sys.vertex_module(obj.M, 1, 0)
    Q = sys.vertex_module(obj.M, 1, 1)
    th1 = obj.theta[1] + hom_differential(h, P.d, Q.d)
    cur = HolimObject(sys, obj.M, {1: th1}, obj.name + "~")
    for n in range(2, (upto or sys.N) + 1):
        cur = solve_theta(cur, n)
        if cur is None:
            return None
    return cur

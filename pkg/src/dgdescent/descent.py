"""Strict descent data over a Čech system, Barr–Beck comodules over C = A^1,
and descent of modules along B -> A."""

from itertools import product

from .algebra import GradedSpace, module_from_actions, module_hom_basis, extend_scalars, \
    flatten_module
from .cosimplicial import OrdinalMap, FiniteCover, cech_system
from .graded import GradedMap, ContractError, koszul, hom_differential
from .holim import HolimObject, affine_model, to_ainfty_comodule, canonical_iso
from .linalg import axpy, Reducer, kernel, inverse_columns
from .report import Report


def extend_map(sys, f, M, N, n, v):
    """A^n ⊗ f: P(n,v)M -> P(n,v)N for an A^0-linear f: M -> N."""
    P = sys.vertex_module(M, n, v)
    Q = sys.vertex_module(N, n, v)
    adeg = sys.levels[n].space.degrees
    cols = {}
    for q, (a, m) in enumerate(P.reps):
        s = koszul(f.degree, adeg[a])
        v2 = Q.project({(a, y): s * c for y, c in f.col(m).items()})
        if v2:
            cols[q] = v2
    return GradedMap(P.space, Q.space, f.degree, cols, check=False)


class DescentDatum:
    """θ: P(1,0)M -> P(1,1)M of degree 0 over a Čech system."""

    def __init__(self, system, M, theta, name=None):
        P = system.vertex_module(M, 1, 0)
        Q = system.vertex_module(M, 1, 1)
        if theta.source != P.space or theta.target != Q.space:
            raise ContractError("θ has wrong shape")
        if theta.degree != 0 and not theta.is_zero():
            raise ContractError("θ must have degree 0")
        self.system = system
        self.M = M
        self.theta = GradedMap(P.space, Q.space, 0, theta.cols, check=False)
        self.name = name or M.name

    def cocycle_sides(self):
        sys = self.system
        t = self.theta
        lhs = sys.pullback(OrdinalMap.coface(2, 0), t) @ sys.pullback(OrdinalMap.coface(2, 2), t)
        rhs = sys.pullback(OrdinalMap.coface(2, 1), t)
        return lhs, rhs

    def unit_side(self):
        return self.system.pullback(OrdinalMap.codegeneracy(0, 0), self.theta)

    def as_holim(self):
        return HolimObject(self.system, self.M, {1: self.theta}, self.name)


def validate_descent(d):
    sys = d.system
    r = Report("descent datum %s" % d.name)
    P = sys.vertex_module(d.M, 1, 0)
    Q = sys.vertex_module(d.M, 1, 1)
    r.add("theta commutes with d", hom_differential(d.theta, P.d, Q.d).is_zero())
    lhs, rhs = d.cocycle_sides()
    diff = lhs - rhs
    r.add("cocycle", diff.is_zero(), None if diff.is_zero() else {"entries": diff.entries()[:4]})
    u = d.unit_side()
    ident = GradedMap.identity(u.source)
    du = u - ident
    r.add("unit", du.is_zero(), None if du.is_zero() else {"entries": du.entries()[:4]})
    return r


def is_invertible(f):
    if f.source.dim != f.target.dim:
        return False
    return inverse_columns(f.cols, f.source.dim) is not None


def iso_iff_unit(d):
    """(θ is an isomorphism, σ^0 θ = id), each decided independently."""
    lhs, rhs = d.cocycle_sides()
    if lhs != rhs:
        raise ContractError("iso_iff_unit needs a datum satisfying the cocycle condition")
    u = d.unit_side()
    return is_invertible(d.theta), u == GradedMap.identity(u.source)


class StrictComodule:
    """ρ: M -> C ⊗_A M over the coalgebra C = A^1."""

    def __init__(self, system, M, rho, name=None):
        self.system = system
        self.model = affine_model(system)
        self.co = self.model.coalgebra()
        self.M = M
        target = self.co.powers.mpower(M, 1)
        if rho.source != M.space or rho.target != target.space:
            raise ContractError("ρ has wrong shape")
        self.rho = rho
        self.name = name or M.name

    def rho_words(self, x):
        P = self.co.powers.mpower(self.M, 1)
        return {P.word(q): c for q, c in self.rho.col(x).items()}

    def coassociativity_sides(self, x):
        co = self.co
        M = self.M
        P2 = co.powers.mpower(M, 2)
        lhs = {}
        rhs = {}
        for w, c in self.rho_words(x).items():
            for v, c2 in co.coop_words(2, w[0]).items():
                axpy(lhs, c * c2, P2.project_word(v + w[1:]))
            for y, c3 in M.project_word(w[1:]).items():
                for v, c4 in self.rho_words(y).items():
                    axpy(rhs, c * c3 * c4, P2.project_word(w[:1] + v))
        return lhs, rhs

    def counit_map(self):
        eps = self.co.counit
        cols = {}
        for x in range(self.M.dim):
            out = {}
            for w, c in self.rho_words(x).items():
                for y, c2 in self.M.project_word(w[1:]).items():
                    axpy(out, c * c2, self.M.act_vec(eps.col(w[0]), {y: 1}))
            if out:
                cols[x] = out
        return GradedMap(self.M.space, self.M.space, 0, cols, check=False)


def validate_strict_comodule(c):
    r = Report("strict comodule %s" % c.name)
    P = c.co.powers.mpower(c.M, 1)
    r.add("rho commutes with d", hom_differential(c.rho, c.M.d, P.d).is_zero())
    bad = None
    for x in range(c.M.dim):
        lhs, rhs = c.coassociativity_sides(x)
        if lhs != rhs:
            bad = c.M.space.names[x]
            break
    r.add("coassociative", bad is None, bad)
    r.add("counital", c.counit_map() == GradedMap.identity(c.M.space))
    return r


def descent_to_comodule(d, check=True):
    """ρ = θ after the adjunction unit, read in C ⊗_A M."""
    if check:
        rep = validate_descent(d)
        if not rep.ok:
            raise ContractError(rep.summary())
    model = affine_model(d.system)
    rho = model.to_affine(d.theta, d.M, 1)
    return StrictComodule(d.system, d.M, rho, d.name)


def comodule_to_descent(c):
    """θ(a ⊗ m) = a · glue(ρ(m)), the A^1-linear extension of ρ."""
    sys = c.system
    model = c.model
    fwd, _ = model.glue(c.M, 1)
    P = sys.vertex_module(c.M, 1, 0)
    Q = sys.vertex_module(c.M, 1, 1)
    g = fwd @ c.rho
    cols = {}
    for q, (a, m) in enumerate(P.reps):
        v = Q.act_vec({a: 1}, g.col(m))
        if v:
            cols[q] = v
    return DescentDatum(sys, c.M, GradedMap(P.space, Q.space, 0, cols, check=False), c.name)


def _stack(maps):
    return {(j, i): c for j, col in maps.cols.items() for i, c in col.items()}


def _constrained_maps(M, N, defect):
    """Degree-0 A-linear maps f: M -> N with defect(f) = 0 (defect linear in f)."""
    basis = module_hom_basis(M, N, 0)
    cols = {t: _stack(defect(f)) for t, f in enumerate(basis)}
    out = []
    for vec in kernel(cols, len(basis)):
        f = GradedMap.zero(M.space, N.space, 0)
        for t, c in vec.items():
            f = f + basis[t].scale(c)
        out.append(f)
    return out


def datum_morphisms(d1, d2):
    """A^0-linear f with θ_2 ∘ δ^1 f = δ^0 f ∘ θ_1."""
    sys = d1.system

    def defect(f):
        return (d2.theta @ extend_map(sys, f, d1.M, d2.M, 1, 0)
                - extend_map(sys, f, d1.M, d2.M, 1, 1) @ d1.theta)
    return _constrained_maps(d1.M, d2.M, defect)


def comodule_morphisms(c1, c2):
    """A^0-linear f with ρ_2 ∘ f = (id ⊗ f) ∘ ρ_1."""
    P1 = c1.co.powers.mpower(c1.M, 1)
    P2 = c2.co.powers.mpower(c2.M, 1)

    def defect(f):
        cols = {}
        for x in range(c1.M.dim):
            out = {}
            for y, c in f.col(x).items():
                axpy(out, c, c2.rho.col(y))
            for q, c in c1.rho.col(x).items():
                w = P1.word(q)
                for y, c3 in c1.M.project_word(w[1:]).items():
                    for z, c4 in f.col(y).items():
                        axpy(out, -c * c3 * c4, P2.project_word(w[:1] + (z,)))
            if out:
                cols[x] = out
        return GradedMap(c1.M.space, P2.space, 0, cols, check=False)
    return _constrained_maps(c1.M, c2.M, defect)


def same_span(fs, gs):
    red = Reducer()
    for f in fs:
        red.add(_stack(f))
    if any(red.add(_stack(g)) is None for g in gs):
        return False
    red2 = Reducer()
    for g in gs:
        red2.add(_stack(g))
    return all(red2.add(_stack(f)) is not None for f in fs)


def descend_module(c):
    """The equalizer of ρ and m -> 1 ⊗ m, as a module over B."""
    sys = c.system
    phi = sys.augmentation
    if phi is None:
        raise ContractError("system has no augmentation B -> A")
    B = phi.source
    M = c.M
    P = c.co.powers.mpower(M, 1)
    one = sys.levels[1].unit
    cols = {}
    for x in range(M.dim):
        v = dict(c.rho.col(x))
        for e, k in one.items():
            axpy(v, -k, P.project_word((e, x)))
        if v:
            cols[x] = v
    K = kernel(cols, M.dim)
    red = Reducer(track=True)
    for t, vec in enumerate(K):
        red.add(vec, tag=t)

    def coords(vec):
        res, cb = red.reduce(vec, {})
        if res:
            raise ContractError("vector leaves the equalizer")
        return {t: -x for t, x in cb.items() if x}

    degs = []
    for vec in K:
        ds = {M.space.degrees[i] for i in vec}
        if len(ds) != 1:
            raise ContractError("equalizer basis is not homogeneous")
        degs.append(ds.pop())
    space = GradedSpace("desc(%s)" % c.name, [("k%d" % t, g) for t, g in enumerate(degs)],
                        window=M.space.window, field=M.field)
    act = {}
    for b in range(B.dim):
        img = phi.image(b)
        for t, vec in enumerate(K):
            v = coords(M.act_vec(img, vec))
            if v:
                act[(b, t)] = v
    dcols = {}
    for t, vec in enumerate(K):
        v = coords(M.d.apply(vec))
        if v:
            dcols[t] = v
    D = module_from_actions(B, space, act, dcols or None, name=space.name)
    D.inclusion = GradedMap(space, M.space, 0, {t: dict(vec) for t, vec in enumerate(K)},
                            check=False)
    return D


def extension_comparison(sys, D, M):
    """A ⊗_B D -> M, a ⊗ k -> a · k (the counit of the adjunction)."""
    E = extend_scalars(sys.augmentation, D)
    cols = {}
    for q, (a, k) in enumerate(E.reps):
        v = M.act_vec({a: 1}, D.inclusion.col(k))
        if v:
            cols[q] = v
    return E, GradedMap(E.space, M.space, 0, cols, check=False)


def unit_comparison(sys, X, D, M):
    """X -> descend(A ⊗_B X), x -> 1 ⊗ x, in coordinates of D."""
    Mu = getattr(M, "unflat", M)
    red = Reducer(track=True)
    for t in range(D.dim):
        red.add(D.inclusion.col(t), tag=t)
    cols = {}
    for x in range(X.dim):
        v = Mu.project({(a, x): c for a, c in sys.levels[0].unit.items()})
        res, cb = red.reduce(v, {})
        if res:
            return None
        w = {t: -c for t, c in cb.items() if c}
        if w:
            cols[x] = w
    return GradedMap(X.space, D.space, 0, cols, check=False)


def barr_beck_roundtrip(sys, X, datum=None):
    """Both round trips for the datum on A ⊗_B X (canonical unless given)."""
    r = Report("Barr-Beck round trip")
    if datum is None:
        obj = canonical_datum(sys, X)
    else:
        obj = datum
    c = descent_to_comodule(obj)
    r.extend(validate_strict_comodule(c))
    D = descend_module(c)
    E, cmp = extension_comparison(sys, D, c.M)
    r.add("extend(descend(M)) -> M is an isomorphism", is_invertible(cmp),
          {"dims": [E.dim, c.M.dim]})
    lin = all(cmp.apply(E.act(a, q)) == c.M.act_vec({a: 1}, cmp.col(q))
              for a in range(sys.levels[0].dim) for q in range(E.dim))
    r.add("comparison is A-linear", lin)
    if datum is None:
        u = unit_comparison(sys, X, D, c.M)
        r.add("descend(extend(X)) = X", u is not None and is_invertible(u),
              {"dims": [X.dim, D.dim]})
    r.descended = D
    return r


def canonical_datum(sys, X):
    M = flatten_module(extend_scalars(sys.augmentation, X), "A⊗%s" % X.name)
    return DescentDatum(sys, M, canonical_iso(sys, X, M, 1, 0, 1), "can(%s)" % X.name)


def twisted_datum(d, g, ginv):
    """δ^0 g ∘ θ ∘ δ^1 g^{-1} for an automorphism g of M."""
    sys = d.system
    th = extend_map(sys, g, d.M, d.M, 1, 1) @ d.theta @ extend_map(sys, ginv, d.M, d.M, 1, 0)
    return DescentDatum(sys, d.M, th, d.name + "^g")


def point_module(A, dims, degree=0, name=None):
    """⊕ over 1-dimensional blocks b of A of dims[b] copies of the simple module."""
    basis = []
    owner = []
    for b, k in enumerate(dims):
        for t in range(k):
            basis.append(("%s.%d" % (A.space.names[b], t), degree))
            owner.append(b)
    space = GradedSpace(name or "M%s" % "".join(map(str, dims)), basis, field=A.field)
    act = {(owner[i], i): {i: 1} for i in range(len(basis))}
    return module_from_actions(A, space, act, name=space.name)


def holim_matches_descent(d):
    """Degree-0 holim translation reproduces descent_to_comodule exactly."""
    comod = to_ainfty_comodule(d.as_holim())
    strict = descent_to_comodule(d, check=False)
    r = Report("holim vs descent %s" % d.name)
    r.add("nu_1 = -d", comod.nu.get(1, GradedMap.zero(d.M.space, d.M.space, 1)) == d.M.d.scale(-1)
          or (d.M.d.is_zero() and 1 not in comod.nu))
    r.add("nu_2 = rho", comod.nu.get(2) == strict.rho if not strict.rho.is_zero() else 2 not in comod.nu)
    r.add("no higher coactions", all(n <= 2 for n in comod.nu))
    return r


def f2_sweep(max_total=2):
    """All cocycle-satisfying θ over 𝔽_2 for S={1,2}, U1={1,2}, U2={2}."""
    from .field import GF
    F = GF(2)
    cover = FiniteCover([1, 2], [[1, 2], [2]])
    sys = cech_system(cover, 2, F)
    A = sys.levels[0]
    r = Report("F2 sweep", truncation={"max_total": max_total})
    stats = {"modules": 0, "thetas": 0, "cocycles": 0, "iso": 0, "disagree": 0}
    valid = []
    for dims in product(range(max_total + 1), repeat=A.dim):
        if sum(dims) > max_total:
            continue
        M = point_module(A, dims)
        stats["modules"] += 1
        basis = sys.hom_basis(M, 1, 0, M, 1, 0)
        P = sys.vertex_module(M, 1, 0)
        Q = sys.vertex_module(M, 1, 1)
        for coeffs in product(F.elements(), repeat=len(basis)):
            th = GradedMap.zero(P.space, Q.space, 0)
            for c, g in zip(coeffs, basis):
                if c:
                    th = th + g.scale(c)
            stats["thetas"] += 1
            d = DescentDatum(sys, M, th)
            lhs, rhs = d.cocycle_sides()
            if lhs != rhs:
                continue
            stats["cocycles"] += 1
            iso, unit = iso_iff_unit(d)
            stats["iso"] += iso
            if unit:
                valid.append(d)
            if iso != unit:
                stats["disagree"] += 1
                r.fail("iso iff unit", {"dims": list(dims), "theta": th.entries()})
    r.add("predicates agree on every instance", stats["disagree"] == 0, stats)
    r.stats = stats
    r.valid = valid
    return r

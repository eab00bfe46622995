"""dg-categories: a small protocol, module categories, free path categories
and the homotopy-invertibility predicate."""

from .graded import GradedMap, ContractError, koszul, hom_differential
from .algebra import module_hom_basis
from .linalg import axpy, Reducer
from .report import Report


class DgCategory:
    """Interface: compose(g, f) is g∘f; differential(f); identity(x);
    zero(x, y, deg); hom_basis(x, y, deg); degree(f); coords(f)."""

    def add(self, f, g):
        return f + g

    def scale(self, c, f):
        return f.scale(c)

    def is_zero(self, f):
        return f.is_zero()

    def equal(self, f, g):
        return f == g


class ModuleCategory(DgCategory):
    """Modules over a fixed algebra with graded maps as morphisms."""

    def __init__(self, algebra, name=None):
        self.algebra = algebra
        self.name = name or "Mod(%s)" % algebra.name
        self._homs = {}

    def compose(self, g, f):
        return g @ f

    def differential(self, f, x=None, y=None):
        M = x if x is not None else self._owner(f.source)
        N = y if y is not None else self._owner(f.target)
        return hom_differential(f, M.d, N.d)

    def _owner(self, space):
        own = getattr(space, "_module", None)
        if own is None:
            raise ContractError("space %s is not registered with a module" % space.name)
        return own

    def register(self, M):
        M.space._module = M
        return M

    def identity(self, x):
        return GradedMap.identity(x.space)

    def zero(self, x, y, deg=0):
        return GradedMap.zero(x.space, y.space, deg)

    def hom_basis(self, x, y, deg):
        key = (id(x), id(y), deg)
        if key not in self._homs:
            fn = getattr(x, "hom_basis_to", None)
            self._homs[key] = fn(y, deg) if fn is not None else module_hom_basis(x, y, deg)
        return self._homs[key]

    def degree(self, f):
        return f.degree

    def coords(self, f):
        return {(j, i): c for j, col in f.cols.items() for i, c in col.items()}


class PathElement:
    """A linear combination of composable generator words from src to dst.

    A word lists generators in composition order: (g, f) means g∘f.  The
    empty word is the identity of src.
    """

    __slots__ = ("src", "dst", "degree", "terms")

    def __init__(self, src, dst, degree, terms):
        self.src = src
        self.dst = dst
        self.degree = degree
        self.terms = {w: c for w, c in terms.items() if c}

    def __add__(self, other):
        if (other.src, other.dst) != (self.src, self.dst):
            raise ContractError("adding paths with different endpoints")
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return PathElement(self.src, self.dst, self.degree if self.terms else other.degree, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return PathElement(self.src, self.dst, self.degree,
                           {w: c * x for w, x in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, PathElement) and self.src == other.src
                and self.dst == other.dst and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            name = "∘".join(_gname(g) for g in w) if w else "id_%s" % (self.src,)
            parts.append("%s·%s" % (self.terms[w], name))
        return " + ".join(parts)


def _gname(g):
    if isinstance(g, tuple):
        return "f" + "".join(str(i) for i in g)
    return str(g)


class FreeDgCategory(DgCategory):
    """Path category on generators (name -> (src, dst, degree)) with d extended
    as a derivation.  Words longer than max_len or with total degree outside
    ``window`` are pruned."""

    def __init__(self, objects, generators, d_on_generators, field, window=None,
                 max_len=None, check=True):
        self.objects = list(objects)
        self.generators = dict(generators)
        self.field = field
        self.window = window
        self.max_len = max_len
        self.dgen = {}
        for g, (s, t, deg) in self.generators.items():
            dg = d_on_generators.get(g)
            if dg is None:
                dg = PathElement(s, t, deg + 1, {})
            if not isinstance(dg, PathElement):
                dg = PathElement(s, t, deg + 1, {tuple(w): field(c) for w, c in dg.items()})
            if (dg.src, dg.dst) != (s, t):
                raise ContractError("d(%s) has wrong endpoints" % (_gname(g),))
            for w in dg.terms:
                if self.word_degree(w) != deg + 1:
                    raise ContractError("d(%s) violates degree +1" % (_gname(g),))
            self.dgen[g] = dg
        self._homs = {}
        if check:
            rep = self.check_d_squared()
            if not rep.ok:
                raise ContractError(rep.summary())

    def word_degree(self, w):
        return sum(self.generators[g][2] for g in w)

    def _keep(self, w):
        if self.max_len is not None and len(w) > self.max_len:
            return False
        if self.window is not None:
            d = self.word_degree(w)
            return self.window[0] <= d <= self.window[1]
        return True

    def generator(self, g):
        s, t, deg = self.generators[g]
        return PathElement(s, t, deg, {(g,): self.field.one})

    def identity(self, x):
        return PathElement(x, x, 0, {(): self.field.one})

    def zero(self, x, y, deg=0):
        return PathElement(x, y, deg, {})

    def degree(self, f):
        return f.degree

    def coords(self, f):
        return dict(f.terms)

    def compose(self, g, f):
        if f.dst != g.src:
            raise ContractError("paths not composable: %r then %r" % (f.dst, g.src))
        t = {}
        for wg, a in g.terms.items():
            for wf, b in f.terms.items():
                w = wg + wf
                if self._keep(w):
                    axpy(t, a * b, {w: 1})
        return PathElement(f.src, g.dst, f.degree + g.degree, t)

    def d_word(self, w):
        out = {}
        pre = 0
        for t, g in enumerate(w):
            s = koszul(1, pre)
            for v, c in self.dgen[g].terms.items():
                nw = w[:t] + v + w[t + 1:]
                if self._keep(nw):
                    axpy(out, s * c, {nw: 1})
            pre += self.generators[g][2]
        return out

    def differential(self, f):
        t = {}
        for w, c in f.terms.items():
            axpy(t, c, self.d_word(w))
        return PathElement(f.src, f.dst, f.degree + 1, t)

    def check_d_squared(self):
        r = Report("d^2 on generators")
        for g in sorted(self.generators, key=repr):
            if not self.differential(self.dgen[g]).is_zero():
                r.fail("d^2(%s)" % _gname(g), repr(self.differential(self.dgen[g])))
            else:
                r.add("d^2(%s)" % _gname(g), True)
        return r

    def words(self, x, y, deg=None, max_len=None):
        """All composable words x -> y (optionally of fixed degree)."""
        ml = max_len if max_len is not None else self.max_len
        if ml is None:
            ml = 2 * len(self.objects) + len(self.generators)
        out = []
        by_src = {}
        for g, (s, t, _) in sorted(self.generators.items(), key=lambda kv: repr(kv[0])):
            by_src.setdefault(s, []).append((g, t))

        def grow(obj, rev):
            if obj == y:
                w = tuple(reversed(rev))
                if (deg is None or self.word_degree(w) == deg) and self._keep(w):
                    out.append(w)
            if len(rev) >= ml:
                return
            for g, t in by_src.get(obj, ()):
                grow(t, rev + [g])

        grow(x, [])
        return sorted(out, key=repr)

    def hom_basis(self, x, y, deg):
        key = (x, y, deg)
        if key not in self._homs:
            self._homs[key] = [PathElement(x, y, deg, {w: self.field.one})
                               for w in self.words(x, y, deg)]
        return self._homs[key]


def free_dg_category(generators, d_on_generators, field, objects=None, window=None, max_len=None):
    gens = {g[0]: (g[1], g[2], g[3]) for g in generators} if isinstance(generators, list) else generators
    objs = objects
    if objs is None:
        objs = sorted({s for s, _, _ in gens.values()} | {t for _, t, _ in gens.values()}, key=repr)
    return FreeDgCategory(objs, gens, d_on_generators, field, window, max_len)


def check_derivation(cat, g, f):
    """d(g∘f) == d(g)∘f + (-1)^{|g|} g∘d(f)."""
    lhs = cat.differential(cat.compose(g, f))
    rhs = cat.add(cat.compose(cat.differential(g), f),
                  cat.scale(koszul(1, cat.degree(g)), cat.compose(g, cat.differential(f))))
    return cat.equal(lhs, rhs)


def validate_dgcat(cat, objects, degrees):
    """Associativity, units, Leibniz and d^2 = 0 on hom bases in the given degrees."""
    r = Report("dg-category")
    homs = {}
    for x in objects:
        for y in objects:
            for p in degrees:
                homs[(id(x) if not isinstance(x, (int, str, tuple)) else x,
                      id(y) if not isinstance(y, (int, str, tuple)) else y, p)] = \
                    cat.hom_basis(x, y, p)

    def key(o):
        return o if isinstance(o, (int, str, tuple)) else id(o)

    bad = 0
    for x in objects:
        for y in objects:
            for p in degrees:
                for f in homs[(key(x), key(y), p)]:
                    if not cat.is_zero(cat.differential(cat.differential(f))):
                        bad += r.fail("d^2", repr(f)) is False
                    if not (cat.equal(cat.compose(cat.identity(y), f), f)
                            and cat.equal(cat.compose(f, cat.identity(x)), f)):
                        r.fail("unit", repr(f))
                    for z in objects:
                        for q in degrees:
                            for g in homs[(key(y), key(z), q)]:
                                if not check_derivation(cat, g, f):
                                    r.fail("leibniz", (repr(g), repr(f)))
                                for w in objects:
                                    for s in degrees:
                                        for h in homs[(key(z), key(w), s)]:
                                            a = cat.compose(cat.compose(h, g), f)
                                            b = cat.compose(h, cat.compose(g, f))
                                            if not cat.equal(a, b):
                                                r.fail("associativity", (repr(h), repr(g), repr(f)))
    if not r.checks:
        r.add("dg-category axioms", True)
    return r


def h0_invertible(cat, phi, x, y):
    """Find ψ: y -> x closed of degree 0 and r_x, r_y of degree -1 with
    d(r_x) = ψφ - id_x and d(r_y) = φψ - id_y.  Returns (ψ, r_x, r_y) or None."""
    if cat.degree(phi) != 0 and not cat.is_zero(phi):
        raise ContractError("h0_invertible needs a degree-0 morphism")
    if not cat.is_zero(cat.differential(phi)):
        raise ContractError("h0_invertible needs a closed morphism")
    P = cat.hom_basis(y, x, 0)
    Rx = cat.hom_basis(x, x, -1)
    Ry = cat.hom_basis(y, y, -1)
    cols = {}
    n = 0
    for psi in P:
        col = {}
        axpy(col, 1, _tag("dpsi", cat.coords(cat.differential(psi))))
        axpy(col, -1, _tag("x", cat.coords(cat.compose(psi, phi))))
        axpy(col, -1, _tag("y", cat.coords(cat.compose(phi, psi))))
        cols[n] = col
        n += 1
    for r in Rx:
        cols[n] = _tag("x", cat.coords(cat.differential(r)))
        n += 1
    for r in Ry:
        cols[n] = _tag("y", cat.coords(cat.differential(r)))
        n += 1
    b = {}
    axpy(b, -1, _tag("x", cat.coords(cat.identity(x))))
    axpy(b, -1, _tag("y", cat.coords(cat.identity(y))))
    red = Reducer(track=True)
    for j in range(n):
        red.add(cols[j], tag=j)
    res, cb = red.reduce(b, {})
    if res:
        return None
    sol = {k: -c for k, c in cb.items() if c}

    def combo(basis, off, x0, y0, deg):
        out = cat.zero(x0, y0, deg)
        for i, f in enumerate(basis):
            c = sol.get(off + i)
            if c:
                out = cat.add(out, cat.scale(c, f))
        return out

    psi = combo(P, 0, y, x, 0)
    rx = combo(Rx, len(P), x, x, -1)
    ry = combo(Ry, len(P) + len(Rx), y, y, -1)
    return psi, rx, ry


def _tag(t, vec):
    return {(t,) + (k if isinstance(k, tuple) else (k,)): c for k, c in vec.items()}

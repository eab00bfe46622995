"""Graded spaces, graded maps, complexes and the Koszul sign engine."""

from .field import QQ
from .linalg import axpy


class DimensionError(ValueError):
    pass


class ContractError(ValueError):
    pass


def koszul(a, b):
    return -1 if (a * b) % 2 else 1


class GradedSpace:
    """Finite graded space with a named, degree-labelled basis.

    Tensor products are flat: ``factors`` lists the plain factors and a
    basis index is the row-major flattening of the factor indices.
    """

    def __init__(self, name, basis, window=None, field=QQ, factors=None, ends=None):
        self.name = name
        self.field = field
        self.names = tuple(b[0] for b in basis)
        self.degrees = tuple(int(b[1]) for b in basis)
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names of %s are not unique" % name)
        self.index = {n: i for i, n in enumerate(self.names)}
        if window is None:
            window = (min(self.degrees), max(self.degrees)) if self.degrees else (0, 0)
        self.window = (int(window[0]), int(window[1]))
        for n, d in zip(self.names, self.degrees):
            if not self.window[0] <= d <= self.window[1]:
                raise ValueError("basis element %s of %s has degree %d outside window %s"
                                 % (n, name, d, self.window))
        self.factors = factors
        self.ends = ends
        self.shift_base = None
        self._shifts = {}
        self._hash = hash((self.names, self.degrees, self.window))

    @property
    def dim(self):
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, GradedSpace) and self._hash == other._hash
                and self.names == other.names and self.degrees == other.degrees
                and self.window == other.window)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "GradedSpace(%s, dim=%d)" % (self.name, self.dim)

    def basis_list(self):
        return [(n, d) for n, d in zip(self.names, self.degrees)]

    def in_degree(self, d):
        return [i for i, e in enumerate(self.degrees) if e == d]

    def word(self, i):
        """Factor indices of basis element i of a tensor space."""
        if not self.factors:
            return (i,)
        out = []
        for f in reversed(self.factors):
            i, r = divmod(i, f.dim)
            out.append(r)
        return tuple(reversed(out))

    def flat(self, word):
        if not self.factors:
            return word[0]
        i = 0
        for f, w in zip(self.factors, word):
            i = i * f.dim + w
        return i

    def vector_degree(self, vec):
        degs = {self.degrees[i] for i in vec}
        if len(degs) > 1:
            raise ContractError("inhomogeneous vector")
        return degs.pop() if degs else None


def tensor_space(*spaces):
    """Flat tensor product; factors of tensor inputs are spliced in."""
    factors = []
    for s in spaces:
        factors.extend(s.factors if s.factors else [s])
    if not factors:
        raise DimensionError("empty tensor product")
    if len(factors) == 1:
        return factors[0]
    names = [""]
    degs = [0]
    for f in factors:
        names = [a + ("⊗" if a else "") + b for a in names for b in f.names]
        degs = [a + b for a in degs for b in f.degrees]
    lo = sum(f.window[0] for f in factors)
    hi = sum(f.window[1] for f in factors)
    return GradedSpace("⊗".join(f.name for f in factors), list(zip(names, degs)),
                       window=(lo, hi), field=factors[0].field, factors=tuple(factors))


def shift(M, k):
    """M[k]: element of degree d in M sits in degree d - k."""
    if k == 0:
        return M
    if M.shift_base is not None:
        base, k0 = M.shift_base
        return shift(base, k0 + k)
    if k not in M._shifts:
        S = GradedSpace("%s[%d]" % (M.name, k),
                        [("%s[%d]" % (n, k), d - k) for n, d in zip(M.names, M.degrees)],
                        window=(M.window[0] - k, M.window[1] - k), field=M.field,
                        ends=M.ends)
        S.shift_base = (M, k)
        M._shifts[k] = S
    return M._shifts[k]


class GradedMap:
    """Degree-d linear map stored column-wise: cols[src] = {dst: coeff}."""

    __slots__ = ("source", "target", "degree", "cols", "memo")

    def __init__(self, source, target, degree, cols, check=True):
        self.memo = None
        self.source = source
        self.target = target
        self.degree = int(degree)
        clean = {}
        for j, col in cols.items():
            c = {i: x for i, x in col.items() if x}
            if c:
                clean[j] = c
        self.cols = clean
        if check:
            for j, col in clean.items():
                if not 0 <= j < source.dim:
                    raise DimensionError("source index %r out of range" % (j,))
                for i in col:
                    if not 0 <= i < target.dim:
                        raise DimensionError("target index %r out of range" % (i,))
                    if target.degrees[i] != source.degrees[j] + self.degree:
                        raise ContractError(
                            "entry %s -> %s violates degree %d"
                            % (source.names[j], target.names[i], self.degree))

    @classmethod
    def identity(cls, space):
        one = space.field.one
        return cls(space, space, 0, {i: {i: one} for i in range(space.dim)}, check=False)

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree, {}, check=False)

    @classmethod
    def from_function(cls, source, target, degree, fn, check=True):
        return cls(source, target, degree, {j: fn(j) for j in range(source.dim)}, check)

    @property
    def field(self):
        return self.source.field

    def col(self, j):
        return self.cols.get(j, {})

    def apply(self, vec):
        out = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if col:
                axpy(out, c, col)
        return out

    def __call__(self, vec):
        return self.apply(vec)

    def __matmul__(self, other):
        """self ∘ other."""
        if other.target != self.source:
            raise DimensionError("cannot compose %s after %s" % (self.source.name, other.target.name))
        cols = {j: self.apply(col) for j, col in other.cols.items()}
        return GradedMap(other.source, self.target, self.degree + other.degree, cols, check=False)

    def _same(self, other):
        if other.source != self.source or other.target != self.target:
            raise DimensionError("maps between different spaces")
        if other.degree != self.degree and other.cols and self.cols:
            raise ContractError("adding maps of degrees %d and %d" % (self.degree, other.degree))

    def __add__(self, other):
        self._same(other)
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            axpy(cols.setdefault(j, {}), 1, c)
        deg = self.degree if self.cols else other.degree
        return GradedMap(self.source, self.target, deg, cols, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return GradedMap(self.source, self.target, self.degree,
                         {j: {i: c * x for i, x in col.items()} for j, col in self.cols.items()},
                         check=False)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if other.source != self.source or other.target != self.target:
            return False
        if self.cols != other.cols:
            return False
        return not self.cols or self.degree == other.degree

    __hash__ = None

    def entries(self):
        """Canonically ordered (src-name, dst-name, coeff) triplets."""
        out = []
        for j in sorted(self.cols):
            for i in sorted(self.cols[j]):
                out.append((self.source.names[j], self.target.names[i], self.cols[j][i]))
        return out

    def first_difference(self, other):
        for j in sorted(set(self.cols) | set(other.cols)):
            a, b = self.col(j), other.col(j)
            if a != b:
                return self.source.names[j]
        return None

    def __repr__(self):
        return "GradedMap(%s -> %s, deg %d, %d cols)" % (
            self.source.name, self.target.name, self.degree, len(self.cols))


def tensor_maps(maps):
    """f_1 ⊗ ... ⊗ f_r with the Koszul rule: f_i picks up (-1)^{|f_i| * (degrees to its left)}."""
    maps = list(maps)
    src = tensor_space(*[f.source for f in maps])
    tgt = tensor_space(*[f.target for f in maps])
    deg = sum(f.degree for f in maps)
    one = src.field.one
    # expand group by group so tensor inputs keep their own internal words
    partial = [((), (), 0, one)]
    for f in maps:
        nxt = []
        for sw, tw, sdeg, c in partial:
            sign = koszul(f.degree, sdeg)
            for j, col in f.cols.items():
                for i, x in col.items():
                    nxt.append((sw + (j,), tw + (i,), sdeg + f.source.degrees[j], c * sign * x))
        partial = nxt
    cols = {}
    sdims = [f.source for f in maps]
    tdims = [f.target for f in maps]
    for sw, tw, _, c in partial:
        j = _flat_index(sdims, sw)
        i = _flat_index(tdims, tw)
        col = cols.setdefault(j, {})
        v = col.get(i, 0) + c
        if v:
            col[i] = v
        else:
            col.pop(i, None)
    return GradedMap(src, tgt, deg, cols, check=False)


def _flat_index(spaces, idx):
    i = 0
    for s, w in zip(spaces, idx):
        i = i * s.dim + w
    return i


def tensor_map(f, g):
    return tensor_maps([f, g])


def suspension(M):
    """s: M -> M[1] of degree -1, identity on components."""
    S = shift(M, 1)
    one = M.field.one
    return GradedMap(M, S, -1, {i: {i: one} for i in range(M.dim)}, check=False)


def desuspension(M):
    """ω: M[1] -> M of degree +1, inverse of s."""
    S = shift(M, 1)
    one = M.field.one
    return GradedMap(S, M, 1, {i: {i: one} for i in range(M.dim)}, check=False)


class ShiftWitness:
    def __init__(self, M, n=1):
        self.n = n
        self.s = suspension(M)
        self.omega = desuspension(M)


def power_shift(M, n):
    """(s^{⊗n}, ω^{⊗n}) for s: M -> M[1]."""
    if n < 1:
        raise ValueError("power_shift needs n >= 1")
    s = suspension(M)
    w = desuspension(M)
    return tensor_maps([s] * n), tensor_maps([w] * n)


def _factors(space, n):
    fs = space.factors if space.factors else (space,)
    if len(fs) != n:
        raise DimensionError("expected %d tensor factors in %s" % (n, space.name))
    return fs


def shift_conjugate(f, n, direction="up", l=None, inverse=False):
    """The shift bijections on multilinear maps.

    up:   f: M^{⊗n} -> N of degree l+1-n  gives  (-1)^l s∘f∘ω^{⊗n}: M[1]^{⊗n} -> N[1]
    down: f: M -> N^{⊗n} of degree l+1-n  gives  (-1)^l ω^{⊗n}∘f∘s: M[-1] -> N[-1]^{⊗n}
    With inverse=True the input is the conjugated map and f is recovered.
    """
    sign_n = -1 if (n * (n - 1) // 2) % 2 else 1
    if direction == "up":
        if not inverse:
            lv = f.degree + n - 1
            if l is not None and l != lv:
                raise ContractError("degree %d inconsistent with n=%d, l=%d" % (f.degree, n, l))
            ins = _factors(f.source, n)
            om = tensor_maps([desuspension(X) for X in ins]) if n > 1 else desuspension(ins[0])
            out = suspension(f.target) @ f @ om
            return out.scale(-1) if lv % 2 else out
        lv = f.degree
        ins = [shift(X, -1) for X in _factors(f.source, n)]
        sp = tensor_maps([suspension(X) for X in ins]) if n > 1 else suspension(ins[0])
        out = desuspension(shift(f.target, -1)) @ f @ sp
        return out.scale(-sign_n if lv % 2 else sign_n)
    if direction == "down":
        if not inverse:
            lv = f.degree + n - 1
            if l is not None and l != lv:
                raise ContractError("degree %d inconsistent with n=%d, l=%d" % (f.degree, n, l))
            outs = [shift(X, -1) for X in _factors(f.target, n)]
            om = tensor_maps([desuspension(X) for X in outs]) if n > 1 else desuspension(outs[0])
            out = om @ f @ suspension(shift(f.source, -1))
            return out.scale(-1) if lv % 2 else out
        lv = f.degree
        outs = _factors(f.target, n)
        sp = tensor_maps([suspension(X) for X in outs]) if n > 1 else suspension(outs[0])
        out = sp @ f @ desuspension(f.source)
        return out.scale(-sign_n if lv % 2 else sign_n)
    raise ValueError("direction must be 'up' or 'down'")


class Complex:
    """A graded space with a degree +1 differential squaring to zero."""

    def __init__(self, space, d=None, check=True):
        self.space = space
        self.d = d if d is not None else GradedMap.zero(space, space, 1)
        if self.d.degree != 1 and not self.d.is_zero():
            raise ContractError("differential must have degree +1")
        if check and not (self.d @ self.d).is_zero():
            raise ContractError("d∘d != 0 on %s" % space.name)

    def is_closed(self, vec):
        return not self.d.apply(vec)


def hom_differential(f, dM, dN):
    """d(f) = d_N∘f - (-1)^{|f|} f∘d_M."""
    a = dN @ f
    b = f @ dM
    return a - b if f.degree % 2 == 0 else a + b


class HomComplex(Complex):
    """Hom*_k(M, N) with basis E(y, x) in degree |y| - |x|."""

    def __init__(self, M, N):
        self.M = M
        self.N = N
        Ms, Ns = M.space, N.space
        basis = []
        for x in range(Ms.dim):
            for y in range(Ns.dim):
                basis.append(("%s<-%s" % (Ns.names[y], Ms.names[x]),
                              Ns.degrees[y] - Ms.degrees[x]))
        lo = Ns.window[0] - Ms.window[1]
        hi = Ns.window[1] - Ms.window[0]
        space = GradedSpace("Hom(%s,%s)" % (Ms.name, Ns.name), basis, window=(lo, hi),
                            field=Ms.field)
        cols = {}
        for k in range(space.dim):
            f = self.to_map({k: Ms.field.one})
            cols[k] = self.from_map(hom_differential(f, M.d, N.d))
        super().__init__(space, GradedMap(space, space, 1, cols))

    def to_map(self, vec):
        Ms, Ns = self.M.space, self.N.space
        cols = {}
        deg = None
        for k, c in vec.items():
            x, y = divmod(k, Ns.dim)
            cols.setdefault(x, {})[y] = c
            deg = Ns.degrees[y] - Ms.degrees[x]
        return GradedMap(Ms, Ns, deg or 0, cols)

    def from_map(self, f):
        n = self.N.space.dim
        return {x * n + y: c for x, col in f.cols.items() for y, c in col.items()}


def hom_complex(M, N):
    return HomComplex(M, N)

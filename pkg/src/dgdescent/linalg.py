"""Exact sparse linear algebra on dict vectors.

A vector is a dict key -> nonzero scalar.  Keys must be mutually comparable
so that pivot choice (smallest key) is deterministic.
"""

from fractions import Fraction


def axpy(target, c, vec):
    """target += c * vec, in place, dropping zeros."""
    if not c:
        return target
    for k, x in vec.items():
        y = target.get(k)
        y = c * x if y is None else y + c * x
        if y:
            target[k] = y
        else:
            target.pop(k, None)
    return target


def scaled(c, vec):
    if not c:
        return {}
    return {k: c * x for k, x in vec.items()}


def vsum(*vecs):
    out = {}
    for v in vecs:
        axpy(out, 1, v)
    return out


class Reducer:
    """Incremental reduced row echelon form.

    Every stored basis vector has coefficient one at its pivot and zero at
    every other pivot.  With ``track`` each basis vector remembers the
    combination of inserted tags that produced it.
    """

    def __init__(self, track=False):
        self.track = track
        self.basis = {}
        self.combos = {}

    def __len__(self):
        return len(self.basis)

    def reduce(self, vec, combo=None):
        v = dict(vec)
        cb = dict(combo) if combo is not None else None
        for p in [k for k in v if k in self.basis]:
            c = v.get(p)
            if c:
                axpy(v, -c, self.basis[p])
                if cb is not None:
                    axpy(cb, -c, self.combos[p])
        return v, cb

    def add(self, vec, tag=None):
        """Insert vec.  Returns None if independent, else the dependency combo."""
        combo = {tag: 1} if self.track else None
        v, cb = self.reduce(vec, combo)
        if not v:
            return cb if self.track else {}
        p = min(v)
        x = v[p]
        inv = Fraction(1, x) if isinstance(x, int) else 1 / x
        v = {k: x * inv for k, x in v.items()}
        if cb is not None:
            cb = {k: x * inv for k, x in cb.items()}
        for q, w in self.basis.items():
            c = w.get(p)
            if c:
                axpy(w, -c, v)
                if cb is not None:
                    axpy(self.combos[q], -c, cb)
        self.basis[p] = v
        if cb is not None:
            self.combos[p] = cb
        return None

    def pivots(self):
        return sorted(self.basis)


def _columns(A):
    if hasattr(A, "cols"):
        return sorted(A.cols.items())
    if isinstance(A, dict):
        return sorted(A.items())
    return list(enumerate(A))


def rank(A):
    r = Reducer()
    for _, col in _columns(A):
        r.add(col)
    return len(r)


def kernel(A, ncols=None):
    """Basis of {x : A x = 0}; A given by its columns (list or dict)."""
    cols = dict(_columns(A))
    if ncols is None:
        ncols = (max(cols) + 1) if cols else 0
    r = Reducer(track=True)
    out = []
    for j in range(ncols):
        dep = r.add(cols.get(j, {}), tag=j)
        if dep is not None:
            out.append(dep)
    return out


def solve_linear(A, b, ncols=None):
    """A particular solution x of A x = b, or None when inconsistent."""
    cols = dict(_columns(A))
    if ncols is None:
        ncols = (max(cols) + 1) if cols else 0
    r = Reducer(track=True)
    for j in range(ncols):
        r.add(cols.get(j, {}), tag=j)
    res, cb = r.reduce(b, {})
    if res:
        return None
    return {k: -x for k, x in cb.items() if x}


def cokernel(A, rows):
    """Quotient of the row space by the column span.

    Returns (kept, project) where ``kept`` lists the row keys forming the
    quotient basis and ``project`` maps a vector to quotient coordinates
    keyed by position in ``kept``.
    """
    r = Reducer()
    for _, col in _columns(A):
        r.add(col)
    kept = [k for k in rows if k not in r.basis]
    pos = {k: i for i, k in enumerate(kept)}

    def project(vec):
        v, _ = r.reduce(vec)
        return {pos[k]: x for k, x in v.items()}

    return kept, project


def inverse_columns(cols, n):
    """Inverse of an n x n matrix given by columns, or None if singular."""
    r = Reducer(track=True)
    for j in range(n):
        if r.add(cols.get(j, {}), tag=j) is not None:
            return None
    out = {}
    for i in range(n):
        res, cb = r.reduce({i: 1}, {})
        out[i] = {k: -x for k, x in cb.items() if x}
    return out

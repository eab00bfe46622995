"""JSON documents: schema, loading with re-validation, canonical saving."""

import json

import jsonschema

from .field import Field
from .graded import GradedSpace, GradedMap, Complex, tensor_space
from .algebra import DgAlgebra, DgModule, validate_dg_algebra, validate_module, free_module
from .ainfty import AInftyAlgebra, AInftyCoalgebra, AInftyComodule
from .dgcat import FreeDgCategory, PathElement
from .descent import point_module
from .cosimplicial import FiniteCover, cech_system, validate_cosimplicial


class SchemaError(ValueError):
    def __init__(self, path, message):
        self.path = "/".join(str(p) for p in path) or "<root>"
        super().__init__("%s: %s" % (self.path, message))


_coeff = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_name = {"type": "string", "minLength": 1}
_space_ref = {"oneOf": [_name, {"type": "array", "items": _name, "minItems": 1}]}
_opmap = {"type": "object", "patternProperties": {r"^[1-9][0-9]*$": _name},
          "additionalProperties": False}
_base = {"oneOf": [
    {"type": "object", "required": ["free"], "additionalProperties": False, "properties": {
        "free": {"type": "object", "properties": {
            "rank": {"type": "integer", "minimum": 1},
            "shifts": {"type": "array", "items": {"type": "integer"}}},
            "required": ["rank"], "additionalProperties": False}}},
    {"type": "object", "required": ["points"], "additionalProperties": False, "properties": {
        "points": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "deg": {"type": "integer"}}}]}

SCHEMA = {
    "type": "object",
    "required": ["field"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "object", "properties": {
            "kind": {"enum": ["QQ", "GF"]}, "p": {"type": "integer", "minimum": 2}},
            "required": ["kind"], "additionalProperties": False},
        "spaces": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["basis"], "additionalProperties": False,
            "properties": {
                "basis": {"type": "array", "items": {
                    "type": "object", "required": ["name", "deg"], "additionalProperties": False,
                    "properties": {"name": _name, "deg": {"type": "integer"}}}},
                "window": {"type": "array", "items": {"type": "integer"},
                           "minItems": 2, "maxItems": 2}}}},
        "maps": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["from", "to", "deg", "entries"],
            "additionalProperties": False,
            "properties": {
                "from": _space_ref, "to": _space_ref, "deg": {"type": "integer"},
                "entries": {"type": "array", "items": {
                    "type": "object", "required": ["src", "dst", "coeff"],
                    "additionalProperties": False,
                    "properties": {"src": _name, "dst": _name, "coeff": _coeff}}}}}},
        "algebras": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["space", "mult", "unit"], "additionalProperties": False,
            "properties": {"space": _name, "mult": _name, "d": _name,
                           "unit": {"type": "object", "additionalProperties": _coeff},
                           "commutative": {"type": "boolean"}}}},
        "complexes": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["space", "d"], "additionalProperties": False,
            "properties": {"space": _name, "d": _name}}},
        "modules": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["algebra", "space", "action"],
            "additionalProperties": False,
            "properties": {"algebra": _name, "space": _name, "action": _name, "d": _name}}},
        "ainfty": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["space", "ops"], "additionalProperties": False,
            "properties": {"space": _name, "ops": _opmap}}},
        "coalgebras": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["space", "coops"], "additionalProperties": False,
            "properties": {"space": _name, "coops": _opmap, "counit": _name}}},
        "comodules": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["coalgebra", "space", "coactions"],
            "additionalProperties": False,
            "properties": {"coalgebra": _name, "space": _name, "coactions": _opmap}}},
        "dgcats": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["generators"], "additionalProperties": False,
            "properties": {
                "objects": {"type": "array", "items": _name},
                "generators": {"type": "array", "items": {
                    "type": "object", "required": ["name", "src", "dst", "deg"],
                    "additionalProperties": False,
                    "properties": {"name": _name, "src": _name, "dst": _name,
                                   "deg": {"type": "integer"}}}},
                "d": {"type": "object", "additionalProperties": {
                    "type": "array", "items": {
                        "type": "object", "required": ["word", "coeff"],
                        "additionalProperties": False,
                        "properties": {"word": {"type": "array", "items": _name},
                                       "coeff": _coeff}}}},
                "window": {"type": "array", "items": {"type": "integer"},
                           "minItems": 2, "maxItems": 2},
                "max_len": {"type": "integer", "minimum": 1}}}},
        "covers": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["points", "opens"], "additionalProperties": False,
            "properties": {
                "points": {"type": "array", "items": _name, "minItems": 1},
                "opens": {"type": "array", "items": {"type": "array", "items": _name}},
                "coefficient": _name}}},
        "systems": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["cover", "levels"], "additionalProperties": False,
            "properties": {"cover": _name, "levels": {"type": "integer", "minimum": 1,
                                                      "maximum": 4}}}},
        "holim": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["system", "base"], "additionalProperties": False,
            "properties": {"system": _name, "base": _base, "theta": {"enum": ["canonical"]}}}},
        "descent": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["system", "base"], "additionalProperties": False,
            "properties": {"system": _name, "base": _base, "theta": {"enum": ["canonical"]}}}},
    },
}

SECTIONS = ["spaces", "maps", "algebras", "complexes", "modules", "ainfty", "coalgebras",
            "comodules", "dgcats", "covers", "systems", "holim", "descent"]


class Document:
    """Validated in-memory model of a JSON document."""

    def __init__(self, field):
        self.field = field
        for s in SECTIONS:
            setattr(self, s, {})
        self.raw = {}


def _check_schema(raw):
    v = jsonschema.Draft7Validator(SCHEMA)
    errs = sorted(v.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errs:
        e = errs[0]
        raise SchemaError(list(e.absolute_path), e.message)


def _ref(doc, section, name, path):
    table = getattr(doc, section)
    if name not in table:
        raise SchemaError(path, "unknown %s %r" % (section[:-1] if section.endswith("s") else section, name))
    return table[name]


def _space_of(doc, ref, path):
    if isinstance(ref, list):
        parts = [_ref(doc, "spaces", r, path + [k]) for k, r in enumerate(ref)]
        return tensor_space(*parts) if len(parts) > 1 else parts[0]
    return _ref(doc, "spaces", ref, path)


def _parse_coeff(field, s, path):
    try:
        return field.parse(s)
    except (ZeroDivisionError, ValueError) as exc:
        raise SchemaError(path, "bad coefficient %r (%s)" % (s, exc))


def loads(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([], "invalid JSON: %s" % exc)
    return load_obj(raw)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def load_obj(raw):
    _check_schema(raw)
    f = raw["field"]
    if f["kind"] == "GF" and "p" not in f:
        raise SchemaError(["field"], "GF needs p")
    try:
        field = Field(f.get("p") if f["kind"] == "GF" else None)
    except ValueError as exc:
        raise SchemaError(["field", "p"], str(exc))
    doc = Document(field)
    doc.raw = raw
    for name, s in sorted(raw.get("spaces", {}).items()):
        path = ["spaces", name]
        try:
            doc.spaces[name] = GradedSpace(name, [(b["name"], b["deg"]) for b in s["basis"]],
                                           window=s.get("window"), field=field)
        except ValueError as exc:
            raise SchemaError(path, str(exc))
    for name, m in sorted(raw.get("maps", {}).items()):
        path = ["maps", name]
        src = _space_of(doc, m["from"], path + ["from"])
        tgt = _space_of(doc, m["to"], path + ["to"])
        cols = {}
        for k, e in enumerate(m["entries"]):
            ep = path + ["entries", k]
            if e["src"] not in src.index:
                raise SchemaError(ep + ["src"], "unknown basis element %r" % e["src"])
            if e["dst"] not in tgt.index:
                raise SchemaError(ep + ["dst"], "unknown basis element %r" % e["dst"])
            j, i = src.index[e["src"]], tgt.index[e["dst"]]
            c = _parse_coeff(field, e["coeff"], ep + ["coeff"])
            if i in cols.get(j, {}):
                raise SchemaError(ep, "duplicate entry")
            if tgt.degrees[i] - src.degrees[j] != m["deg"] and c:
                raise SchemaError(ep, "entry %s -> %s violates degree %d"
                                  % (e["src"], e["dst"], m["deg"]))
            if c:
                cols.setdefault(j, {})[i] = c
        doc.maps[name] = GradedMap(src, tgt, m["deg"], cols, check=False)
    _load_structures(doc, raw)
    return doc


def _wrap(path, fn):
    try:
        return fn()
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(path, str(exc))


def _load_structures(doc, raw):
    F = doc.field
    for name, a in sorted(raw.get("algebras", {}).items()):
        path = ["algebras", name]
        sp = _ref(doc, "spaces", a["space"], path + ["space"])
        mult = _ref(doc, "maps", a["mult"], path + ["mult"])
        d = _ref(doc, "maps", a["d"], path + ["d"]) if "d" in a else None
        unit = {}
        for b, c in a["unit"].items():
            if b not in sp.index:
                raise SchemaError(path + ["unit", b], "unknown basis element")
            unit[sp.index[b]] = _parse_coeff(F, c, path + ["unit", b])
        A = _wrap(path, lambda: DgAlgebra(sp, mult, unit, d, a.get("commutative", False), name))
        rep = validate_dg_algebra(A)
        if not rep.ok:
            raise SchemaError(path, "invariant failure: " + rep.summary())
        doc.algebras[name] = A
    for name, c in sorted(raw.get("complexes", {}).items()):
        path = ["complexes", name]
        sp = _ref(doc, "spaces", c["space"], path + ["space"])
        d = _ref(doc, "maps", c["d"], path + ["d"])
        doc.complexes[name] = _wrap(path, lambda: Complex(sp, d, check=False))
    for name, m in sorted(raw.get("modules", {}).items()):
        path = ["modules", name]
        A = _ref(doc, "algebras", m["algebra"], path + ["algebra"])
        sp = _ref(doc, "spaces", m["space"], path + ["space"])
        act = _ref(doc, "maps", m["action"], path + ["action"])
        d = _ref(doc, "maps", m["d"], path + ["d"]) if "d" in m else None
        M = _wrap(path, lambda: DgModule(A, sp, act, d, name=name))
        rep = validate_module(M)
        if not rep.ok:
            raise SchemaError(path, "invariant failure: " + rep.summary())
        doc.modules[name] = M
    for name, a in sorted(raw.get("ainfty", {}).items()):
        path = ["ainfty", name]
        sp = _ref(doc, "spaces", a["space"], path + ["space"])
        ops = {int(k): _ref(doc, "maps", v, path + ["ops", k]) for k, v in a["ops"].items()}
        doc.ainfty[name] = _wrap(path, lambda: AInftyAlgebra(sp, ops, name=name))
    for name, a in sorted(raw.get("coalgebras", {}).items()):
        path = ["coalgebras", name]
        sp = _ref(doc, "spaces", a["space"], path + ["space"])
        ops = {int(k): _ref(doc, "maps", v, path + ["coops", k]) for k, v in a["coops"].items()}
        eps = _ref(doc, "maps", a["counit"], path + ["counit"]) if "counit" in a else None
        doc.coalgebras[name] = _wrap(path, lambda: AInftyCoalgebra(sp, ops, counit=eps, name=name))
    for name, a in sorted(raw.get("comodules", {}).items()):
        path = ["comodules", name]
        co = _ref(doc, "coalgebras", a["coalgebra"], path + ["coalgebra"])
        sp = _ref(doc, "spaces", a["space"], path + ["space"])
        nu = {int(k): _ref(doc, "maps", v, path + ["coactions", k])
              for k, v in a["coactions"].items()}
        doc.comodules[name] = _wrap(path, lambda: AInftyComodule(co, sp, nu, name=name))
    for name, c in sorted(raw.get("dgcats", {}).items()):
        path = ["dgcats", name]
        gens = {}
        for k, g in enumerate(c["generators"]):
            if g["name"] in gens:
                raise SchemaError(path + ["generators", k], "duplicate generator")
            gens[g["name"]] = (g["src"], g["dst"], g["deg"])
        dgen = {}
        for g, terms in c.get("d", {}).items():
            if g not in gens:
                raise SchemaError(path + ["d", g], "unknown generator")
            t = {}
            for k, term in enumerate(terms):
                for x in term["word"]:
                    if x not in gens:
                        raise SchemaError(path + ["d", g, k, "word"], "unknown generator %r" % x)
                w = tuple(term["word"])
                t[w] = t.get(w, F.zero) + _parse_coeff(F, term["coeff"], path + ["d", g, k])
            s, e, deg = gens[g]
            dgen[g] = PathElement(s, e, deg + 1, {w: x for w, x in t.items() if x})
        objs = c.get("objects") or sorted({v[0] for v in gens.values()} | {v[1] for v in gens.values()})
        win = tuple(c["window"]) if "window" in c else None
        doc.dgcats[name] = _wrap(path, lambda: FreeDgCategory(objs, gens, dgen, F, win,
                                                              c.get("max_len", 4), check=False))
    for name, c in sorted(raw.get("covers", {}).items()):
        path = ["covers", name]
        coeff = _ref(doc, "algebras", c["coefficient"], path + ["coefficient"]) \
            if "coefficient" in c else None
        doc.covers[name] = _wrap(path, lambda: FiniteCover(c["points"], c["opens"], coeff))
    for name, s in sorted(raw.get("systems", {}).items()):
        path = ["systems", name]
        cov = _ref(doc, "covers", s["cover"], path + ["cover"])
        sys = _wrap(path, lambda: cech_system(cov, s["levels"], F))
        rep = validate_cosimplicial(sys)
        if not rep.ok:
            raise SchemaError(path, "invariant failure: " + rep.summary())
        sys.name = name
        sys.cover = cov
        cov.index = {p: k for k, p in enumerate(cov.points)}
        doc.systems[name] = sys
    for section in ("holim", "descent"):
        for name, h in sorted(raw.get(section, {}).items()):
            path = [section, name]
            sys = _ref(doc, "systems", h["system"], path + ["system"])
            X = _wrap(path + ["base"], lambda: base_module(sys, h["base"], name))
            getattr(doc, section)[name] = {"system": sys, "base": X, "spec": h}


def base_module(sys, spec, name="X"):
    """A module over the base algebra B of a Čech system."""
    B = sys.base
    if "free" in spec:
        fr = spec["free"]
        shifts = fr.get("shifts")
        if shifts is not None and len(shifts) != fr["rank"]:
            raise ValueError("shifts must list one degree per generator")
        return free_module(B, fr["rank"], shifts, name=name)
    if B.dim != len(sys.cover.points):
        raise ValueError("point modules need one-dimensional coefficients")
    for s in spec["points"]:
        if s not in sys.cover.index:
            raise ValueError("unknown point %r" % s)
    dims = [spec["points"].get(s, 0) for s in sys.cover.points]
    return point_module(B, dims, spec.get("deg", 0), name)


# ------------------------------------------------------------------ saving

def _fmt(field, c):
    return field.format(c)


def _space_ref_out(doc, sp):
    if sp.factors:
        return [_space_name(doc, f) for f in sp.factors]
    return _space_name(doc, sp)


def _space_name(doc, sp):
    for name, s in doc.spaces.items():
        if s is sp:
            return name
    return sp.name


def dump_obj(doc):
    F = doc.field
    out = {"field": F.describe()}
    if doc.spaces:
        out["spaces"] = {}
        for name, sp in sorted(doc.spaces.items()):
            d = {"basis": [{"name": n, "deg": g} for n, g in zip(sp.names, sp.degrees)]}
            if "window" in doc.raw.get("spaces", {}).get(name, {}):
                d["window"] = list(sp.window)
            out["spaces"][name] = d
    if doc.maps:
        out["maps"] = {}
        for name, m in sorted(doc.maps.items()):
            entries = [{"src": m.source.names[j], "dst": m.target.names[i], "coeff": _fmt(F, c)}
                       for j, col in sorted(m.cols.items()) for i, c in sorted(col.items()) if c]
            out["maps"][name] = {"from": _space_ref_out(doc, m.source),
                                 "to": _space_ref_out(doc, m.target),
                                 "deg": m.degree, "entries": entries}
    for section in SECTIONS[2:]:
        rawsec = doc.raw.get(section)
        if rawsec:
            out[section] = canonical_obj({section: rawsec}, F)[section]
    return out


def canonical_obj(raw, field=None):
    """Normalized form of a raw document: sorted, zero-free, reduced coefficients."""
    if field is None:
        f = raw["field"]
        field = Field(f.get("p") if f["kind"] == "GF" else None)
    out = {}
    for key, val in raw.items():
        if key == "maps":
            maps = {}
            for name, m in val.items():
                src_names = _basis_order(raw, m["from"])
                dst_names = _basis_order(raw, m["to"])
                ents = []
                for e in m["entries"]:
                    c = field.parse(e["coeff"])
                    if c:
                        ents.append({"src": e["src"], "dst": e["dst"], "coeff": field.format(c)})
                ents.sort(key=lambda e: (src_names.get(e["src"], 0), dst_names.get(e["dst"], 0)))
                mm = dict(m)
                mm["entries"] = ents
                if isinstance(mm["from"], list) and len(mm["from"]) == 1:
                    mm["from"] = mm["from"][0]
                if isinstance(mm["to"], list) and len(mm["to"]) == 1:
                    mm["to"] = mm["to"][0]
                maps[name] = mm
            out[key] = maps
        elif key == "algebras":
            out[key] = {n: dict(a, unit={b: field.format(field.parse(c))
                                         for b, c in a["unit"].items() if field.parse(c)})
                        for n, a in val.items()}
        elif key == "dgcats":
            cats = {}
            for n, c in val.items():
                cc = dict(c)
                if "d" in c:
                    dd = {}
                    for g, terms in c["d"].items():
                        acc = {}
                        for t in terms:
                            w = tuple(t["word"])
                            acc[w] = acc.get(w, field.zero) + field.parse(t["coeff"])
                        dd[g] = [{"word": list(w), "coeff": field.format(x)}
                                 for w, x in sorted(acc.items()) if x]
                    cc["d"] = dd
                cats[n] = cc
            out[key] = cats
        else:
            out[key] = val
    return out


def _basis_order(raw, ref):
    spaces = raw.get("spaces", {})
    refs = ref if isinstance(ref, list) else [ref]
    names = [[b["name"] for b in spaces.get(r, {}).get("basis", [])] for r in refs]
    if len(names) == 1:
        return {n: i for i, n in enumerate(names[0])}
    sp_tmp = [GradedSpace(r, [(n, 0) for n in ns]) for r, ns in zip(refs, names)]
    T = tensor_space(*sp_tmp)
    return {n: i for i, n in enumerate(T.names)}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save(doc):
    return dumps(dump_obj(doc))


def canonical(text):
    return dumps(canonical_obj(json.loads(text)))
